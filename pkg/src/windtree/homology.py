"""First homology of a translation surface relative to its vertex set,
carried on edge pairs, with the intersection pairing against dual classes.

With all faces disks, the relative group is Z^d / im(boundary of faces)
where d is the number of edge pairs.  A spanning tree of the face adjacency
graph is fixed; each non-root face's boundary relation eliminates its tree
pair with a +-1 pivot, so every pair gets integer coordinates over the
remaining pairs and the rank is d - F + 1 = 2g + V - 1.

Sign conventions (fixed throughout the package):
  * h(pair) is the class of the representative slot's counterclockwise
    path; the partner slot's path represents -h(pair);
  * a curve crossing a pair contributes +1 when it exits a face through
    the representative slot and -1 through the partner, which normalizes
    the intersection form so that a pair's own dual loop pairs to +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .surface import Slot, TranslationSurface


class DisconnectedConfiguration(Exception):
    """Face adjacency graph is not connected."""


class DimensionMismatch(Exception):
    """Operands live over different bases."""


class NotAutomorphism(Exception):
    """The edge relabeling does not preserve the gluing structure."""


class NotInvolution(Exception):
    """The map does not square to the identity."""


class EdgeBasis:
    """Integer coordinates on H_1(X, Sigma) indexed by non-tree edge pairs."""

    def __init__(self, surface: TranslationSurface):
        if surface.boundary:
            raise ValueError("homology basis needs a closed surface")
        self.surface = surface
        d = len(surface.pair_list)
        F = len(surface.polygons)

        # BFS spanning tree of the face graph, pairs tried in index order
        parent_face = {0: None}
        parent_pair: dict[int, int] = {}
        order = [0]
        frontier = [0]
        while frontier:
            nxt = []
            for f in frontier:
                for pi, (a, b) in enumerate(surface.pair_list):
                    fa, fb = a[0], b[0]
                    if fa == f and fb not in parent_face:
                        parent_face[fb] = f
                        parent_pair[fb] = pi
                        order.append(fb)
                        nxt.append(fb)
                    elif fb == f and fa not in parent_face:
                        parent_face[fa] = f
                        parent_pair[fa] = pi
                        order.append(fa)
                        nxt.append(fa)
            frontier = nxt
        if len(order) != F:
            raise DisconnectedConfiguration(
                "faces %s unreachable" % sorted(set(range(F)) - set(order)))

        self.parent_face = parent_face
        self.parent_pair = parent_pair
        tree_pairs = sorted(parent_pair.values())
        self.tree_pairs = tree_pairs
        self.basis_pairs = [p for p in range(d) if p not in set(tree_pairs)]
        self.rank = len(self.basis_pairs)
        pos = {p: j for j, p in enumerate(self.basis_pairs)}
        self.basis_position = pos

        # face boundary relations over pairs
        def relation(f: int) -> list[int]:
            rel = [0] * d
            poly = surface.polygons[f]
            for k in range(poly.n):
                s = (f, k)
                rel[surface.pair_index[s]] += surface.orient(s)
            return rel

        # eliminate tree pairs, children before parents
        red: dict[int, list[int]] = {p: self._unit(pos[p]) for p in self.basis_pairs}
        for f in reversed(order):
            if parent_face[f] is None:
                continue
            t = parent_pair[f]
            rel = relation(f)
            pivot = rel[t]
            if pivot not in (1, -1):
                raise RuntimeError("tree pair %d pivot %d in face %d"
                                   % (t, pivot, f))
            vec = [0] * self.rank
            for q, c in enumerate(rel):
                if q == t or c == 0:
                    continue
                rq = red.get(q)
                if rq is None:
                    raise RuntimeError("pair %d not yet reduced at face %d" % (q, f))
                for j in range(self.rank):
                    vec[j] -= pivot * c * rq[j]
            red[t] = vec
        self.reduction = [tuple(red[p]) for p in range(d)]

        # root face relation must be a consequence of the others
        rel0 = relation(order[0])
        acc = [0] * self.rank
        for q, c in enumerate(rel0):
            if c == 0:
                continue
            for j in range(self.rank):
                acc[j] += c * self.reduction[q][j]
        if any(acc):
            raise RuntimeError("face relations are not consistent")

    def _unit(self, j: int) -> list[int]:
        v = [0] * self.rank
        v[j] = 1
        return v

    def zero(self) -> "RelHomologyClass":
        return RelHomologyClass(self, (0,) * self.rank)

    def pair_class(self, pair: int) -> "RelHomologyClass":
        return RelHomologyClass(self, self.reduction[pair])

    def tree_path_exits(self, face_from: int, face_to: int) -> list[Slot]:
        """Slots exited walking the spanning tree from one face to another."""
        up_a, up_b = [face_from], [face_to]
        while self.parent_face[up_a[-1]] is not None:
            up_a.append(self.parent_face[up_a[-1]])
        while self.parent_face[up_b[-1]] is not None:
            up_b.append(self.parent_face[up_b[-1]])
        in_b = {f: i for i, f in enumerate(up_b)}
        meet = next(f for f in up_a if f in in_b)
        path = up_a[:up_a.index(meet)]          # ascending from face_from
        down = up_b[:in_b[meet]]                # ascending from face_to
        exits: list[Slot] = []
        for f in path:
            pi = self.parent_pair[f]
            a, b = self.surface.pair_list[pi]
            exits.append(a if a[0] == f else b)
        cur = meet
        for f in reversed(down):
            pi = self.parent_pair[f]
            a, b = self.surface.pair_list[pi]
            exits.append(a if a[0] == cur else b)
            cur = f
        return exits

    def dual_loop_exits(self, pair: int) -> list[Slot]:
        """Crossing record of the dual loop of a pair: it starts beside the
        partner slot, walks the spanning tree to the representative's face,
        and closes by exiting through the representative."""
        rep, partner = self.surface.pair_list[pair]
        exits = self.tree_path_exits(partner[0], rep[0])
        exits.append(rep)
        return exits


@dataclass(frozen=True)
class RelHomologyClass:
    """Element of H_1(X, Sigma; Z) in basis coordinates."""

    basis: EdgeBasis
    coeffs: tuple

    def __add__(self, other): return self._comb(other, 1)
    def __sub__(self, other): return self._comb(other, -1)

    def _comb(self, other, s):
        _same_basis(self, other)
        return RelHomologyClass(
            self.basis, tuple(a + s * b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return RelHomologyClass(self.basis, tuple(-a for a in self.coeffs))

    def scale(self, c):
        return RelHomologyClass(self.basis, tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class DualClass:
    """Element of H_1(X minus Sigma; Z) in dual-basis coordinates: the j-th
    coordinate is the pairing against the j-th basis pair's class."""

    basis: EdgeBasis
    coeffs: tuple

    def __add__(self, other):
        _same_basis(self, other)
        return DualClass(self.basis,
                         tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DualClass(self.basis, tuple(-a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _same_basis(a, b):
    if a.basis is not b.basis or len(a.coeffs) != len(b.coeffs):
        raise DimensionMismatch("classes over different bases")


def edge_basis(surface: TranslationSurface) -> EdgeBasis:
    return EdgeBasis(surface)


def h(basis: EdgeBasis, e) -> RelHomologyClass:
    """Class of an oriented edge (EdgeRef or slot, counterclockwise)."""
    ori = getattr(e, "orientation", 1)
    slot = e.slot() if hasattr(e, "slot") else tuple(e)
    s = ori * basis.surface.orient(slot)
    cls = basis.pair_class(basis.surface.pair_index[slot])
    return cls if s == 1 else -cls


def dual_of_pair(basis: EdgeBasis, pair: int) -> DualClass:
    """Dual loop class of a pair.  Tree pairs bound disks after gluing, so
    their duals vanish."""
    v = [0] * basis.rank
    j = basis.basis_position.get(pair)
    if j is not None:
        v[j] = 1
    return DualClass(basis, tuple(v))


def intersection(a: RelHomologyClass, b: DualClass) -> int:
    """Algebraic intersection number, normalized so a basis pair against
    its own dual gives +1."""
    _same_basis(a, b)
    return sum(x * y for x, y in zip(a.coeffs, b.coeffs))


def holonomy(a: RelHomologyClass):
    """Total displacement of any path chain representing the class."""
    surf = a.basis.surface
    from .exactgeom import Vec2
    acc = Vec2(0, 0)
    for j, c in enumerate(a.coeffs):
        if c:
            acc = acc + surf.slot_vec(surf.rep_slot(a.basis.basis_pairs[j])).scale(c)
    return acc


def dual_class_from_exits(basis: EdgeBasis, exits: Iterable[Slot]) -> DualClass:
    """Dual class of a curve given as the multiset of slots it exits
    faces through."""
    v = [0] * basis.rank
    surf = basis.surface
    for s in exits:
        j = basis.basis_position.get(surf.pair_index[s])
        if j is not None:
            v[j] += surf.orient(s)
    return DualClass(basis, tuple(v))


def rel_class_from_walks(basis: EdgeBasis,
                         walks: Sequence[tuple[int, int, int]]) -> RelHomologyClass:
    """Class of a vertex-to-vertex curve homotoped onto face boundaries.

    Each walk (face, corner_from, corner_to) follows the face boundary
    counterclockwise from one corner to another; the concatenation must be
    a cycle in the glued surface.
    """
    surf = basis.surface
    d = len(surf.pair_list)
    chain = [0] * d
    for f, a, b in walks:
        m = surf.polygons[f].n
        k = a % m
        while k != b % m:
            s = (f, k)
            chain[surf.pair_index[s]] += surf.orient(s)
            k = (k + 1) % m
    vec = [0] * basis.rank
    for q, c in enumerate(chain):
        if c:
            r = basis.reduction[q]
            for j in range(basis.rank):
                vec[j] += c * r[j]
    return RelHomologyClass(basis, tuple(vec))


class InducedMap:
    """Action of a surface automorphism on classes and dual classes.

    The edge action sends a pair's class to sign * orient(image slot) times
    the image pair's class (reflections reverse boundary paths).  The dual
    action is built independently from crossing records of dual loops; the
    relation dual = sign * inverse-transpose of the edge action is then a
    theorem, checked at construction time.
    """

    def __init__(self, basis: EdgeBasis, slot_map: dict[Slot, Slot], sign: int):
        self.basis = basis
        self.slot_map = dict(slot_map)
        self.sign = sign
        surf = basis.surface
        _check_automorphism(surf, self.slot_map, sign)

        n = basis.rank
        cols_m = []
        for p in basis.basis_pairs:
            rep = surf.pair_list[p][0]
            s2 = self.slot_map[rep]
            img = basis.pair_class(surf.pair_index[s2])
            c = sign * surf.orient(s2)
            cols_m.append(tuple(c * x for x in img.coeffs))
        self.matrix = tuple(tuple(cols_m[j][i] for j in range(n))
                            for i in range(n))

        cols_d = []
        for p in basis.basis_pairs:
            v = [0] * n
            for s in basis.dual_loop_exits(p):
                s2 = self.slot_map[s]
                j = basis.basis_position.get(surf.pair_index[s2])
                if j is not None:
                    v[j] += surf.orient(s2)
            cols_d.append(tuple(v))
        self.dual_matrix = tuple(tuple(cols_d[j][i] for j in range(n))
                                 for i in range(n))

        # M^T . D must equal sign * identity
        for i in range(n):
            for j in range(n):
                acc = sum(self.matrix[k][i] * self.dual_matrix[k][j]
                          for k in range(n))
                if acc != (sign if i == j else 0):
                    raise NotAutomorphism(
                        "edge and dual actions are inconsistent at (%d, %d)"
                        % (i, j))

    def apply(self, a: RelHomologyClass) -> RelHomologyClass:
        if a.basis is not self.basis:
            raise DimensionMismatch("class over a different basis")
        return RelHomologyClass(self.basis, _matvec(self.matrix, a.coeffs))

    def apply_dual(self, b: DualClass) -> DualClass:
        if b.basis is not self.basis:
            raise DimensionMismatch("class over a different basis")
        return DualClass(self.basis, _matvec(self.dual_matrix, b.coeffs))

    def compose(self, other: "InducedMap") -> "InducedMap":
        comp = {s: self.slot_map[t] for s, t in other.slot_map.items()}
        return InducedMap(self.basis, comp, self.sign * other.sign)

    def is_identity(self) -> bool:
        n = self.basis.rank
        return all(self.matrix[i][j] == (1 if i == j else 0)
                   for i in range(n) for j in range(n))


def _matvec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _check_automorphism(surf: TranslationSurface, slot_map: dict, sign: int):
    slots = set(surf.all_slots())
    if set(slot_map) != slots or set(slot_map.values()) != slots:
        raise NotAutomorphism("slot map is not a bijection on all edges")
    if sign not in (1, -1):
        raise NotAutomorphism("sign must be +1 or -1")
    for s in slots:
        if slot_map[surf.pairing.partner(s)] != surf.pairing.partner(slot_map[s]):
            raise NotAutomorphism("map does not commute with the pairing at %r"
                                  % (s,))
    # polygons map to polygons by a uniform cyclic shift (reversal if sign<0)
    for p, poly in enumerate(surf.polygons):
        q = slot_map[(p, 0)][0]
        mq = surf.polygons[q].n
        if mq != poly.n:
            raise NotAutomorphism("polygon %d maps onto a different size" % p)
        c0 = slot_map[(p, 0)][1]
        for k in range(poly.n):
            tq, tk = slot_map[(p, k)]
            if tq != q:
                raise NotAutomorphism("polygon %d is split by the map" % p)
            want = (c0 + sign * k) % mq
            if tk != want:
                raise NotAutomorphism(
                    "map is not a cyclic relabeling on polygon %d" % p)


def induced_map(basis: EdgeBasis, slot_map: dict[Slot, Slot],
                sign: int) -> InducedMap:
    return InducedMap(basis, slot_map, sign)


def iota_split(m: InducedMap, a: RelHomologyClass):
    """Split a class into its invariant and anti-invariant halves under an
    involution.  Halves have Fraction coordinates in general."""
    mm = m.compose(m)
    if not mm.is_identity():
        raise NotInvolution("map does not square to the identity")
    img = m.apply(a)
    plus = tuple(Fraction(x + y, 2) for x, y in zip(a.coeffs, img.coeffs))
    minus = tuple(Fraction(x - y, 2) for x, y in zip(a.coeffs, img.coeffs))
    return RelHomologyClass(a.basis, plus), RelHomologyClass(a.basis, minus)
