"""Translation surfaces from polygons with edge identifications.

A surface is a list of counterclockwise polygons plus a pairing that
matches edges in anti-parallel translated pairs: if edge e' is paired with
edge e then dir(e') = -dir(e) and start(e') = end(e) + tau for the pair's
translation tau.  Faces must be disks; polygons with holes are first cut
along slits (see ``cut_slits``), which introduces coincident anti-parallel
edge pairs with tau = 0.

Corners are addressed as (polygon index, vertex index); the corner (p, k)
sits between the incoming edge (p, k-1) and the outgoing edge (p, k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math
from typing import Optional, Sequence

from .exactgeom import (EPS, RatAngle, Vec2, compare_directions, cross, dot,
                        cw_cycle_winding, point_in_polygon, point_on_segment,
                        polygon_signed_area2, segment_meets_polygon,
                        segments_cross, sign_of, vecs_equal)


class PairingMismatch(Exception):
    """Paired edges are not anti-parallel translates of each other."""


class SelfPaired(Exception):
    """An edge is paired with itself."""


class Disconnected(Exception):
    """The polygons do not glue into a connected surface."""


class UnpairedEdge(Exception):
    """A non-boundary edge has no partner."""


class NonMultipleOf2Pi(Exception):
    """A cone angle is not an integer multiple of 2*pi."""


class InconsistentGenus(Exception):
    """Angle-sum genus and Euler-characteristic genus disagree."""


class NotSimpleGarage(Exception):
    """Obstacles are not disjoint simple polygons strictly inside a face."""


Slot = tuple[int, int]
Corner = tuple[int, int]


class Polygon:
    """Counterclockwise vertex cycle.  Weakly simple cycles (slit faces,
    where slit vertices repeat) are allowed; degenerate 2-gons must be
    flagged."""

    def __init__(self, vertices: Sequence[Vec2], degenerate: bool = False):
        vs = tuple(vertices)
        if len(vs) < 2 or (len(vs) == 2 and not degenerate):
            raise ValueError("polygon needs at least 3 vertices "
                             "(2 only for a flagged degenerate slit)")
        for i, v in enumerate(vs):
            if vecs_equal(v, vs[(i + 1) % len(vs)]):
                raise ValueError("consecutive vertices coincide at index %d" % i)
        area2 = polygon_signed_area2(vs)
        if degenerate:
            if sign_of(area2) != 0:
                raise ValueError("degenerate polygon must have zero area")
        elif sign_of(area2) <= 0:
            raise ValueError("vertices must be in counterclockwise order")
        self.vertices = vs
        self.degenerate = degenerate

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, k: int) -> Vec2:
        return self.vertices[k % self.n]

    def edge(self, k: int) -> tuple[Vec2, Vec2]:
        return self.vertex(k), self.vertex(k + 1)

    def edge_vec(self, k: int) -> Vec2:
        a, b = self.edge(k)
        return b - a

    def is_exact(self) -> bool:
        return all(v.is_exact() for v in self.vertices)

    def __repr__(self) -> str:
        return "Polygon(%d vertices)" % self.n


@dataclass(frozen=True)
class EdgeRef:
    """Edge (poly, edge) with a traversal orientation: +1 follows the
    stored counterclockwise direction, -1 reverses it."""

    poly: int
    edge: int
    orientation: int = 1

    def slot(self) -> Slot:
        return (self.poly, self.edge)

    def reversed(self) -> "EdgeRef":
        return EdgeRef(self.poly, self.edge, -self.orientation)


class Pairing:
    """Fixed-point-free involution on edge slots."""

    def __init__(self, partner: dict[Slot, Slot]):
        table = {}
        for a, b in partner.items():
            table[a] = b
            table[b] = a
        for a, b in table.items():
            if a == b:
                raise SelfPaired("edge %r paired with itself" % (a,))
            if table[b] != a:
                raise ValueError("pairing is not symmetric at %r" % (a,))
        self.table = table

    def partner(self, slot: Slot) -> Slot:
        return self.table[slot]

    def contains(self, slot: Slot) -> bool:
        return slot in self.table

    def of(self, e: EdgeRef) -> EdgeRef:
        """Involution on oriented edges: the partner is traversed the
        opposite way, so orientation flips."""
        q = self.partner(e.slot())
        return EdgeRef(q[0], q[1], -e.orientation)

    def pairs(self) -> list[tuple[Slot, Slot]]:
        """Canonical pair list, each pair as (min slot, max slot)."""
        seen = set()
        out = []
        for a in sorted(self.table):
            b = self.table[a]
            if a in seen or b in seen:
                continue
            seen.add(a)
            seen.add(b)
            out.append((min(a, b), max(a, b)))
        return out


@dataclass
class SingularityClass:
    """Vertex orbit of the surface.

    ``turns`` is the cone angle divided by 2*pi; marked regular points have
    turns == 1.  Orbits meeting boundary edges (garage walls kept unpaired)
    carry turns = None.
    """

    corners: tuple[Corner, ...]
    turns: Optional[int]
    on_boundary: bool = False

    @property
    def order(self) -> Optional[int]:
        return None if self.turns is None else self.turns - 1

    def cone_angle_times_pi(self) -> Optional[Fraction]:
        return None if self.turns is None else Fraction(2 * self.turns)

    def is_marked_point(self) -> bool:
        return self.turns == 1


class TranslationSurface:
    """Glued surface with precomputed pair table and vertex orbits."""

    def __init__(self, polygons, pairing, boundary, slot_angles, orbits,
                 pair_list, pair_tau):
        self.polygons: list[Polygon] = polygons
        self.pairing: Pairing = pairing
        self.boundary: frozenset[Slot] = boundary
        self.slot_angles: Optional[dict[Slot, RatAngle]] = slot_angles
        self.orbits: list[SingularityClass] = orbits
        self.pair_list: list[tuple[Slot, Slot]] = pair_list
        self.pair_tau: list[Vec2] = pair_tau
        self.pair_index: dict[Slot, int] = {}
        for i, (a, b) in enumerate(pair_list):
            self.pair_index[a] = i
            self.pair_index[b] = i
        self._orbit_of: dict[Corner, int] = {}
        for i, orb in enumerate(orbits):
            for c in orb.corners:
                self._orbit_of[c] = i

    def all_slots(self) -> list[Slot]:
        return [(p, k) for p, poly in enumerate(self.polygons)
                for k in range(poly.n)]

    def slot_segment(self, slot: Slot) -> tuple[Vec2, Vec2]:
        return self.polygons[slot[0]].edge(slot[1])

    def slot_vec(self, slot: Slot) -> Vec2:
        return self.polygons[slot[0]].edge_vec(slot[1])

    def rep_slot(self, pair: int) -> Slot:
        return self.pair_list[pair][0]

    def orient(self, slot: Slot) -> int:
        """+1 if the slot is its pair's stored representative."""
        return 1 if self.pair_list[self.pair_index[slot]][0] == slot else -1

    def orbit_of_corner(self, c: Corner) -> int:
        return self._orbit_of[c]

    def next_corner(self, c: Corner) -> Optional[Corner]:
        """Clockwise neighbour of a corner around its vertex, crossing the
        corner's outgoing edge; None at a boundary edge."""
        if c in self.boundary:
            return None
        q = self.pairing.partner(c)
        return (q[0], (q[1] + 1) % self.polygons[q[0]].n)

    def prev_corner(self, c: Corner) -> Optional[Corner]:
        p, k = c
        inc = (p, (k - 1) % self.polygons[p].n)
        if inc in self.boundary:
            return None
        q = self.pairing.partner(inc)
        return q

    def genus(self) -> int:
        return genus(self)

    def vertex_orbits(self) -> list[SingularityClass]:
        return self.orbits

    def singular_orbits(self) -> list[SingularityClass]:
        return [o for o in self.orbits if o.turns is not None and o.turns > 1]


def _corner_angle_declared(surf_angles, polys, c: Corner) -> Fraction:
    """Interior angle at a corner from declared slot angles, in units of pi,
    in (0, 2]."""
    p, k = c
    n = polys[p].n
    a_in = surf_angles[(p, (k - 1) % n)].times_pi
    a_out = surf_angles[(p, k)].times_pi
    alpha = ((a_in + 1) - a_out) % 2
    return alpha if alpha != 0 else Fraction(2)


def _orbit_cycles(polys, pairing, boundary):
    """Partition corners into cyclic orbits (closed surface part) and
    boundary chains."""
    corners = [(p, k) for p, poly in enumerate(polys) for k in range(poly.n)]
    nxt = {}
    for c in corners:
        p, k = c
        if c in boundary:
            nxt[c] = None
        else:
            q = pairing.partner(c)
            nxt[c] = (q[0], (q[1] + 1) % polys[q[0]].n)
    prv = {}
    for c, d in nxt.items():
        if d is not None:
            prv[d] = c
    seen = set()
    cycles, chains = [], []
    for c in sorted(corners):
        if c in seen:
            continue
        # walk forward to detect a cycle or hit the boundary
        path = [c]
        seen.add(c)
        cur = c
        closed = False
        while True:
            d = nxt[cur]
            if d is None:
                break
            if d == path[0]:
                closed = True
                break
            path.append(d)
            seen.add(d)
            cur = d
        if closed:
            cycles.append(path)
            continue
        # extend backwards to the boundary start of the chain
        back = []
        cur = path[0]
        while cur in prv:
            cur = prv[cur]
            back.append(cur)
            seen.add(cur)
        chains.append(list(reversed(back)) + path)
    return cycles, chains


def _cycle_turns(polys, slot_angles, cycle, float_tol=1e-6) -> int:
    """Cone angle of a corner cycle divided by 2*pi.

    Three routes, per orbit: exact Fraction sums when every incident edge
    has a declared angle, an exact winding count when every incident edge
    vector is rational, and a numeric fallback otherwise.
    """
    if slot_angles:
        covered = all((p, k) in slot_angles and
                      (p, (k - 1) % polys[p].n) in slot_angles
                      for (p, k) in cycle)
        if covered:
            total = Fraction(0)
            for c in cycle:
                total += _corner_angle_declared(slot_angles, polys, c)
            if total % 2 != 0:
                raise NonMultipleOf2Pi(
                    "cone angle %s*pi at orbit of %r" % (total, cycle[0]))
            return int(total // 2)
    dirs = [polys[p].edge_vec(k) for (p, k) in cycle]
    if all(d.is_exact() for d in dirs):
        full = []
        m = len(dirs)
        for j in range(m):
            u, v = dirs[j], dirs[(j + 1) % m]
            full.append(sign_of(cross(u, v)) == 0 and sign_of(dot(u, v)) > 0)
        return cw_cycle_winding(dirs, full)
    # numeric fallback
    total = 0.0
    m = len(dirs)
    for j in range(m):
        u, v = dirs[j], dirs[(j + 1) % m]
        a = math.atan2(float(u.y), float(u.x)) - math.atan2(float(v.y), float(v.x))
        a %= 2 * math.pi
        if a < 1e-12:
            a = 2 * math.pi
        total += a
    w = total / (2 * math.pi)
    if abs(w - round(w)) > float_tol:
        raise NonMultipleOf2Pi(
            "cone angle %.9f*2pi at orbit of %r" % (w, cycle[0]))
    return int(round(w))


def build_surface(polygons: Sequence[Polygon],
                  pairing: Pairing | dict,
                  boundary: Sequence[Slot] = (),
                  slot_angles: Optional[dict[Slot, RatAngle]] = None,
                  eps: float = EPS) -> TranslationSurface:
    """Glue polygons along the pairing and compute vertex orbits.

    Raises UnpairedEdge, SelfPaired, PairingMismatch, Disconnected, or
    NonMultipleOf2Pi.  Slots listed in ``boundary`` stay unpaired (garage
    walls at the table level).
    """
    polygons = list(polygons)
    if not polygons:
        raise ValueError("no polygons")
    if not isinstance(pairing, Pairing):
        pairing = Pairing(pairing)
    boundary = frozenset(boundary)

    slots = [(p, k) for p, poly in enumerate(polygons) for k in range(poly.n)]
    for s in slots:
        if s in boundary:
            if pairing.contains(s):
                raise ValueError("slot %r both paired and boundary" % (s,))
        elif not pairing.contains(s):
            raise UnpairedEdge("edge %r has no partner" % (s,))
    for s in pairing.table:
        if s not in set(slots):
            raise ValueError("pairing mentions unknown slot %r" % (s,))

    pair_list = pairing.pairs()
    pair_tau = []
    for a, b in pair_list:
        va = polygons[a[0]].edge_vec(a[1])
        vb = polygons[b[0]].edge_vec(b[1])
        if not vecs_equal(va + vb, Vec2(0, 0), eps):
            raise PairingMismatch(
                "edges %r and %r are not anti-parallel" % (a, b))
        sa = polygons[a[0]].edge(a[1])
        sb = polygons[b[0]].edge(b[1])
        tau = sb[1] - sa[0]
        if not vecs_equal(sb[0] - sa[1], tau, eps):
            raise PairingMismatch(
                "edges %r and %r are not translates" % (a, b))
        pair_tau.append(tau)

    # connectivity of the polygon adjacency graph
    if len(polygons) > 1:
        adj = {p: set() for p in range(len(polygons))}
        for a, b in pair_list:
            adj[a[0]].add(b[0])
            adj[b[0]].add(a[0])
        seen = {0}
        stack = [0]
        while stack:
            for q in adj[stack.pop()]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        if len(seen) != len(polygons):
            raise Disconnected("polygons %s unreachable from polygon 0"
                               % sorted(set(adj) - seen))

    if slot_angles:
        # declarations may cover any subset of slots; each one must match
        for s, ang in slot_angles.items():
            d = polygons[s[0]].edge_vec(s[1])
            r = ang.radians()
            nrm = d.norm()
            if abs(float(d.x) - nrm * math.cos(r)) > 1e-7 * max(nrm, 1.0) or \
               abs(float(d.y) - nrm * math.sin(r)) > 1e-7 * max(nrm, 1.0):
                raise ValueError(
                    "declared angle %s disagrees with edge %r" % (ang, s))

    cycles, chains = _orbit_cycles(polygons, pairing, boundary)
    orbits = []
    for cyc in cycles:
        w = _cycle_turns(polygons, slot_angles, cyc)
        orbits.append(SingularityClass(tuple(cyc), w))
    for ch in chains:
        orbits.append(SingularityClass(tuple(ch), None, on_boundary=True))
    orbits.sort(key=lambda o: o.corners[0])

    return TranslationSurface(polygons, pairing, boundary, slot_angles,
                              orbits, pair_list, pair_tau)


def vertex_orbits(surface: TranslationSurface) -> list[SingularityClass]:
    return surface.orbits


def genus(surface: TranslationSurface) -> int:
    """Genus from cone angles, cross-checked against Euler characteristic.

    Boundary orbits are excluded on both sides, so for a garage this is the
    genus of the surface with the walls' holes ignored.
    """
    interior = [o for o in surface.orbits if not o.on_boundary]
    total_excess = sum(o.turns - 1 for o in interior)
    if total_excess % 2:
        raise InconsistentGenus("odd total cone excess %d" % total_excess)
    g_angle = total_excess // 2 + 1
    V = len(interior)
    E = len(surface.pair_list)
    F = len(surface.polygons)
    chi = V - E + F
    if chi != 2 - 2 * g_angle:
        raise InconsistentGenus(
            "Euler characteristic %d but angle data gives genus %d" % (chi, g_angle))
    return g_angle


def validate(surface: TranslationSurface) -> list[str]:
    """Re-check the surface invariants, returning human-readable findings.

    An empty list means the surface is sound.  Construction errors that
    build_surface would raise are reported as strings here.
    """
    findings = []
    try:
        rebuilt = build_surface(surface.polygons, surface.pairing,
                                surface.boundary, surface.slot_angles)
    except (PairingMismatch, SelfPaired, Disconnected, UnpairedEdge,
            NonMultipleOf2Pi) as e:
        findings.append("%s: %s" % (type(e).__name__, e))
        return findings
    try:
        genus(rebuilt)
    except InconsistentGenus as e:
        findings.append("InconsistentGenus: %s" % e)
    for o in surface.orbits:
        if o.on_boundary:
            findings.append("boundary orbit at corner %r" % (o.corners[0],))
    return findings


def validate_garage(outer: Polygon, holes: Sequence[Polygon],
                    eps: float = EPS) -> list[str]:
    """Check the simple-garage conditions: holes are disjoint simple
    polygons strictly interior to the face.  Returns findings; raise-style
    callers wrap them in NotSimpleGarage."""
    from .exactgeom import polygons_disjoint
    findings = []
    for i, h in enumerate(holes):
        for v in h.vertices:
            where = point_in_polygon(v, outer.vertices, eps)
            if where != "inside":
                findings.append(
                    "NotSimpleGarage: obstacle %d vertex %s not strictly "
                    "interior to the face" % (i, v.as_floats(),))
                break
    for i in range(len(holes)):
        for j in range(i + 1, len(holes)):
            if not polygons_disjoint(holes[i].vertices, holes[j].vertices, eps):
                findings.append(
                    "NotSimpleGarage: obstacles %d and %d intersect" % (i, j))
    return findings


# ---------------------------------------------------------------------------
# slit construction for faces with holes


VertexSource = tuple  # ('outer', i) | ('hole', h, i) | duplicated slit copies
EdgeOrigin = tuple    # ('outer', i) | ('hole', h, i) | ('slit', s, side)


@dataclass
class SlitFace:
    """A polygon with holes cut into one weakly simple disk polygon.

    ``origins[k]`` says what edge k of the cycle supports; slit sides come
    in pairs listed in ``slit_pairs`` (edge indices of side 0 and side 1).
    ``sources[k]`` identifies cycle vertex k in the input.
    """

    vertices: list[Vec2]
    sources: list[VertexSource]
    origins: list[EdgeOrigin]
    slit_pairs: list[tuple[int, int]]
    slit_segments: list[tuple[Vec2, Vec2]]

    def polygon(self) -> Polygon:
        return Polygon(self.vertices)

    def cycle_index_of_source(self, source: VertexSource) -> int:
        """First cycle position of a given input vertex."""
        return self.sources.index(source)


def _direction_in_wedge(out_dir: Vec2, back_dir: Vec2, d: Vec2,
                        eps: float = EPS) -> bool:
    """Is direction d strictly inside the interior wedge of a corner whose
    outgoing edge direction is out_dir and whose incoming edge arrives from
    back_dir (i.e. back_dir points from the corner to the previous vertex)?

    The interior of a counterclockwise face lies to the left of the
    boundary, so the wedge sweeps counterclockwise from out_dir to back_dir.
    """
    c = sign_of(cross(out_dir, back_dir), eps)
    inside_u = sign_of(cross(out_dir, d), eps) > 0
    inside_r = sign_of(cross(d, back_dir), eps) > 0
    if c > 0:
        return inside_u and inside_r
    if c < 0:
        return inside_u or inside_r
    # collinear bounding rays: wedge is pi (opposite) or 2pi (slit tip)
    if sign_of(dot(out_dir, back_dir), eps) < 0:
        return inside_u
    return sign_of(cross(out_dir, d), eps) != 0 or sign_of(dot(out_dir, d), eps) < 0


def cut_slits(outer: Polygon, holes: Sequence[Polygon],
              forbidden_endpoints: Sequence[VertexSource] = (),
              avoid_segments: Sequence[tuple[Vec2, Vec2]] = (),
              eps: float = EPS) -> SlitFace:
    """Cut each hole open along a straight slit to a vertex of the outer
    boundary (or of an already attached hole), producing a weakly simple
    disk polygon.

    Slit choice is deterministic: hole vertices and targets are tried in
    index order and the first segment that stays inside the face, avoids
    all holes and previous slits, and hits no other vertex wins.  Sources
    listed in ``forbidden_endpoints`` are never used as slit endpoints and
    segments in ``avoid_segments`` are never crossed.
    """
    cycle = list(outer.vertices)
    sources: list[VertexSource] = [("outer", i) for i in range(outer.n)]
    origins: list[EdgeOrigin] = [("outer", i) for i in range(outer.n)]
    slit_pairs: list[tuple[int, int]] = []
    slit_segments: list[tuple[Vec2, Vec2]] = []
    forbidden = set(forbidden_endpoints)
    attached: list[int] = []

    def candidate_ok(a: Vec2, b: Vec2, hole_idx: int) -> bool:
        # stay off every hole region (start vertex excepted by openness)
        for j, h in enumerate(holes):
            if j == hole_idx:
                for t in range(h.n):
                    if segments_cross(a, b, *h.edge(t), eps):
                        return False
                mid = Vec2((a.x + b.x) / 2, (a.y + b.y) / 2)
                if not h.degenerate and \
                        point_in_polygon(mid, h.vertices, eps) == "inside":
                    return False
            else:
                if segment_meets_polygon(a, b, h.vertices, eps):
                    return False
        for t in range(outer.n):
            if segments_cross(a, b, *outer.edge(t), eps):
                return False
        for s in slit_segments:
            if segments_cross(a, b, s[0], s[1], eps):
                return False
        for s in avoid_segments:
            if segments_cross(a, b, s[0], s[1], eps):
                return False
        # no stray vertex strictly inside the slit
        allv = list(outer.vertices)
        for h in holes:
            allv.extend(h.vertices)
        for v in allv:
            if vecs_equal(v, a, eps) or vecs_equal(v, b, eps):
                continue
            if point_on_segment(v, a, b, eps):
                return False
        return True

    for h_idx, hole in enumerate(holes):
        placed = False
        targets: list[VertexSource] = [("outer", i) for i in range(outer.n)]
        for prev in attached:
            targets.extend(("hole", prev, i) for i in range(holes[prev].n))
        for i in range(hole.n):
            if ("hole", h_idx, i) in forbidden:
                continue
            v = hole.vertex(i)
            for tgt in targets:
                if tgt in forbidden:
                    continue
                w_positions = [q for q, s in enumerate(sources) if s == tgt]
                if not w_positions:
                    continue
                w = cycle[w_positions[0]]
                if vecs_equal(v, w, eps) or not candidate_ok(w, v, h_idx):
                    continue
                # pick the cycle occurrence of w whose wedge contains w -> v
                pos = None
                m = len(cycle)
                for q in w_positions:
                    out_dir = cycle[(q + 1) % m] - cycle[q]
                    back_dir = cycle[(q - 1) % m] - cycle[q]
                    if _direction_in_wedge(out_dir, back_dir, v - w, eps):
                        pos = q
                        break
                if pos is None:
                    continue
                # splice after pos: w, v, hole walked clockwise back to v, w
                ins_v = [hole.vertex(i - t) for t in range(hole.n)] \
                    + [v, w]
                ins_s = [("hole", h_idx, (i - t) % hole.n)
                         for t in range(hole.n)] \
                    + [("hole", h_idx, i), tgt]
                cycle[pos + 1:pos + 1] = ins_v
                sources[pos + 1:pos + 1] = ins_s
                placed = True
                slit_segments.append((w, v))
                break
            if placed:
                break
        if not placed:
            raise NotSimpleGarage(
                "no straight slit can attach obstacle %d" % h_idx)
        attached.append(h_idx)

    # rebuild edge origins from vertex sources (robust against splicing)
    m = len(cycle)
    origins = [None] * m
    slit_seen: dict[int, list[int]] = {}
    for k in range(m):
        sa, sb = sources[k], sources[(k + 1) % m]
        if sa[0] == "hole" and sb[0] == "hole" and sa[1] == sb[1] \
                and (sa[2] - 1) % holes[sa[1]].n == sb[2] % holes[sa[1]].n:
            origins[k] = ("hole", sa[1], sb[2] % holes[sa[1]].n)
        elif sa[0] == "outer" and sb[0] == "outer" \
                and (sa[1] + 1) % outer.n == sb[1]:
            origins[k] = ("outer", sa[1])
        else:
            origins[k] = ("pending", k)
    # identify slit sides: pending edges pair up by coincident endpoints
    pend = [k for k in range(m) if origins[k][0] == "pending"]
    slit_pairs = []
    used = set()
    for k in pend:
        if k in used:
            continue
        a0, b0 = cycle[k], cycle[(k + 1) % m]
        mate = None
        for j in pend:
            if j == k or j in used:
                continue
            a1, b1 = cycle[j], cycle[(j + 1) % m]
            if vecs_equal(a0, b1, eps) and vecs_equal(b0, a1, eps):
                mate = j
                break
        if mate is None:
            raise NotSimpleGarage("unmatched slit side at cycle edge %d" % k)
        used.add(k)
        used.add(mate)
        s_idx = len(slit_pairs)
        origins[k] = ("slit", s_idx, 0)
        origins[mate] = ("slit", s_idx, 1)
        slit_pairs.append((k, mate))

    face = SlitFace(cycle, sources, origins, slit_pairs, slit_segments)
    # the spliced cycle must be a counterclockwise weakly simple polygon
    face.polygon()
    return face
