"""Unfolding of rational billiard tables into translation surfaces.

A table is a counterclockwise domain polygon whose edges are either walls
(the billiard reflects off them) or members of a translation pairing (a
fundamental domain glued into a torus), plus wall obstacles strictly inside
the domain.  All wall axes must have pairwise angle differences that are
rational multiples of pi; the unfolding takes one copy of the (slit) domain
face per element of the dihedral group those reflections generate, gluing
wall edges across copies and keeping translation edges inside each copy.

Reflected copies are stored with reversed vertex order so that every
polygon of the resulting surface is counterclockwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .exactgeom import (EPS, DihedralElement, DihedralGroup, RatAngle, Vec2,
                        angle_diff_set, apply, cross, dot, sign_of,
                        transform_direction_angle, unfolding_constant)
from .surface import (NotSimpleGarage, Pairing, Polygon, SlitFace,
                      TranslationSurface, build_surface, cut_slits,
                      validate_garage)


class AngleCoordinateMismatch(Exception):
    """A declared edge angle disagrees with the edge's coordinates."""


def resolve_direction_angle(d: Vec2, axis: RatAngle,
                            tol: float = 1e-7) -> RatAngle:
    """Full direction angle (axis or axis + pi) of an edge vector whose
    undirected axis is declared.  Raises AngleCoordinateMismatch if the
    vector does not lie on the declared axis."""
    u = axis.direction()
    nrm = d.norm()
    if nrm == 0:
        raise AngleCoordinateMismatch("zero-length edge")
    c = float(cross(u, d)) / nrm
    if abs(c) > tol:
        raise AngleCoordinateMismatch(
            "edge direction %r is not on axis %s" % (d.as_floats(), axis))
    if float(dot(u, d)) > 0:
        return RatAngle(axis.times_pi)
    return RatAngle(axis.times_pi + 1)


@dataclass
class Wall:
    """One reflecting edge of the table."""

    origin: tuple          # ('outer', j) or ('hole', h, j)
    axis: RatAngle         # undirected, in [0, pi)
    direction: RatAngle    # full angle of the counterclockwise edge


class BilliardTable:
    """Domain polygon + optional translation pairing + wall obstacles.

    ``f_pairing`` maps domain edge indices to domain edge indices (an
    involution); unpaired domain edges are walls and need declared axis
    angles in ``domain_angles``.  Each obstacle is (polygon, axis angles).
    """

    def __init__(self, domain: Polygon,
                 f_pairing: Optional[dict[int, int]] = None,
                 obstacles: Sequence[tuple[Polygon, Sequence[RatAngle]]] = (),
                 domain_angles: Optional[Sequence[Optional[RatAngle]]] = None,
                 protect_corners: Sequence[tuple] = (),
                 avoid_segments: Sequence[tuple[Vec2, Vec2]] = (),
                 eps: float = EPS):
        self.domain = domain
        self.eps = eps
        pairing: dict[int, int] = {}
        if f_pairing:
            for a, b in f_pairing.items():
                pairing[a] = b
                pairing[b] = a
            for a, b in pairing.items():
                if pairing[b] != a or a == b:
                    raise ValueError("domain pairing must be a fixed-point-"
                                     "free involution")
        self.f_pairing = pairing
        self.obstacles = [(poly, tuple(axes)) for poly, axes in obstacles]
        for poly, axes in self.obstacles:
            if len(axes) != poly.n:
                raise ValueError("obstacle needs one axis angle per edge")
        self.protect_corners = tuple(protect_corners)
        self.avoid_segments = tuple(avoid_segments)

        findings = validate_garage(domain, [p for p, _ in self.obstacles], eps)
        if findings:
            raise NotSimpleGarage("; ".join(findings))

        self.walls: list[Wall] = []
        for j in range(domain.n):
            if j in pairing:
                continue
            if domain_angles is None or domain_angles[j] is None:
                raise ValueError("unpaired domain edge %d needs an axis angle" % j)
            ax = domain_angles[j].axis()
            self.walls.append(Wall(("outer", j), ax,
                                   resolve_direction_angle(domain.edge_vec(j), ax)))
        for h, (poly, axes) in enumerate(self.obstacles):
            for j in range(poly.n):
                ax = axes[j].axis()
                self.walls.append(Wall(("hole", h, j), ax,
                                       resolve_direction_angle(poly.edge_vec(j), ax)))
        if not self.walls:
            raise ValueError("table has no walls; nothing reflects")
        self._wall_by_origin = {w.origin: w for w in self.walls}

    def wall(self, origin: tuple) -> Wall:
        return self._wall_by_origin[origin]

    def is_exact(self) -> bool:
        return self.domain.is_exact() and \
            all(p.is_exact() for p, _ in self.obstacles)


@dataclass
class Rationality:
    n: int
    group: DihedralGroup
    diffs: tuple[RatAngle, ...]


def rationality(table: BilliardTable) -> Rationality:
    """Unfolding group data of the table's wall axes.

    The group is anchored at the minimal wall axis so that every wall's
    reflection is a group element.
    """
    axes = [w.axis for w in table.walls]
    diffs = angle_diff_set(axes)
    n = unfolding_constant(axes)
    anchor = RatAngle(min(a.times_pi for a in axes))
    group = DihedralGroup(n, anchor)
    for w in table.walls:
        group.reflection_about(w.axis)
    return Rationality(n, group, diffs)


class UnfoldedSurface:
    """Translation surface built from dihedral copies of the table face.

    Copies are indexed by the group element order (rotations then
    reflections); copy 0 is the identity and carries the table's own
    coordinates."""

    def __init__(self, table, group, face, surface, copies, n_face_edges):
        self.table: BilliardTable = table
        self.group: DihedralGroup = group
        self.face: SlitFace = face
        self.surface: TranslationSurface = surface
        self.copies: list[DihedralElement] = copies
        self.n_face_edges = n_face_edges
        self._copy_index = {self._key(g): i for i, g in enumerate(copies)}

    @staticmethod
    def _key(g: DihedralElement):
        return (g.refl, g.k)

    def copy_index(self, g: DihedralElement) -> int:
        return self._copy_index[self._key(g)]

    def slot_of(self, copy: int, face_edge: int):
        """Surface slot supporting a face edge inside one copy."""
        m = self.n_face_edges
        if self.copies[copy].refl:
            return (copy, (m - 1 - face_edge) % m)
        return (copy, face_edge)

    def face_edge_of(self, slot) -> int:
        copy, k = slot
        m = self.n_face_edges
        if self.copies[copy].refl:
            return (m - 1 - k) % m
        return k

    def corner_of(self, copy: int, face_vertex: int):
        """Surface corner at a face vertex inside one copy."""
        m = self.n_face_edges
        if self.copies[copy].refl:
            return (copy, (m - face_vertex) % m)
        return (copy, face_vertex)

    def automorphism_slot_map(self, g: DihedralElement) -> dict:
        """Slot bijection of the deck transformation acting by g on copies."""
        out = {}
        for i, rho in enumerate(self.copies):
            j = self.copy_index(g.compose(rho))
            for k in range(self.n_face_edges):
                out[self.slot_of(i, k)] = self.slot_of(j, k)
        return out

    def fold_point(self, p: Vec2, copy: int) -> Vec2:
        """Table coordinates of a point of one copy."""
        return apply(self.copies[copy].inverse(), p)

    def unfold_point(self, p: Vec2, copy: int) -> Vec2:
        return apply(self.copies[copy], p)

    def fold_direction(self, u: Vec2, copy: int) -> Vec2:
        """Billiard direction of a translation-flow direction seen in a copy."""
        return apply(self.copies[copy].inverse(), u)


def unfold(table: BilliardTable, eps: float = EPS) -> UnfoldedSurface:
    """Katok-Zemliakov construction: one copy of the slit table face per
    group element, wall edges glued across copies, translation edges glued
    within each copy."""
    rat = rationality(table)
    group = rat.group
    copies = group.elements()

    holes = [p for p, _ in table.obstacles]
    if holes:
        face = cut_slits(table.domain, holes,
                         forbidden_endpoints=table.protect_corners,
                         avoid_segments=table.avoid_segments, eps=eps)
    else:
        face = SlitFace(list(table.domain.vertices),
                        [("outer", i) for i in range(table.domain.n)],
                        [("outer", i) for i in range(table.domain.n)],
                        [], [])
    m = len(face.vertices)

    # per face edge: wall data or translation partner or slit mate
    outer_face_edge = {}
    for k, org in enumerate(face.origins):
        if org[0] == "outer":
            outer_face_edge[org[1]] = k

    def stored_vertices(g: DihedralElement):
        pts = [apply(g, v) for v in face.vertices]
        if g.refl:
            pts = [pts[0]] + pts[:0:-1]
        return pts

    polygons = []
    for g in copies:
        polygons.append(Polygon(stored_vertices(g)))

    helper = UnfoldedSurface(table, group, face, None, copies, m)

    pairing: dict = {}
    slot_angles: dict = {}
    for i, g in enumerate(copies):
        for k, org in enumerate(face.origins):
            s = helper.slot_of(i, k)
            if org[0] == "outer" and org[1] in table.f_pairing:
                mate = outer_face_edge[table.f_pairing[org[1]]]
                pairing[s] = helper.slot_of(i, mate)
            elif org[0] == "slit":
                sidx, side = org[1], org[2]
                k0, k1 = face.slit_pairs[sidx]
                mate = k1 if k == k0 else k0
                pairing[s] = helper.slot_of(i, mate)
            else:
                w = table.wall(org)
                refl = group.reflection_about(w.axis)
                j = helper.copy_index(g.compose(refl))
                pairing[s] = helper.slot_of(j, k)
                base = w.direction
                if org[0] == "hole":
                    # the face walks hole boundaries clockwise, against
                    # the hole polygon's own edge direction
                    base = RatAngle(base.times_pi + 1)
                ang = transform_direction_angle(g, base)
                if g.refl:
                    ang = RatAngle(ang.times_pi + 1)  # stored path reversed
                slot_angles[s] = ang

    surface = build_surface(polygons, Pairing(pairing),
                            slot_angles=slot_angles, eps=eps)
    helper.surface = surface
    return helper


def fold(unfolded: UnfoldedSurface, p: Vec2, copy: int) -> Vec2:
    return unfolded.fold_point(p, copy)
