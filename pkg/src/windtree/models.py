"""Periodic wind-tree models: a planar lattice with reflecting obstacles
in each cell, their unfolding to a translation surface carrying two deck
classes, the embedded L-shaped obstacle pair, and the recurrence
certificate.

Lattice data is exact; obstacles are rational polygons carried as (base
polygon, rotation, anchor) so a symbolic rotation keeps edge angles exact
even when the realized coordinates are not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactgeom import (EPS, DihedralElement, RatAngle, Vec2, angle_diff_set,
                        cross, is_exact, mat_apply, mat_is_exact,
                        point_in_polygon, polygons_disjoint, rotation_matrix,
                        segment_meets_polygon, segments_cross, sign_of,
                        unfolding_constant, vec, vecs_equal)
from .surface import EdgeRef, Polygon, Slot
from .unfold import BilliardTable, UnfoldedSurface, unfold
from .homology import (DualClass, EdgeBasis, InducedMap, RelHomologyClass,
                       dual_class_from_exits, h, holonomy, intersection,
                       rel_class_from_walks)
from .cover import (CoverDescriptor, NonIntegralDecomposition,
                    cover_descriptor, lifts_cylinder)


class ObstacleOverlap(Exception):
    """Two obstacles share a point."""


class ObstacleTouchesBoundary(Exception):
    """An obstacle touches the fundamental cell boundary."""


class Irrational(Exception):
    """Edge axis angles cannot be expressed as rational multiples of pi."""


class DisconnectedComplement(Exception):
    """The complement of the obstacles is not connected."""


class NoValidPlacement(Exception):
    """No placement of the obstacle pair satisfies the constraints."""


class BreaksRationality(Exception):
    """The requested rotation is not a rational multiple of pi."""


class NotRegularSingularity(Exception):
    """A distinguished corner does not unfold to cone angle 2*pi."""


class SegmentBlocked(Exception):
    """The connecting segment leaves the free part of the cell."""


# axes inferable from exact edge vectors; anything else must be declared
_SLOPE_AXES = {
    (1, 0): RatAngle(0),
    (0, 1): RatAngle(1, 2),
    (1, 1): RatAngle(1, 4),
    (1, -1): RatAngle(3, 4),
}


def infer_axes(poly: Polygon) -> tuple[RatAngle, ...]:
    """Axis angles of a polygon whose edges all have slope 0, infinity, or
    +-1.  Raises Irrational otherwise; declared angles bypass inference."""
    out = []
    for k in range(poly.n):
        d = poly.edge_vec(k)
        if not d.is_exact():
            raise Irrational(
                "cannot infer an axis for inexact edge %d; declare it" % k)
        sx, sy = sign_of(d.x), sign_of(d.y)
        if sy == 0:
            key = (1, 0)
        elif sx == 0:
            key = (0, 1)
        elif d.x == d.y:
            key = (1, 1)
        elif d.x == -d.y:
            key = (1, -1)
        else:
            raise Irrational(
                "edge %d has slope %s; only 0, infinite and +-1 slopes have "
                "implied angles" % (k, Fraction(d.y, d.x)))
        out.append(_SLOPE_AXES[key])
    return tuple(out)


@dataclass(frozen=True)
class ModelObstacle:
    """Obstacle as a rational base polygon with a symbolic rotation.

    ``realized()`` gives the polygon actually sitting in the cell; its
    coordinates are exact only when the rotation is a quarter-turn
    multiple, but the edge angles stay exact for any rational rotation.
    """

    base: Polygon
    base_axes: tuple[RatAngle, ...]
    rotation: RatAngle
    anchor: Vec2

    def realized(self) -> Polygon:
        m = rotation_matrix(self.rotation)
        pts = [self.anchor + mat_apply(m, v) for v in self.base.vertices]
        return Polygon(pts, degenerate=self.base.degenerate)

    def realized_axes(self) -> tuple[RatAngle, ...]:
        return tuple((a + self.rotation).axis() for a in self.base_axes)

    def is_exact(self) -> bool:
        return self.base.is_exact() and self.anchor.is_exact() and \
            mat_is_exact(rotation_matrix(self.rotation))


def obstacle(shape, rotation: Optional[RatAngle] = None,
             anchor: Optional[Vec2] = None,
             axes: Optional[Sequence[RatAngle]] = None,
             degenerate: bool = False) -> ModelObstacle:
    """Normalize an obstacle description.

    ``shape`` is a Polygon or a vertex sequence; axes are inferred from the
    base polygon when not declared.
    """
    poly = shape if isinstance(shape, Polygon) else Polygon(shape, degenerate)
    if rotation is None:
        rotation = RatAngle(0)
    if not isinstance(rotation, RatAngle):
        raise BreaksRationality(
            "obstacle rotation must be a rational multiple of pi")
    if anchor is None:
        anchor = vec(0, 0)
    if axes is None:
        axes = infer_axes(poly)
    else:
        axes = tuple(a.axis() for a in axes)
        if len(axes) != poly.n:
            raise ValueError("need one axis per edge")
    return ModelObstacle(poly, tuple(axes), rotation, anchor)


@dataclass(frozen=True)
class LEmbedding:
    """Placement data of the L-shaped obstacle pair.

    ``s1`` and ``s2`` are the distinguished corners (free-space wedge
    pi/2 at each); the open segment between them stays inside the free
    part of the cell.
    """

    xi: RatAngle
    scale: Fraction
    anchor: Vec2
    obstacle_indices: tuple[int, int]
    corner_vertex: int
    s1: Vec2
    s2: Vec2

    @property
    def segment(self) -> tuple[Vec2, Vec2]:
        return (self.s1, self.s2)


class WindTreeModel:
    """Lattice (tau1, tau2), fundamental cell with paired boundary, and
    obstacles strictly inside the cell."""

    def __init__(self, tau1: Vec2, tau2: Vec2, fundamental: Polygon,
                 f_pairing: dict[int, int],
                 obstacles: Sequence[ModelObstacle],
                 embedding: Optional[LEmbedding] = None):
        self.tau1 = tau1
        self.tau2 = tau2
        self.fundamental = fundamental
        self.f_pairing = dict(f_pairing)
        self.obstacles = list(obstacles)
        self.embedding = embedding

    def realized_obstacles(self) -> list[Polygon]:
        return [o.realized() for o in self.obstacles]

    def wall_axes(self) -> list[RatAngle]:
        return [a for o in self.obstacles for a in o.realized_axes()]

    def unfolding_constant(self) -> int:
        if not self.obstacles:
            raise ValueError("model has no obstacles")
        return unfolding_constant(self.wall_axes())

    def is_exact(self) -> bool:
        return all(o.is_exact() for o in self.obstacles)

    def with_obstacles(self, extra: Sequence[ModelObstacle],
                       embedding: Optional[LEmbedding] = None) -> "WindTreeModel":
        return WindTreeModel(self.tau1, self.tau2, self.fundamental,
                             self.f_pairing, self.obstacles + list(extra),
                             embedding)


def _as_vec(v) -> Vec2:
    if isinstance(v, Vec2):
        return vec(v.x, v.y)
    return vec(v[0], v[1])


def build_model(tau1, tau2, obstacles: Sequence = (),
                fundamental: Optional[Polygon] = None,
                f_pairing: Optional[dict[int, int]] = None,
                eps: float = EPS) -> WindTreeModel:
    """Validate and assemble a periodic model.

    The default cell is the lattice parallelogram with opposite edges
    paired.  Obstacles must be pairwise disjoint and strictly interior to
    the cell; a custom cell must come with a full boundary pairing.
    """
    tau1, tau2 = _as_vec(tau1), _as_vec(tau2)
    if not (tau1.is_exact() and tau2.is_exact()):
        raise ValueError("lattice basis must be exact")
    if sign_of(cross(tau1, tau2)) <= 0:
        raise ValueError("lattice basis must be positively oriented")

    if fundamental is None:
        if f_pairing is not None:
            raise ValueError("custom pairing requires a custom cell")
        o = vec(0, 0)
        fundamental = Polygon([o, tau1, tau1 + tau2, tau2])
        f_pairing = {0: 2, 1: 3}
    else:
        if f_pairing is None:
            raise ValueError("custom cell requires a boundary pairing")
        if not fundamental.is_exact():
            raise ValueError("fundamental cell must be exact")
    full = {}
    for a, b in f_pairing.items():
        full[a] = b
        full[b] = a
    for a, b in full.items():
        if a == b or full[b] != a:
            raise ValueError("cell pairing must be a fixed-point-free "
                             "involution")
        if not (0 <= a < fundamental.n):
            raise ValueError("cell pairing names edge %d out of range" % a)
        va = fundamental.edge_vec(a)
        vb = fundamental.edge_vec(b)
        if not vecs_equal(va + vb, Vec2(0, 0), eps):
            raise ValueError("paired cell edges %d, %d are not anti-parallel "
                             "translates" % (a, b))
    if len(full) != fundamental.n:
        raise ValueError("every cell edge must be paired (obstacles are the "
                         "only walls)")

    obs: list[ModelObstacle] = []
    for item in obstacles:
        if isinstance(item, ModelObstacle):
            obs.append(item)
        elif isinstance(item, Polygon):
            obs.append(obstacle(item))
        else:
            obs.append(obstacle(list(item)))

    fv = fundamental.vertices
    realized = [o.realized() for o in obs]
    for i, poly in enumerate(realized):
        for v in poly.vertices:
            if point_in_polygon(v, fv, eps) != "inside":
                raise ObstacleTouchesBoundary(
                    "obstacle %d vertex %s is not strictly inside the cell"
                    % (i, v.as_floats(),))
        for k in range(poly.n):
            a, b = poly.edge(k)
            for j in range(fundamental.n):
                c, d = fundamental.edge(j)
                if segments_cross(a, b, c, d, eps):
                    raise ObstacleTouchesBoundary(
                        "obstacle %d edge %d crosses the cell boundary" % (i, k))
    for i in range(len(realized)):
        for j in range(i + 1, len(realized)):
            if not polygons_disjoint(realized[i].vertices,
                                     realized[j].vertices, eps):
                raise ObstacleOverlap("obstacles %d and %d intersect" % (i, j))

    # Disjoint closed disks strictly inside a disk leave a connected
    # complement, so with the checks above connectivity cannot fail; the
    # error type exists for configurations built by other constructors.
    return WindTreeModel(tau1, tau2, fundamental, full, obs)


# ---------------------------------------------------------------------------
# unfolding pipeline


class ModelSurface:
    """Unfolded model: surface, homology basis, the two deck classes, and
    the verified lattice-step table.

    ``a_table[j]`` is the integer lattice step of a trajectory leaving the
    cell through boundary edge j; ``planar_delta(slot)`` extends it to the
    unfolded surface (zero on wall and slit edges).  Construction verifies
    that the cover descriptor built from the deck classes reproduces this
    table slot by slot.
    """

    def __init__(self, model: WindTreeModel, table: BilliardTable,
                 unfolded: UnfoldedSurface, basis: EdgeBasis,
                 gammas: tuple[RelHomologyClass, RelHomologyClass],
                 descriptor: CoverDescriptor,
                 a_table: list[tuple[int, int]]):
        self.model = model
        self.table = table
        self.unfolded = unfolded
        self.surface = unfolded.surface
        self.group = unfolded.group
        self.n = unfolded.group.n
        self.basis = basis
        self.gammas = gammas
        self.descriptor = descriptor
        self.a_table = a_table
        self.outer_face_edge = {
            org[1]: k for k, org in enumerate(unfolded.face.origins)
            if org[0] == "outer"}
        self._induced: dict[tuple, InducedMap] = {}

    def induced(self, g: DihedralElement) -> InducedMap:
        key = (g.refl, g.k)
        m = self._induced.get(key)
        if m is None:
            m = InducedMap(self.basis,
                           self.unfolded.automorphism_slot_map(g), g.det())
            self._induced[key] = m
        return m

    def iota(self) -> InducedMap:
        return self.induced(self.group.iota())

    def planar_delta(self, slot: Slot) -> tuple[int, int]:
        """Lattice step of a trajectory exiting the surface face through
        the slot: the cell step for boundary edges, zero for walls and
        slits."""
        k = self.unfolded.face_edge_of(slot)
        org = self.unfolded.face.origins[k]
        if org[0] == "outer" and org[1] in self.model.f_pairing:
            return self.a_table[org[1]]
        return (0, 0)


def _lattice_steps(model: WindTreeModel) -> list[tuple[int, int]]:
    """a_table: for each cell edge j, the integer coordinates of the
    translation tau_j carrying the partner edge onto edge j.

    Leaving the cell through edge j moves the planar trajectory to the
    cell displaced by tau_j, so the lattice coordinate gains a^j."""
    dom = model.fundamental
    det = Fraction(cross(model.tau1, model.tau2))
    out = []
    for j in range(dom.n):
        jp = model.f_pairing[j]
        tau_j = dom.edge(j)[1] - dom.edge(jp)[0]
        a1 = Fraction(cross(tau_j, model.tau2)) / det
        a2 = Fraction(cross(model.tau1, tau_j)) / det
        if a1.denominator != 1 or a2.denominator != 1:
            raise NonIntegralDecomposition(
                "cell edge %d translation is not a lattice vector" % j)
        out.append((int(a1), int(a2)))
    return out


def unfold_model(model: WindTreeModel, eps: float = EPS) -> ModelSurface:
    """Unfold the cell billiard and build the two deck classes.

    gamma_l sums, over rotation copies minus reflection copies, the
    pushforward of sum_j a_l^j h(e_j) taken on the identity copy.  The
    resulting cover descriptor must reproduce the planar lattice steps on
    every edge of the surface: the integer step a^j on cell-boundary
    edges in every copy, zero on wall and slit edges.  That identity is
    checked exhaustively here and a failure raises RuntimeError.
    """
    if not model.obstacles:
        raise ValueError("model has no obstacles; nothing to unfold")
    realized = [(o.realized(), o.realized_axes()) for o in model.obstacles]
    protect: list[tuple] = []
    avoid: list[tuple[Vec2, Vec2]] = []
    emb = model.embedding
    if emb is not None:
        for h_idx in emb.obstacle_indices:
            protect.append(("hole", h_idx, emb.corner_vertex))
        avoid.append(emb.segment)
    table = BilliardTable(model.fundamental, model.f_pairing, realized,
                          protect_corners=protect, avoid_segments=avoid,
                          eps=eps)
    unfolded = unfold(table, eps)
    basis = EdgeBasis(unfolded.surface)
    a_table = _lattice_steps(model)

    outer_face_edge = {org[1]: k for k, org in enumerate(unfolded.face.origins)
                       if org[0] == "outer"}
    base = [basis.zero(), basis.zero()]
    seen = set()
    for j in range(model.fundamental.n):
        jp = model.f_pairing[j]
        key = (min(j, jp), max(j, jp))
        if key in seen:
            continue
        seen.add(key)
        slot = unfolded.slot_of(0, outer_face_edge[j])
        hj = h(basis, EdgeRef(slot[0], slot[1]))
        for l in (0, 1):
            base[l] = base[l] + hj.scale(a_table[j][l])

    gammas = []
    for l in (0, 1):
        acc = basis.zero()
        for g in unfolded.group.rotations():
            m = InducedMap(basis, unfolded.automorphism_slot_map(g), g.det())
            acc = acc + m.apply(base[l])
        for k in range(unfolded.group.n):
            g = unfolded.group.reflection(k)
            m = InducedMap(basis, unfolded.automorphism_slot_map(g), g.det())
            acc = acc - m.apply(base[l])
        gammas.append(acc)
    descriptor = cover_descriptor(basis, gammas)

    ms = ModelSurface(model, table, unfolded, basis,
                      (gammas[0], gammas[1]), descriptor, a_table)
    _verify_cover_identifications(ms)
    return ms


def _verify_cover_identifications(ms: ModelSurface) -> None:
    """The descriptor's oriented shift at every slot must equal the planar
    lattice step through that slot."""
    for s in ms.surface.all_slots():
        got = ms.descriptor.shift_of_slot(s)
        want = ms.planar_delta(s)
        if tuple(got) != tuple(want):
            raise RuntimeError(
                "cover identification mismatch at slot %r: descriptor %r, "
                "planar %r" % (s, got, want))


# ---------------------------------------------------------------------------
# L-shaped obstacle pair


#: the L hexagon at scale s: legs s and s/2, thickness s/4, distinguished
#: corner (free-space wedge pi/2) at vertex 3
_L_CORNER_VERTEX = 3

#: offset of s2 from s1 in the unrotated frame, in units of scale
_S_OFFSET = (Fraction(3, 8), Fraction(3, 8))


def base_l_polygon(scale) -> Polygon:
    s = Fraction(scale)
    q, hf = s / 4, s / 2
    return Polygon([vec(0, 0), vec(s, 0), vec(s, q), vec(q, q),
                    vec(q, hf), vec(0, hf)])


_L_AXES = (RatAngle(0), RatAngle(1, 2), RatAngle(0),
           RatAngle(1, 2), RatAngle(0), RatAngle(1, 2))


def _l_pair_at(xi: RatAngle, scale: Fraction, anchor: Vec2):
    """The two obstacles and the corner points for one candidate placement."""
    base = base_l_polygon(scale)
    corner = base.vertex(_L_CORNER_VERTEX)
    rot1 = rotation_matrix(xi)
    o1 = ModelObstacle(base, _L_AXES, xi, anchor)
    s1 = anchor + mat_apply(rot1, corner)
    off = vec(_S_OFFSET[0] * scale, _S_OFFSET[1] * scale)
    s2 = s1 + mat_apply(rot1, off)
    xi2 = RatAngle(xi.times_pi + 1)
    anchor2 = s2 - mat_apply(rotation_matrix(xi2), corner)
    o2 = ModelObstacle(base, _L_AXES, xi2, anchor2)
    return o1, o2, s1, s2


def _segment_clear(model: WindTreeModel, s1: Vec2, s2: Vec2,
                   skip: tuple[int, int], eps: float) -> bool:
    """Open segment avoids the cell boundary and every obstacle; the two
    L obstacles only touch it at its endpoints."""
    dom = model.fundamental
    for j in range(dom.n):
        a, b = dom.edge(j)
        if segments_cross(s1, s2, a, b, eps):
            return False
    for i, poly in enumerate(model.realized_obstacles()):
        if i in skip:
            for k in range(poly.n):
                a, b = poly.edge(k)
                if segments_cross(s1, s2, a, b, eps):
                    return False
        elif segment_meets_polygon(s1, s2, poly.vertices, eps):
            return False
    return True


def embed_L(model: WindTreeModel, xi: Optional[RatAngle] = None,
            scale=None, anchor: Optional[Vec2] = None,
            eps: float = EPS) -> tuple[WindTreeModel, LEmbedding]:
    """Add the L-shaped obstacle pair to the model.

    The second L is the first rotated by pi about the midpoint of the
    diagonal between the distinguished corners, so the corners face each
    other across a straight free segment.  Rotation defaults to the
    smallest nonzero axis difference of the existing obstacles; scale and
    anchor default to a deterministic grid search over the cell.
    """
    if xi is None:
        diffs = [d for d in angle_diff_set(model.wall_axes())
                 if not d.is_zero()]
        xi = diffs[0] if diffs else RatAngle(1, 2)
    if not isinstance(xi, RatAngle):
        raise BreaksRationality("rotation must be a rational multiple of pi")

    fv = model.fundamental.vertices
    xs = [v.x for v in fv]
    ys = [v.y for v in fv]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    span = min(Fraction(xmax - xmin), Fraction(ymax - ymin))
    if scale is not None:
        scales = [Fraction(scale)]
    else:
        scales = [span / 8, span / 16, span / 32, span / 64]

    last_reason = "no candidate anchors"
    for s in scales:
        if anchor is not None:
            anchors = [anchor]
        else:
            steps_x = int(Fraction(xmax - xmin) / s)
            steps_y = int(Fraction(ymax - ymin) / s)
            anchors = [vec(Fraction(xmin) + i * s, Fraction(ymin) + j * s)
                       for j in range(steps_y + 1) for i in range(steps_x + 1)]
        for a in anchors:
            o1, o2, s1, s2 = _l_pair_at(xi, s, _as_vec(a))
            try:
                candidate = build_model(model.tau1, model.tau2,
                                        model.obstacles + [o1, o2],
                                        model.fundamental, model.f_pairing,
                                        eps=eps)
            except (ObstacleOverlap, ObstacleTouchesBoundary) as e:
                last_reason = str(e)
                continue
            idx = (len(model.obstacles), len(model.obstacles) + 1)
            if not _segment_clear(candidate, s1, s2, idx, eps):
                last_reason = "corner segment blocked at anchor %s" \
                    % (s1.as_floats(),)
                continue
            emb = LEmbedding(xi, s, _as_vec(a), idx, _L_CORNER_VERTEX, s1, s2)
            done = WindTreeModel(candidate.tau1, candidate.tau2,
                                 candidate.fundamental, candidate.f_pairing,
                                 candidate.obstacles, emb)
            return done, emb
        if anchor is not None:
            break
    raise NoValidPlacement(last_reason)


# ---------------------------------------------------------------------------
# the good cylinder


Corner = tuple[int, int]


@dataclass
class GoodCylinder:
    """Core-curve data of the cylinder joining the distinguished corners."""

    core: RelHomologyClass
    core_dual: DualClass
    segment: tuple[Vec2, Vec2]
    corners: tuple[Corner, ...] = ()


def _cone_crossing(surface, corner: Corner, u: Vec2, target: Corner,
                   eps: float) -> list[Slot]:
    """Crossing record of the core curve pushed off a cone point.

    The curve arrives at the cone point inside ``corner``'s wedge with
    direction u and continues straight out of ``target``'s wedge; offset
    slightly to the left it crosses two edges on the way around.
    """
    p, k = corner
    npoly = surface.polygons[p].n
    out_slot = (p, k)
    out_dir = surface.slot_vec(out_slot)
    c = sign_of(cross(u, out_dir), eps)
    if c == 0:
        raise SegmentBlocked("segment runs along a wall at corner %r"
                             % (corner,))
    if c > 0:
        # left side bounded by the outgoing edge: walk forward
        b = surface.next_corner(corner)
        exits = [out_slot, (b[0], b[1])]
        land = surface.next_corner(b)
    else:
        # left side bounded by the incoming edge: walk backward
        in_slot = (p, (k - 1) % npoly)
        d = surface.prev_corner(corner)
        d_in = (d[0], (d[1] - 1) % surface.polygons[d[0]].n)
        exits = [in_slot, d_in]
        land = surface.prev_corner(d)
    if land != target:
        raise NotRegularSingularity(
            "cone point at %r does not rejoin the opposite copy" % (corner,))
    return exits


def good_cylinder(ms: ModelSurface, eps: float = EPS) -> GoodCylinder:
    """Core curve of the flat cylinder through the distinguished corners.

    The curve is the straight segment between the corners together with
    its image under the rotation by pi, closed up through the two cone
    points.  Both cone angles must be exactly 2*pi.
    """
    emb = ms.model.embedding
    if emb is None:
        raise ValueError("model carries no embedded corner pair")
    if ms.n % 2:
        raise ValueError("rotation by pi requires an even unfolding constant")
    surface = ms.surface
    unf = ms.unfolded
    h1, h2 = emb.obstacle_indices
    v1 = unf.face.cycle_index_of_source(("hole", h1, emb.corner_vertex))
    v2 = unf.face.cycle_index_of_source(("hole", h2, emb.corner_vertex))
    copy0 = unf.copy_index(ms.group.identity())
    copyi = unf.copy_index(ms.group.iota())
    c1 = unf.corner_of(copy0, v1)
    c2 = unf.corner_of(copy0, v2)
    c1i = unf.corner_of(copyi, v1)
    c2i = unf.corner_of(copyi, v2)

    for c, name in ((c1, "s1"), (c2, "s2")):
        orb = surface.orbits[surface.orbit_of_corner(c)]
        if orb.turns != 1:
            raise NotRegularSingularity(
                "%s unfolds to cone angle %s*2pi, need exactly 2pi"
                % (name, orb.turns))
    if surface.orbit_of_corner(c2i) != surface.orbit_of_corner(c2) or \
            surface.orbit_of_corner(c1i) != surface.orbit_of_corner(c1):
        raise NotRegularSingularity(
            "rotated corner copies do not meet the same cone points")

    # the straight segment must stay inside the identity copy's face
    s1, s2 = emb.s1, emb.s2
    face_poly = surface.polygons[copy0]
    for k in range(face_poly.n):
        a, b = face_poly.edge(k)
        if segments_cross(s1, s2, a, b, eps):
            raise SegmentBlocked("segment from s1 to s2 crosses the face "
                                 "boundary at edge %d" % k)

    u = s2 - s1
    # relative class: boundary walks replace the two straight pieces
    core = rel_class_from_walks(ms.basis, [
        (copy0, c1[1], c2[1]),
        (copyi, c2i[1], c1i[1]),
    ])
    # crossing record: two cone-point push-offs, no other crossings
    exits = _cone_crossing(surface, c2, u, c2i, eps) \
        + _cone_crossing(surface, c1i, u, c1, eps)
    core_dual = dual_class_from_exits(ms.basis, exits)

    orb = surface.orbits[surface.orbit_of_corner(c2)]
    return GoodCylinder(core, core_dual, (s1, s2), orb.corners)


# ---------------------------------------------------------------------------
# recurrence certificate


@dataclass
class CertCondition:
    name: str
    passed: bool
    witness: str


@dataclass
class RecurrenceCertificate:
    """Checked hypotheses of the recurrence criterion, with witnesses."""

    n: int
    conditions: list[CertCondition]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def to_text(self) -> str:
        lines = ["recurrence certificate",
                 "unfolding constant: %d" % self.n]
        for i, c in enumerate(self.conditions, 1):
            lines.append("condition %d (%s): %s"
                         % (i, c.name, "PASS" if c.passed else "FAIL"))
            for w in c.witness.split("\n"):
                lines.append("    " + w)
        lines.append("verdict: %s"
                     % ("CERTIFIED" if self.passed else "NOT CERTIFIED"))
        return "\n".join(lines) + "\n"


def _no_drift_condition(ms: ModelSurface) -> CertCondition:
    ok = True
    parts = []
    for l, g in enumerate(ms.gammas):
        hv = holonomy(g)
        if hv.is_exact():
            zero = hv.x == 0 and hv.y == 0
            parts.append("hol(gamma_%d) = (%s, %s), exact" % (l + 1, hv.x, hv.y))
        else:
            zero = hv.norm() < 1e-9
            parts.append("hol(gamma_%d) numeric norm %.3e" % (l + 1, hv.norm()))
        ok = ok and zero
    # group-orbit cancellation: rotations and reflections each sum to zero
    if ms.n >= 2:
        sr = [[0.0, 0.0], [0.0, 0.0]]
        sf = [[0.0, 0.0], [0.0, 0.0]]
        exact = True
        for g in ms.group.rotations():
            m = g.matrix()
            exact = exact and mat_is_exact(m)
            for i in (0, 1):
                for j in (0, 1):
                    sr[i][j] += float(m[i][j])
        for k in range(ms.n):
            m = ms.group.reflection(k).matrix()
            exact = exact and mat_is_exact(m)
            for i in (0, 1):
                for j in (0, 1):
                    sf[i][j] += float(m[i][j])
        worst = max(abs(sr[i][j]) for i in (0, 1) for j in (0, 1))
        worst = max(worst, max(abs(sf[i][j]) for i in (0, 1) for j in (0, 1)))
        if worst > 1e-9:
            ok = False
        parts.append("group orbit sums vanish (n = %d >= 2), largest entry "
                     "%.1e%s" % (ms.n, worst, ", exact" if exact else ""))
    else:
        parts.append("n = 1: no cancellation argument, relying on direct sums")
    return CertCondition("no drift", ok, "\n".join(parts))


def certify(model: WindTreeModel, eps: float = EPS) -> RecurrenceCertificate:
    """Run the four recurrence checks and report witnesses.

    Failures are recorded in the certificate, not raised; construction
    errors inside the pipeline do propagate.
    """
    n = model.unfolding_constant()
    conds = []
    conds.append(CertCondition(
        "involution exists", n % 2 == 0,
        "unfolding constant n = %d is %s" % (n, "even" if n % 2 == 0 else "odd")))

    ms = unfold_model(model, eps)
    conds.append(_no_drift_condition(ms))

    if n % 2 == 0:
        mi = ms.iota()
        ok = all(mi.apply(g).coeffs == g.coeffs for g in ms.gammas)
        conds.append(CertCondition(
            "deck classes invariant under the half turn", ok,
            "iota_* gamma_l %s gamma_l as exact integer vectors"
            % ("=" if ok else "!=")))
    else:
        conds.append(CertCondition(
            "deck classes invariant under the half turn", False,
            "no rotation by pi in a dihedral group of odd order %d" % n))

    if model.embedding is None:
        conds.append(CertCondition(
            "good cylinder", False, "no embedded corner pair in the model"))
    else:
        try:
            gc = good_cylinder(ms, eps)
        except (NotRegularSingularity, SegmentBlocked, ValueError) as e:
            conds.append(CertCondition("good cylinder", False, str(e)))
        else:
            parts = []
            ok = not gc.core.is_zero()
            parts.append("core class %s" % ("nonzero" if ok else "ZERO"))
            if ms.n % 2 == 0:
                anti = ms.iota().apply(gc.core).coeffs == \
                    tuple(-c for c in gc.core.coeffs)
                ok = ok and anti
                parts.append("half turn %s the core class"
                             % ("reverses" if anti else "DOES NOT reverse"))
            pair_ok = True
            for l, g in enumerate(ms.gammas):
                v = intersection(g, gc.core_dual)
                pair_ok = pair_ok and v == 0
                parts.append("pairing with gamma_%d = %d" % (l + 1, v))
            ok = ok and pair_ok
            lifts = lifts_cylinder(ms.descriptor, gc.core, gc.core_dual)
            ok = ok and lifts
            parts.append("cylinder %s to the cover"
                         % ("lifts" if lifts else "DOES NOT lift"))
            conds.append(CertCondition("good cylinder", ok, "\n".join(parts)))

    return RecurrenceCertificate(n, conds)
