"""Exact planar primitives: rational vectors, angles that are rational
multiples of pi, and finite dihedral groups.

Coordinates are ``Fraction`` (or ``int``) when exactness is available and
``float`` otherwise.  Predicates accept the mixed representation: a
comparison is exact when both operands are exact and falls back to an
absolute tolerance (default 1e-9) when either side is numeric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, float]

#: absolute tolerance for numeric (non-Fraction) comparisons
EPS = 1e-9

SQRT_TABLE = {
    Fraction(0): 0.0,
    Fraction(1, 4): 0.5,
    Fraction(1, 2): math.sqrt(0.5),
    Fraction(3, 4): math.sqrt(0.75),
    Fraction(1): 1.0,
}


def is_exact(x: Number) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def sign_of(x: Number, eps: float = EPS) -> int:
    """Sign of x: exact for rationals, eps-thresholded for floats."""
    if is_exact(x):
        return (x > 0) - (x < 0)
    if x > eps:
        return 1
    if x < -eps:
        return -1
    return 0


def nearly_equal(a: Number, b: Number, eps: float = EPS) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(a - b) <= eps


@dataclass(frozen=True)
class Vec2:
    """Planar vector or point.  Exact when both components are rational."""

    x: Number
    y: Number

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scale(self, c: Number) -> "Vec2":
        return Vec2(c * self.x, c * self.y)

    def perp(self) -> "Vec2":
        """Rotation by +90 degrees."""
        return Vec2(-self.y, self.x)

    def is_exact(self) -> bool:
        return is_exact(self.x) and is_exact(self.y)

    def as_floats(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def norm(self) -> float:
        return math.hypot(float(self.x), float(self.y))

    def is_zero(self, eps: float = EPS) -> bool:
        if self.is_exact():
            return self.x == 0 and self.y == 0
        return abs(self.x) <= eps and abs(self.y) <= eps


def vec(x: Number, y: Number) -> Vec2:
    return Vec2(Fraction(x) if isinstance(x, int) else x,
                Fraction(y) if isinstance(y, int) else y)


def cross(a: Vec2, b: Vec2) -> Number:
    return a.x * b.y - a.y * b.x


def dot(a: Vec2, b: Vec2) -> Number:
    return a.x * b.x + a.y * b.y


def orient(o: Vec2, a: Vec2, b: Vec2, eps: float = EPS) -> int:
    """Orientation sign of the triangle o, a, b (+1 counterclockwise)."""
    return sign_of(cross(a - o, b - o), eps)


def vecs_equal(a: Vec2, b: Vec2, eps: float = EPS) -> bool:
    return nearly_equal(a.x, b.x, eps) and nearly_equal(a.y, b.y, eps)


def vecs_parallel(a: Vec2, b: Vec2, eps: float = EPS) -> bool:
    return sign_of(cross(a, b), eps) == 0


# ---------------------------------------------------------------------------
# angles


@dataclass(frozen=True)
class RatAngle:
    """Angle (m/n) * pi stored as a reduced Fraction of pi in [0, 2).

    Rotation angles live mod 2*pi; reflection axes use ``axis`` values mod
    pi.  Arithmetic is exact.
    """

    times_pi: Fraction

    def __init__(self, m, n: int = 1):
        t = Fraction(m, n) if n != 1 or not isinstance(m, Fraction) else m
        object.__setattr__(self, "times_pi", t % 2)

    def __add__(self, other: "RatAngle") -> "RatAngle":
        return RatAngle(self.times_pi + other.times_pi)

    def __sub__(self, other: "RatAngle") -> "RatAngle":
        return RatAngle(self.times_pi - other.times_pi)

    def __neg__(self) -> "RatAngle":
        return RatAngle(-self.times_pi)

    def axis(self) -> "RatAngle":
        """Reduce mod pi (undirected line angle)."""
        return RatAngle(self.times_pi % 1)

    def radians(self) -> float:
        return float(self.times_pi) * math.pi

    def is_zero(self) -> bool:
        return self.times_pi == 0

    def cos(self) -> Number:
        return _cos_times_pi(self.times_pi)

    def sin(self) -> Number:
        return _cos_times_pi((self.times_pi - Fraction(1, 2)) % 2)

    def direction(self) -> Vec2:
        """Unit vector at this angle, exact when cos/sin are rational."""
        return Vec2(self.cos(), self.sin())

    def __str__(self) -> str:
        t = self.times_pi
        if t == 0:
            return "0"
        if t.denominator == 1:
            return "%dpi" % t.numerator
        return "%d/%dpi" % (t.numerator, t.denominator)


def _cos_times_pi(t: Fraction) -> Number:
    # exact at quarter-turn multiples, quarter-wave values via sqrt table
    t = t % 2
    if t > 1:
        return _cos_times_pi(2 - t)
    # now t in [0, 1]; cos monotone decreasing
    if t == 0:
        return Fraction(1)
    if t == Fraction(1, 2):
        return Fraction(0)
    if t == 1:
        return Fraction(-1)
    if t == Fraction(1, 4):
        return SQRT_TABLE[Fraction(1, 2)]
    if t == Fraction(3, 4):
        return -SQRT_TABLE[Fraction(1, 2)]
    return math.cos(float(t) * math.pi)


Matrix = tuple[tuple[Number, Number], tuple[Number, Number]]


def rotation_matrix(angle: RatAngle) -> Matrix:
    """Matrix of the rotation; exact iff the angle is a multiple of pi/2."""
    c, s = angle.cos(), angle.sin()
    return ((c, -s), (s, c))


def reflection_matrix(axis: RatAngle) -> Matrix:
    """Reflection across the line through the origin at the given angle.

    Exact iff the axis is a multiple of pi/4.
    """
    two = axis + axis
    c, s = two.cos(), two.sin()
    return ((c, s), (s, -c))


def mat_apply(m: Matrix, v: Vec2) -> Vec2:
    return Vec2(m[0][0] * v.x + m[0][1] * v.y,
                m[1][0] * v.x + m[1][1] * v.y)


def mat_is_exact(m: Matrix) -> bool:
    return all(is_exact(e) for row in m for e in row)


# ---------------------------------------------------------------------------
# dihedral groups


@dataclass(frozen=True)
class DihedralElement:
    """Element of the dihedral group D_n of order 2n.

    Rotations are ``theta_k`` = rotation by 2*pi*k/n.  Reflections are
    ``rho . theta_k`` where rho is the reflection across the anchor axis,
    so the element's own axis is anchor - k*pi/n.  The anchor travels with
    the element so matrices need no group context.
    """

    n: int
    refl: bool
    k: int
    anchor: RatAngle

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % self.n)

    def is_identity(self) -> bool:
        return not self.refl and self.k == 0

    def det(self) -> int:
        return -1 if self.refl else 1

    def angle(self) -> RatAngle:
        """Rotation angle (rotations only)."""
        if self.refl:
            raise ValueError("reflections have an axis, not an angle")
        return RatAngle(2 * self.k, self.n)

    def reflection_axis(self) -> RatAngle:
        if not self.refl:
            raise ValueError("rotations have no axis")
        return RatAngle((self.anchor.times_pi - Fraction(self.k, self.n)) % 1)

    def compose(self, other: "DihedralElement") -> "DihedralElement":
        """self o other (apply other first)."""
        if (self.n, self.anchor) != (other.n, other.anchor):
            raise ValueError("elements of different dihedral presentations")
        if not self.refl and not other.refl:
            return DihedralElement(self.n, False, self.k + other.k, self.anchor)
        if not self.refl and other.refl:
            # theta_a . rho theta_b = rho theta_{b-a}
            return DihedralElement(self.n, True, other.k - self.k, self.anchor)
        if self.refl and not other.refl:
            return DihedralElement(self.n, True, self.k + other.k, self.anchor)
        return DihedralElement(self.n, False, other.k - self.k, self.anchor)

    def inverse(self) -> "DihedralElement":
        if self.refl:
            return self
        return DihedralElement(self.n, False, -self.k, self.anchor)

    def matrix(self) -> Matrix:
        if self.refl:
            return reflection_matrix(self.reflection_axis())
        return rotation_matrix(self.angle())

    def __str__(self) -> str:
        return ("r%d" if self.refl else "t%d") % self.k


def apply(g: DihedralElement, v: Vec2) -> Vec2:
    """Apply the group element to a vector, exactly when the matrix is."""
    return mat_apply(g.matrix(), v)


def transform_direction_angle(g: DihedralElement, a: RatAngle) -> RatAngle:
    """Image of a direction angle under the element, exactly."""
    if g.refl:
        ax = g.reflection_axis()
        return RatAngle(2 * ax.times_pi - a.times_pi)
    return a + g.angle()


class DihedralGroup:
    """D_n anchored at a reflection axis (default: the x-axis)."""

    def __init__(self, n: int, anchor: RatAngle | None = None):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.anchor = anchor if anchor is not None else RatAngle(0)

    def rotation(self, k: int) -> DihedralElement:
        return DihedralElement(self.n, False, k, self.anchor)

    def reflection(self, k: int) -> DihedralElement:
        return DihedralElement(self.n, True, k, self.anchor)

    def identity(self) -> DihedralElement:
        return self.rotation(0)

    def iota(self) -> DihedralElement:
        """Rotation by pi; exists only for even n."""
        if self.n % 2:
            raise ValueError("rotation by pi requires even n")
        return self.rotation(self.n // 2)

    def elements(self) -> list[DihedralElement]:
        """Rotations first, then reflections, each by index."""
        rots = [self.rotation(k) for k in range(self.n)]
        refls = [self.reflection(k) for k in range(self.n)]
        return rots + refls

    def rotations(self) -> list[DihedralElement]:
        return [self.rotation(k) for k in range(self.n)]

    def reflection_about(self, axis: RatAngle) -> DihedralElement:
        """The group reflection with the given axis (mod pi).

        Raises ValueError if no element of D_n has that axis.
        """
        t = (self.anchor.times_pi - axis.times_pi) % 1
        k = t * self.n
        if k.denominator != 1:
            raise ValueError("axis %s is not an axis of D_%d" % (axis, self.n))
        return self.reflection(int(k))

    def __len__(self) -> int:
        return 2 * self.n


def angle_diff_set(angles: Iterable[RatAngle]) -> tuple[RatAngle, ...]:
    """All pairwise differences of the given axis angles, reduced mod pi.

    The result is sorted, contains 0 whenever the input is nonempty, and is
    closed under d -> (pi - d) mod pi because both orders of every pair are
    taken.
    """
    axes = [a.axis().times_pi for a in angles]
    out = {(a - b) % 1 for a in axes for b in axes}
    return tuple(RatAngle(t) for t in sorted(out))


def unfolding_constant(angles: Iterable[RatAngle]) -> int:
    """Least n with all reflections in the given axes contained in D_n.

    Computed as the lcm of the reduced denominators of the pairwise axis
    differences as fractions of pi.
    """
    diffs = angle_diff_set(angles)
    if not diffs:
        raise ValueError("need at least one angle")
    return math.lcm(*(d.times_pi.denominator for d in diffs))


def dihedral_group(angles: Iterable[RatAngle],
                   anchor: RatAngle | None = None) -> DihedralGroup:
    """Smallest dihedral group containing the reflections in all given axes.

    The anchor defaults to the smallest input axis so every input axis is
    realized by a group element.
    """
    angles = list(angles)
    n = unfolding_constant(angles)
    if anchor is None:
        anchor = RatAngle(min(a.axis().times_pi for a in angles))
    g = DihedralGroup(n, anchor)
    for a in angles:
        g.reflection_about(a.axis())  # raises if the anchor is incompatible
    return g


# ---------------------------------------------------------------------------
# direction ordering (exact vectors only)


def direction_sector(v: Vec2) -> int:
    """Octant-style sector index of a nonzero vector, counterclockwise from
    the positive x-axis.  Axis directions get even sectors."""
    sx, sy = sign_of(v.x), sign_of(v.y)
    if sx == 0 and sy == 0:
        raise ValueError("zero vector has no direction")
    table = {(1, 0): 0, (1, 1): 1, (0, 1): 2, (-1, 1): 3,
             (-1, 0): 4, (-1, -1): 5, (0, -1): 6, (1, -1): 7}
    return table[(sx, sy)]


def compare_directions(u: Vec2, v: Vec2) -> int:
    """-1, 0, 1 as the angle of u is below, equal to, above the angle of v,
    angles measured counterclockwise from the positive x-axis in [0, 2pi)."""
    su, sv = direction_sector(u), direction_sector(v)
    if su != sv:
        return -1 if su < sv else 1
    # within one sector, cross(u, v) > 0 puts v counterclockwise of u
    return -sign_of(cross(u, v))


def is_positive_x(v: Vec2) -> bool:
    return sign_of(v.y) == 0 and sign_of(v.x) > 0


def cw_cycle_winding(dirs: Sequence[Vec2], full_turn_steps: Sequence[bool]) -> int:
    """Number of full turns of a cyclic direction sequence traversed
    clockwise.

    ``dirs[j]`` steps clockwise to ``dirs[j+1]`` (indices mod length) by an
    angle in (0, 2pi); steps flagged in ``full_turn_steps`` are exactly 2pi
    (the two directions coincide there).  Exact vectors required.
    """
    m = len(dirs)
    w = 0
    for j in range(m):
        u, v = dirs[j], dirs[(j + 1) % m]
        if full_turn_steps[j]:
            w += 1
            continue
        # clockwise arc from u to v crosses the positive x-axis once iff
        # it wraps below angle 0: at the start (u on the ray) or when the
        # target angle is above the source angle
        if is_positive_x(u) or compare_directions(v, u) > 0:
            w += 1
    return w


# ---------------------------------------------------------------------------
# segment and polygon predicates


def point_on_segment(p: Vec2, a: Vec2, b: Vec2, eps: float = EPS) -> bool:
    """Is p on the closed segment ab."""
    if orient(a, b, p, eps) != 0:
        return False
    lo_x, hi_x = min(a.x, b.x), max(a.x, b.x)
    lo_y, hi_y = min(a.y, b.y), max(a.y, b.y)
    if is_exact(p.x) and is_exact(lo_x) and is_exact(hi_x) \
            and is_exact(p.y) and is_exact(lo_y) and is_exact(hi_y):
        return lo_x <= p.x <= hi_x and lo_y <= p.y <= hi_y
    return (lo_x - eps <= p.x <= hi_x + eps) and (lo_y - eps <= p.y <= hi_y + eps)


def segments_cross(a: Vec2, b: Vec2, c: Vec2, d: Vec2, eps: float = EPS) -> bool:
    """Do the open segments ab and cd share a point.

    Touching only at endpoints does not count; collinear overlap of
    positive length does.
    """
    o1 = orient(a, b, c, eps)
    o2 = orient(a, b, d, eps)
    o3 = orient(c, d, a, eps)
    o4 = orient(c, d, b, eps)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    # collinear or endpoint-touching configurations
    if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
        # all four points on one line: overlap of positive length?
        pts = [c, d]
        inside = [p for p in pts if point_on_segment(p, a, b, eps)
                  and not vecs_equal(p, a, eps) and not vecs_equal(p, b, eps)]
        if inside:
            return True
        inside = [p for p in (a, b) if point_on_segment(p, c, d, eps)
                  and not vecs_equal(p, c, eps) and not vecs_equal(p, d, eps)]
        return bool(inside)
    # one endpoint strictly interior to the other segment
    for p, (u, v) in ((c, (a, b)), (d, (a, b)), (a, (c, d)), (b, (c, d))):
        if point_on_segment(p, u, v, eps) and \
                not vecs_equal(p, u, eps) and not vecs_equal(p, v, eps):
            return True
    return False


def polygon_signed_area2(vertices: Sequence[Vec2]) -> Number:
    """Twice the signed area (positive for counterclockwise order)."""
    s = 0
    m = len(vertices)
    for i in range(m):
        s += cross(vertices[i], vertices[(i + 1) % m])
    return s


def point_in_polygon(p: Vec2, vertices: Sequence[Vec2], eps: float = EPS) -> str:
    """'inside', 'boundary', or 'outside' for a simple polygon."""
    m = len(vertices)
    for i in range(m):
        if point_on_segment(p, vertices[i], vertices[(i + 1) % m], eps):
            return "boundary"
    # crossing parity along a horizontal ray to +infinity
    inside = False
    px, py = p.x, p.y
    for i in range(m):
        a, b = vertices[i], vertices[(i + 1) % m]
        ay, by = a.y, b.y
        if (ay > py) != (by > py):
            t = (py - ay) / (by - ay)
            xcross = a.x + t * (b.x - a.x)
            if xcross > px:
                inside = not inside
    return "inside" if inside else "outside"


def segment_meets_polygon(a: Vec2, b: Vec2, vertices: Sequence[Vec2],
                          eps: float = EPS) -> bool:
    """Does the open segment ab touch the closed polygon region at all."""
    m = len(vertices)
    for i in range(m):
        if segments_cross(a, b, vertices[i], vertices[(i + 1) % m], eps):
            return True
    mid = Vec2((a.x + b.x) / 2, (a.y + b.y) / 2)
    if point_in_polygon(mid, vertices, eps) != "outside":
        return True
    for v in vertices:
        if point_on_segment(v, a, b, eps) and not vecs_equal(v, a, eps) \
                and not vecs_equal(v, b, eps):
            return True
    return False


def polygons_disjoint(pa: Sequence[Vec2], pb: Sequence[Vec2],
                      eps: float = EPS) -> bool:
    """Closed polygon regions share no point (boundaries included)."""
    ma, mb = len(pa), len(pb)
    for i in range(ma):
        a, b = pa[i], pa[(i + 1) % ma]
        for j in range(mb):
            c, d = pb[j], pb[(j + 1) % mb]
            if segments_cross(a, b, c, d, eps):
                return False
            # shared endpoints or endpoint-on-edge contacts
            for p in (c, d):
                if point_on_segment(p, a, b, eps):
                    return False
            for p in (a, b):
                if point_on_segment(p, c, d, eps):
                    return False
    if point_in_polygon(pa[0], pb, eps) != "outside":
        return False
    if point_in_polygon(pb[0], pa, eps) != "outside":
        return False
    return True
