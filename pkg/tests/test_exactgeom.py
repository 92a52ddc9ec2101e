"""Exact primitives: angles, dihedral elements, direction order, predicates."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from windtree import DihedralGroup, RatAngle, vec
from windtree.exactgeom import (angle_diff_set, apply, compare_directions,
                                cross, dihedral_group, mat_apply, mat_is_exact,
                                point_in_polygon, polygons_disjoint,
                                reflection_matrix, rotation_matrix,
                                segments_cross, transform_direction_angle,
                                unfolding_constant, vecs_equal)

D8 = DihedralGroup(8)
ELTS = st.sampled_from(D8.elements())


def test_ratangle_normalizes_mod_two_pi():
    assert RatAngle(5, 2) == RatAngle(1, 2)
    assert RatAngle(-1, 2).times_pi == F(3, 2)
    assert RatAngle(2) == RatAngle(0)


def test_ratangle_arithmetic():
    a, b = RatAngle(1, 3), RatAngle(1, 6)
    assert (a + b).times_pi == F(1, 2)
    assert (a - b).times_pi == F(1, 6)
    assert (-a).times_pi == F(5, 3)


def test_axis_reduces_mod_pi():
    assert RatAngle(3, 2).axis() == RatAngle(1, 2)
    assert RatAngle(1).axis() == RatAngle(0)


def test_quarter_turn_trig_is_exact():
    for t, c, s in [(F(0), 1, 0), (F(1, 2), 0, 1), (F(1), -1, 0),
                    (F(3, 2), 0, -1)]:
        a = RatAngle(t)
        assert a.cos() == c and isinstance(a.cos(), (int, F))
        assert a.sin() == s


def test_other_angles_fall_back_to_floats():
    c = RatAngle(1, 3).cos()
    assert isinstance(c, float) and abs(c - 0.5) < 1e-12


def test_direction_matches_trig():
    d = RatAngle(1, 4).direction()
    assert abs(d.x - d.y) < 1e-15 and d.x > 0


def test_rotation_matrix_quarter_turn_exact():
    m = rotation_matrix(RatAngle(1, 2))
    assert mat_is_exact(m)
    assert mat_apply(m, vec(1, 0)) == vec(0, 1)


def test_reflection_matrix_diagonal_axis():
    m = reflection_matrix(RatAngle(1, 4))
    assert mat_apply(m, vec(1, 0)) == vec(0, 1)
    assert mat_apply(m, vec(0, 1)) == vec(1, 0)


@given(ELTS, ELTS)
def test_compose_matches_matrix_product(g, h):
    v = vec(F(3), F(-2))
    lhs = apply(g.compose(h), v)
    rhs = apply(g, apply(h, v))
    assert abs(lhs.x - rhs.x) < 1e-12 and abs(lhs.y - rhs.y) < 1e-12


@given(ELTS)
def test_inverse(g):
    assert g.compose(g.inverse()).is_identity()
    assert g.inverse().compose(g).is_identity()


@given(ELTS, ELTS)
def test_det_multiplicative(g, h):
    assert g.compose(h).det() == g.det() * h.det()


@given(ELTS)
def test_reflections_are_involutions(g):
    if g.refl:
        assert g.compose(g).is_identity()


@given(ELTS)
def test_transform_direction_angle_matches_apply(g):
    a = RatAngle(1, 2)
    u = apply(g, a.direction())
    w = transform_direction_angle(g, a).direction()
    assert abs(u.x - w.x) < 1e-12 and abs(u.y - w.y) < 1e-12


def test_reflection_about_axis_fixes_axis():
    g = D8.reflection_about(RatAngle(3, 8))
    d = RatAngle(3, 8).direction()
    fixed = apply(g, d)
    assert abs(fixed.x - d.x) < 1e-12 and abs(fixed.y - d.y) < 1e-12
    assert g.refl and g.det() == -1


def test_iota_is_half_turn():
    g = DihedralGroup(2).iota()
    assert not g.refl
    assert apply(g, vec(1, 2)) == vec(-1, -2)


def test_iota_requires_even_order():
    with pytest.raises(ValueError):
        DihedralGroup(3).iota()


def test_unfolding_constant_values():
    assert unfolding_constant([RatAngle(0), RatAngle(1, 2)]) == 2
    assert unfolding_constant([RatAngle(0), RatAngle(1, 2),
                               RatAngle(1, 4), RatAngle(3, 4)]) == 4
    assert unfolding_constant([RatAngle(0)]) == 1
    assert unfolding_constant([RatAngle(1, 6), RatAngle(1, 2)]) == 3


def test_angle_diff_set_contains_zero_and_closed_under_reversal():
    ds = angle_diff_set([RatAngle(0), RatAngle(1, 3), RatAngle(1, 2)])
    ts = {d.times_pi for d in ds}
    assert F(0) in ts
    assert ts == {(1 - t) % 1 for t in ts}


def test_dihedral_group_anchor_realizes_all_axes():
    g = dihedral_group([RatAngle(1, 8), RatAngle(5, 8)])
    assert g.n == 2
    assert g.anchor == RatAngle(1, 8)


rational_vec = st.builds(
    vec,
    st.fractions(min_value=-9, max_value=9),
    st.fractions(min_value=-9, max_value=9),
).filter(lambda v: not (v.x == 0 and v.y == 0))


@given(rational_vec, rational_vec)
def test_compare_directions_antisymmetric(u, v):
    assert compare_directions(u, v) == -compare_directions(v, u)


@given(rational_vec, st.fractions(min_value=F(1, 4), max_value=4))
def test_compare_directions_scale_invariant(u, c):
    assert compare_directions(u, u.scale(c)) == 0
    assert compare_directions(u, u.scale(-1)) != 0


@given(rational_vec, rational_vec, rational_vec)
def test_cross_bilinear(u, v, w):
    assert cross(u + v, w) == cross(u, w) + cross(v, w)


SQ = [vec(0, 0), vec(2, 0), vec(2, 2), vec(0, 2)]


def test_point_in_polygon_cases():
    assert point_in_polygon(vec(1, 1), SQ) == "inside"
    assert point_in_polygon(vec(3, 1), SQ) == "outside"
    assert point_in_polygon(vec(2, 1), SQ) == "boundary"
    assert point_in_polygon(vec(0, 0), SQ) == "boundary"


def test_segments_cross():
    assert segments_cross(vec(0, 0), vec(2, 2), vec(0, 2), vec(2, 0))
    assert not segments_cross(vec(0, 0), vec(1, 0), vec(0, 1), vec(1, 1))


def test_collinear_overlap_counts_as_crossing():
    assert segments_cross(vec(0, 0), vec(2, 0), vec(1, 0), vec(3, 0))


def test_polygons_disjoint():
    far = [vec(5, 5), vec(6, 5), vec(6, 6), vec(5, 6)]
    touching = [vec(2, 0), vec(3, 0), vec(3, 1), vec(2, 1)]
    overlapping = [vec(1, 1), vec(3, 1), vec(3, 3), vec(1, 3)]
    assert polygons_disjoint(SQ, far)
    assert not polygons_disjoint(SQ, touching)
    assert not polygons_disjoint(SQ, overlapping)


def test_vecs_equal_tolerance():
    assert vecs_equal(vec(0.1 + 0.2, 0), vec(0.3, 0))
    assert not vecs_equal(vec(0, 0), vec(1e-3, 0))
