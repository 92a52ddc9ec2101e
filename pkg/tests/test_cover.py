"""Z^k-cover descriptors: crossing tables, deck moves, lift criteria."""

from fractions import Fraction as F

import pytest

from windtree import (DeckCoordinate, DependentClasses, cover_descriptor,
                      cross_edge, edge_basis, h, holonomy, lifts_cylinder,
                      tau_decomposition, torus_cover_cycles, vec)


def staircase_descriptor(square_torus):
    # the Z-cover of the torus unwrapping the vertical direction
    b = edge_basis(square_torus)
    hcl = {}
    for p in b.basis_pairs:
        cl = h(b, square_torus.rep_slot(p))
        v = holonomy(cl)
        hcl[(int(v.x), int(v.y))] = cl
    gamma = hcl[(1, 0)]  # crossing the horizontal class counts vertical wraps
    return b, cover_descriptor(b, [gamma])


def test_staircase_shifts(square_torus):
    b, desc = staircase_descriptor(square_torus)
    assert desc.k == 1
    shifts = {desc.shift_of_pair(p) for p in range(2)}
    assert shifts == {(0,), (1,)}


def test_cross_edge_round_trip(square_torus):
    b, desc = staircase_descriptor(square_torus)
    deck = DeckCoordinate.zero(1)
    for s in square_torus.all_slots():
        t = None
        for a, bb in square_torus.pair_list:
            if a == s:
                t = bb
            elif bb == s:
                t = a
        out = cross_edge(desc, deck, s, direction="leaving")
        back = cross_edge(desc, out, t, direction="leaving")
        assert back == deck


def test_cross_edge_entering_inverts_leaving(square_torus):
    b, desc = staircase_descriptor(square_torus)
    deck = DeckCoordinate.zero(1)
    for s in square_torus.all_slots():
        out = cross_edge(desc, deck, s, direction="leaving")
        assert cross_edge(desc, out, s, direction="entering") == deck


def test_deck_coordinate_shift():
    d = DeckCoordinate.zero(2)
    e = d.shift((1, -2))
    assert e.coords == (1, -2)
    assert e.shift((1, -2), sign=-1) == d


def test_dependent_classes_rejected(square_torus):
    b = edge_basis(square_torus)
    a = h(b, square_torus.rep_slot(b.basis_pairs[0]))
    with pytest.raises(DependentClasses):
        cover_descriptor(b, [a, a.scale(2)])


def test_torus_cover_cycles_two_square(two_square_torus):
    s = two_square_torus
    b = edge_basis(s)
    # slot (0, 3) is glued by (2, 0), slot (0, 0) by (0, 1)
    assert (s.pair_tau[s.pair_index[(0, 3)]].x,
            s.pair_tau[s.pair_index[(0, 3)]].y) == (2, 0)
    g1, g2 = torus_cover_cycles(b, (0, 3), (0, 0))
    v1, v2 = holonomy(g1), holonomy(g2)
    assert (v1.x, v1.y) == (0, -1)
    assert (v2.x, v2.y) == (2, 0)
    desc = cover_descriptor(b, [g1, g2])
    assert desc.k == 2
    shifts = tuple(desc.shift_of_pair(p) for p in range(4))
    assert shifts == ((0, 1), (0, 0), (1, 0), (0, 1))


def test_torus_cover_degenerate_basis_rejected(two_square_torus):
    # slot (0, 1) is glued in place: its translation vector vanishes
    b = edge_basis(two_square_torus)
    with pytest.raises(Exception) as exc:
        torus_cover_cycles(b, (0, 1), (0, 0))
    assert "degenerate" in str(exc.value)


def test_tau_decomposition_integral(square_torus):
    rows = tau_decomposition(square_torus, vec(1, 0), vec(0, 1))
    for p, (m1, m2) in enumerate(rows):
        tau = square_torus.pair_tau[p]
        assert (tau.x, tau.y) == (m1, m2)


def test_tau_decomposition_non_integral(square_torus):
    from windtree import NonIntegralDecomposition
    with pytest.raises(NonIntegralDecomposition):
        tau_decomposition(square_torus, vec(2, 0), vec(0, 1))


def test_model_descriptor_matches_lattice_steps(classical_surface):
    ms = classical_surface
    desc = ms.descriptor
    assert desc.k == 2
    for s in ms.surface.all_slots():
        assert desc.shift_of_slot(s) == ms.planar_delta(s)


def test_gamma_holonomy_vanishes(classical_surface):
    for g in classical_surface.gammas:
        v = holonomy(g)
        assert v.x == 0 and v.y == 0


def test_lifts_cylinder_classical(embedded_surface):
    from windtree import good_cylinder
    ms = embedded_surface
    cyl = good_cylinder(ms)
    assert lifts_cylinder(ms.descriptor, cyl.core, cyl.core_dual)
    # a curve crossing a shifted pair does not lift
    from windtree import dual_of_pair
    b = ms.basis
    bad = None
    for p in b.basis_pairs:
        if ms.descriptor.shift_of_pair(p) != (0, 0):
            bad = p
            break
    assert bad is not None
    assert not lifts_cylinder(ms.descriptor,
                              h(b, ms.surface.rep_slot(bad)),
                              dual_of_pair(b, bad))
