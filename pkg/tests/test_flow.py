"""Trajectory simulation: engine agreement, analytic oracles, statistics."""

import io
import math

import numpy as np
import pytest

from windtree import (StartInsideObstacle, cover_trace, diffusion_exponent,
                      direction_battery, envelope_slope, first_hit_brute,
                      first_hit_lattice, free_point, recurrence_stats, trace,
                      write_stats_csv)
from windtree.flow import cell_of_point, planar_to_chart

START = (0.05, 0.1)


def test_cell_of_point_round_trip(classical_model):
    for p in [(0.3, 0.4), (1.7, -2.2), (-0.01, 5.99)]:
        q, (l1, l2) = planar_to_chart(classical_model, p)
        assert cell_of_point(classical_model, p) == (l1, l2)
        assert abs(q[0] + l1 - p[0]) < 1e-12
        assert abs(q[1] + l2 - p[1]) < 1e-12
        assert 0 <= q[0] < 1 and 0 <= q[1] < 1


def test_start_inside_obstacle_rejected(classical_model):
    with pytest.raises(StartInsideObstacle):
        cover_trace(classical_model, (0.5, 0.5), 0.3, budget=10)


def test_free_point_is_free(battery):
    for name, m in battery.items():
        p = free_point(m)
        cover_trace(m, p, 0.37, budget=5)  # must not raise


def test_engines_agree(classical_model):
    # chart kernel vs planar lattice walk: same bounces, same rows
    a = cover_trace(classical_model, START, 0.9272952180016122, budget=100)
    b = trace(classical_model, START, 0.9272952180016122, budget=100)
    assert len(a) == len(b)
    assert a.status == b.status
    xa, ya = a.planar()
    xb, yb = b.planar()
    assert np.max(np.abs(xa - xb)) < 1e-9
    assert np.max(np.abs(ya - yb)) < 1e-9
    assert np.array_equal(a.l1, b.l1) and np.array_equal(a.l2, b.l2)
    assert np.array_equal(a.edge, b.edge)


def test_planar_reconstruction(classical_model):
    traj = cover_trace(classical_model, START, 1.1, budget=50)
    x, y = traj.planar()
    assert np.max(np.abs(traj.qx + traj.l1 * 1.0 + traj.l2 * 0.0 - x)) == 0
    for i in (0, len(traj) - 1):
        st = traj.state(i)
        assert abs(st.point[0] - (st.q[0] + st.cell[0])) < 1e-12
        assert abs(st.point[1] - (st.q[1] + st.cell[1])) < 1e-12


def test_labels_compose_reflections(classical_model):
    # the label after each bounce is the product of wall reflections
    traj = cover_trace(classical_model, START, 0.7, budget=20)
    tb = traj.tables
    g = tb.model.unfolding_constant()
    from windtree.exactgeom import dihedral_group
    grp = dihedral_group(tb.model.wall_axes())
    acc = grp.identity()
    assert traj.events  # the direction does hit walls
    for ev in traj.events:
        org = ev.wall
        assert org[0] == "hole"
        axis = tb.model.obstacles[org[1]].realized_axes()[org[2]]
        acc = grp.reflection_about(axis).compose(acc)
        assert str(ev.label) == str(acc)
    del g


def test_bounded_orbit_first_return(classical_model):
    # vertical bouncer between two obstacle walls: gap 1/8 up, so the
    # orbit re-enters an eps-ball around the start at t = 1/4 - eps
    eps = 0.01
    traj = cover_trace(classical_model, (0.5, 0.125), math.pi / 2,
                       budget=64, recurrence_eps=eps)
    assert traj.first_return_t is not None
    assert abs(traj.first_return_t - (0.25 - eps)) < 1e-9
    stats = recurrence_stats(
        cover_trace(classical_model, (0.5, 0.125), math.pi / 2, budget=64),
        eps)
    assert stats["returned"]
    assert abs(stats["first_return_t"] - (0.25 - eps)) < 1e-9


def test_bounded_orbit_envelope_is_flat(classical_model):
    traj = cover_trace(classical_model, (0.5, 0.125), math.pi / 2,
                       budget=2 ** 62, store=False, envelope_horizon=1e4)
    cps, env = traj.envelope
    assert traj.max_displacement <= 0.5
    assert abs(envelope_slope(cps, env)) < 1e-9


def test_free_flight_envelope_slope_one(classical_model):
    # a horizontal line below the obstacles never collides
    traj = cover_trace(classical_model, (0.5, 0.125), 0.0,
                       budget=2 ** 62, store=False, envelope_horizon=1e4)
    assert traj.status == "length"
    cps, env = traj.envelope
    s = envelope_slope(cps, env)
    assert abs(s - 1.0) < 1e-9


def test_budget_status_and_final_row(classical_model):
    traj = cover_trace(classical_model, START, 0.9, budget=10)
    assert traj.status == "budget"
    assert traj.n_bounces == 10
    probe = cover_trace(classical_model, START, 0.9, budget=10, store=False)
    assert probe.t[-1] == traj.t[-1]
    assert len(probe) == 2  # initial row and final state only


def test_time_horizon_status(classical_model):
    traj = cover_trace(classical_model, START, 0.9, budget=2 ** 62,
                       t_max=7.5)
    assert traj.status == "length"
    assert abs(traj.t[-1] - 7.5) < 1e-12


def test_determinism_bitwise(classical_model):
    a = cover_trace(classical_model, START, 1.234, budget=500)
    b = cover_trace(classical_model, START, 1.234, budget=500)
    for f in ("t", "qx", "qy", "dx", "dy", "l1", "l2"):
        assert np.array_equal(getattr(a, f), getattr(b, f))


def test_first_hit_lattice_matches_brute(classical_model):
    import random
    rng = random.Random(3)
    for _ in range(40):
        p = (rng.uniform(-3, 3), rng.uniform(-3, 3))
        if cell_of_point(classical_model, p) is None:
            continue
        try:
            planar_to_chart(classical_model, p)
        except Exception:
            continue
        th = rng.uniform(0, 2 * math.pi)
        d = (math.cos(th), math.sin(th))
        a = first_hit_lattice(classical_model, p, d, t_cap=40.0)
        cells = [(i, j) for i in range(-45, 46) for j in range(-45, 46)]
        b = first_hit_brute(classical_model, p, d, t_cap=40.0, cells=cells)
        if a is None:
            assert b is None
        else:
            assert b is not None
            assert abs(a.t - b.t) < 1e-9
            assert a.wall == b.wall and a.cell == b.cell


def test_trajectory_csv_format(classical_model):
    traj = cover_trace(classical_model, START, 0.8, budget=5)
    buf = io.StringIO()
    traj.to_csv(buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "t,x,y,dx,dy,l1,l2,rho"
    assert len(lines) == len(traj) + 1
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert len(first) == 8


def test_stats_csv_format(classical_model):
    rows = direction_battery(classical_model, directions=3, budget=200,
                             eps=1.0, seed=0)
    assert len(rows) == 3
    for r in rows:
        assert {"direction", "returned", "first_return_t",
                "envelope_slope", "status", "bounces", "t_end"} <= set(r)
    buf = io.StringIO()
    write_stats_csv(rows, buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "direction,returned,first_return_t,envelope_slope"
    assert len(lines) == 4


def test_direction_battery_deterministic(classical_model):
    a = direction_battery(classical_model, directions=4, budget=300, seed=7)
    b = direction_battery(classical_model, directions=4, budget=300, seed=7)
    assert a == b
    c = direction_battery(classical_model, directions=4, budget=300, seed=8)
    assert [r["direction"] for r in a] != [r["direction"] for r in c]


def test_diffusion_exponent_smoke(classical_model):
    mean, rows = diffusion_exponent(classical_model, direction_count=3,
                                    horizon=1e4, seed=1)
    assert math.isfinite(mean)
    assert len(rows) == 3
    for r in rows:
        assert r["t_end"] > 0
