"""Shared fixtures: the small zoo of surfaces and models the tests walk.

Heavy constructions (unfoldings, the embedded model) are session scoped;
everything here is deterministic.
"""

import math
import random
from fractions import Fraction as F

import pytest

from windtree import (BilliardTable, Polygon, RatAngle, build_model,
                      build_surface, embed_L, obstacle, unfold, unfold_model,
                      vec)
from windtree.exactgeom import compare_directions


def square_obstacle(x0, y0, s):
    x0, y0, s = F(x0), F(y0), F(s)
    return obstacle([vec(x0, y0), vec(x0 + s, y0),
                     vec(x0 + s, y0 + s), vec(x0, y0 + s)])


def diamond_obstacle(cx, cy, r):
    cx, cy, r = F(cx), F(cy), F(r)
    return obstacle([vec(cx + r, cy), vec(cx, cy + r),
                     vec(cx - r, cy), vec(cx, cy - r)])


def ngon_obstacle(cx, cy, r, sides, phase_pi=F(0)):
    """Regular polygon with exact declared edge axes; vertices are floats
    except where the phase makes them rational."""
    pts, axes = [], []
    ph = float(phase_pi) * math.pi
    for k in range(sides):
        a = ph + 2 * math.pi * k / sides
        pts.append(vec(cx + r * math.cos(a), cy + r * math.sin(a)))
    for k in range(sides):
        axes.append(RatAngle(F(phase_pi) + F(1, 2) + F(2 * k + 1, sides)))
    return obstacle(pts, axes=axes)


def zonogon_surface(seed, k=3):
    """Randomized centrally symmetric 2k-gon with opposite edges glued."""
    rng = random.Random(seed)
    vecs = []
    while len(vecs) < k:
        v = vec(F(rng.randint(1, 5)), F(rng.randint(-4, 5)))
        if all(compare_directions(v, w) != 0 for w in vecs):
            vecs.append(v)
    # every direction lies in the open right half plane, so increasing
    # slope is increasing angle and the edge fan below is convex
    vecs.sort(key=lambda v: F(v.y, v.x))
    edges = vecs + [v.scale(-1) for v in vecs]
    pts = [vec(0, 0)]
    for e in edges[:-1]:
        pts.append(pts[-1] + e)
    poly = Polygon(pts)
    return build_surface([poly], {(0, i): (0, i + k) for i in range(k)})


@pytest.fixture(scope="session")
def square_torus():
    sq = Polygon([vec(0, 0), vec(1, 0), vec(1, 1), vec(0, 1)])
    return build_surface([sq], {(0, 0): (0, 2), (0, 1): (0, 3)})


@pytest.fixture(scope="session")
def two_square_torus():
    a = Polygon([vec(0, 0), vec(1, 0), vec(1, 1), vec(0, 1)])
    b = Polygon([vec(1, 0), vec(2, 0), vec(2, 1), vec(1, 1)])
    return build_surface([a, b], {(0, 0): (0, 2), (1, 0): (1, 2),
                                  (0, 1): (1, 3), (1, 1): (0, 3)})


@pytest.fixture(scope="session")
def regular_octagon_surface():
    pts = [vec(0.0, 0.0)]
    for k in range(7):
        a = math.pi * k / 4
        p = pts[-1]
        pts.append(vec(p.x + math.cos(a), p.y + math.sin(a)))
    poly = Polygon(pts)
    return build_surface([poly], {(0, k): (0, k + 4) for k in range(4)})


@pytest.fixture(scope="session")
def rational_octagon_surface():
    poly = Polygon([vec(0, 0), vec(1, 0), vec(2, 1), vec(2, 2),
                    vec(1, 3), vec(0, 3), vec(-1, 2), vec(-1, 1)])
    return build_surface([poly], {(0, k): (0, k + 4) for k in range(4)})


@pytest.fixture(scope="session")
def triangle_unfolding():
    """Right triangle with angle pi/8, unfolded over the 16-element group."""
    t = math.tan(math.pi / 8)
    tri = Polygon([vec(0.0, 0.0), vec(1.0, 0.0), vec(1.0, t)])
    table = BilliardTable(tri, domain_angles=[RatAngle(0), RatAngle(1, 2),
                                              RatAngle(9, 8)])
    return unfold(table)


@pytest.fixture(scope="session")
def classical_model():
    return build_model(vec(1, 0), vec(0, 1),
                       [square_obstacle(F(1, 4), F(1, 4), F(1, 2))])


@pytest.fixture(scope="session")
def classical_surface(classical_model):
    return unfold_model(classical_model)


@pytest.fixture(scope="session")
def slit_model():
    sl = obstacle([vec(F(1, 4), F(1, 2)), vec(F(3, 4), F(1, 2))],
                  degenerate=True)
    return build_model(vec(1, 0), vec(0, 1), [sl])


@pytest.fixture(scope="session")
def embedded_classical(classical_model):
    model, emb = embed_L(classical_model)
    return model, emb


@pytest.fixture(scope="session")
def embedded_surface(embedded_classical):
    return unfold_model(embedded_classical[0])


def battery_models():
    """Rational models covering n in {2, 3, 4, 6, 8} on varied lattices."""
    return {
        "n2-classical": build_model(
            vec(1, 0), vec(0, 1),
            [square_obstacle(F(1, 4), F(1, 4), F(1, 2))]),
        "n2-tall": build_model(
            vec(1, 0), vec(0, F(3, 2)),
            [square_obstacle(F(1, 4), F(1, 2), F(1, 2))]),
        "n2-pair": build_model(
            vec(1, 0), vec(0, 1),
            [square_obstacle(F(1, 8), F(1, 8), F(1, 4)),
             square_obstacle(F(5, 8), F(5, 8), F(1, 4))]),
        "n3-triangle": build_model(
            vec(1, 0), vec(0, 1),
            [ngon_obstacle(0.5, 0.5, 0.25, 3, F(1, 2))]),
        "n4-diamond": build_model(
            vec(1, 0), vec(0, 1),
            [square_obstacle(F(1, 8), F(1, 8), F(1, 4)),
             diamond_obstacle(F(5, 8), F(5, 8), F(1, 8))]),
        "n4-skew": build_model(
            vec(1, 0), vec(F(1, 2), 1),
            [diamond_obstacle(F(1, 2), F(1, 2), F(1, 5)),
             square_obstacle(F(1, 8), F(1, 16), F(1, 8))]),
        "n6-mixed": build_model(
            vec(1, 0), vec(0, 1),
            [square_obstacle(F(1, 16), F(1, 16), F(1, 8)),
             ngon_obstacle(0.55, 0.55, 0.22, 3, F(2, 3))]),
        "n8-octagon": build_model(
            vec(1, 0), vec(0, 1),
            [square_obstacle(F(1, 16), F(1, 16), F(1, 8)),
             ngon_obstacle(0.55, 0.55, 0.22, 8)]),
    }


@pytest.fixture(scope="session")
def battery():
    return battery_models()


@pytest.fixture(scope="session")
def battery_surfaces(battery):
    return {name: unfold_model(m) for name, m in battery.items()}
