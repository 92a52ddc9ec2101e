"""Model file format: parsing, exactness, messages, round trips."""

from fractions import Fraction as F

import pytest

from windtree import (EmbeddingParams, ParseError, RatAngle, SemanticError,
                      SimulationParams, parse_model, serialize_model, vec)

CLASSICAL = """\
# classical wind-tree
lattice {
  tau1 = 1 0
  tau2 = 0 1
}
domain {
  vertices = 0 0, 1 0, 1 1, 0 1
  pairing = 0:2, 1:3
}
obstacle {
  vertices = 1/4 1/4, 3/4 1/4, 3/4 3/4, 1/4 3/4
  edge_angles = 0, 1/2, 0, 1/2
}
"""


def test_parse_classical():
    model, emb, sim = parse_model(CLASSICAL)
    assert emb is None and sim is None
    assert model.tau1 == vec(1, 0)
    assert model.tau2 == vec(0, 1)
    assert len(model.obstacles) == 1
    ob = model.obstacles[0]
    assert ob.base.vertex(0) == vec(F(1, 4), F(1, 4))
    assert ob.base_axes[1] == RatAngle(1, 2)


def test_rationals_parse_exactly():
    src = CLASSICAL.replace("1/4 1/4, 3/4 1/4, 3/4 3/4, 1/4 3/4",
                            "1/3 1/3, 2/3 1/3, 2/3 2/3, 1/3 2/3")
    model, _, _ = parse_model(src)
    assert model.obstacles[0].base.vertex(0).x == F(1, 3)


def test_serialize_round_trip():
    model, _, _ = parse_model(CLASSICAL)
    text = serialize_model(model)
    again, _, _ = parse_model(text)
    assert serialize_model(again) == text
    assert again.tau1 == model.tau1
    assert again.obstacles[0].base.vertices == \
        model.obstacles[0].base.vertices


def test_serialize_keeps_rotation_symbolic():
    src = CLASSICAL + """
obstacle {
  vertices = 0 0, 1/8 0, 1/8 1/8, 0 1/8
  edge_angles = 0, 1/2, 0, 1/2
  rotation = 1/4
  anchor = 1/2 25/32
}
"""
    model, _, _ = parse_model(src)
    text = serialize_model(model)
    assert "rotation = 1/4" in text
    again, _, _ = parse_model(text)
    assert again.obstacles[1].rotation == RatAngle(1, 4)


def test_embedding_and_simulation_sections():
    src = CLASSICAL + """
embedding {
  xi = 1/2
  scale = 1/8
  anchor = 1/8 1/8
}
simulation {
  directions = 10
  budget = 500
  seed = 3
  epsilon = 1/2
}
"""
    model, emb, sim = parse_model(src)
    assert isinstance(emb, EmbeddingParams)
    assert emb.xi == RatAngle(1, 2)
    assert emb.scale == F(1, 8)
    assert isinstance(sim, SimulationParams)
    assert (sim.directions, sim.budget, sim.seed) == (10, 500, 3)
    assert sim.epsilon == F(1, 2)


def test_empty_embedding_section_requests_default_search():
    src = CLASSICAL + "embedding {\n}\n"
    model, emb, sim = parse_model(src)
    assert isinstance(emb, EmbeddingParams)
    assert emb.xi is None and emb.scale is None and emb.anchor is None


def test_degenerate_obstacle():
    src = """
lattice {
  tau1 = 1 0
  tau2 = 0 1
}
domain {
  vertices = 0 0, 1 0, 1 1, 0 1
  pairing = 0:2, 1:3
}
obstacle {
  vertices = 1/4 1/2, 3/4 1/2
  edge_angles = 0, 0
}
"""
    model, _, _ = parse_model(src)
    assert model.obstacles[0].base.degenerate
    assert model.obstacles[0].base.n == 2


def test_decimal_rejected_with_position():
    src = CLASSICAL.replace("tau1 = 1 0", "tau1 = 1.5 0")
    with pytest.raises(ParseError) as exc:
        parse_model(src)
    assert "p/q" in str(exc.value)
    assert exc.value.line == 3


def test_missing_section_header_message():
    with pytest.raises(ParseError) as exc:
        parse_model("tau1 = 1 0\nlattice {\n}\n")
    assert "section header" in str(exc.value)
    assert exc.value.line == 1


def test_string_without_brace_is_a_path():
    with pytest.raises(FileNotFoundError):
        parse_model("no-such-file.model")


def test_unknown_key_rejected():
    src = CLASSICAL.replace("tau1 = 1 0", "tau1 = 1 0\n  tau3 = 2 2")
    with pytest.raises((ParseError, SemanticError)) as exc:
        parse_model(src)
    assert "tau3" in str(exc.value)


def test_unknown_section_rejected():
    with pytest.raises(SemanticError) as exc:
        parse_model(CLASSICAL + "extras {\n}\n")
    assert "extras" in str(exc.value)


def test_missing_lattice_section():
    src = CLASSICAL.split("domain {", 1)[1]
    with pytest.raises(SemanticError) as exc:
        parse_model("domain {" + src)
    assert "lattice" in str(exc.value)


def test_missing_field_named():
    src = CLASSICAL.replace("  tau2 = 0 1\n", "")
    with pytest.raises(SemanticError) as exc:
        parse_model(src)
    assert "tau2" in str(exc.value)


def test_duplicate_section_rejected():
    src = CLASSICAL + "lattice {\n  tau1 = 1 0\n  tau2 = 0 1\n}\n"
    with pytest.raises(SemanticError) as exc:
        parse_model(src)
    assert "duplicate" in str(exc.value)


def test_comments_and_blank_lines_ignored():
    src = "# header\n\n" + CLASSICAL.replace(
        "  tau1 = 1 0", "  tau1 = 1 0  # inline comment")
    model, _, _ = parse_model(src)
    assert model.tau1 == vec(1, 0)


def test_parse_from_path(tmp_path):
    p = tmp_path / "m.model"
    p.write_text(CLASSICAL)
    model, _, _ = parse_model(str(p))
    assert model.unfolding_constant() == 2


def test_serialize_rejects_float_model():
    from conftest import ngon_obstacle
    from windtree import build_model
    m = build_model(vec(1, 0), vec(0, 1),
                    [ngon_obstacle(0.5, 0.5, 0.25, 3, F(1, 2))])
    with pytest.raises(SemanticError):
        serialize_model(m)


def test_negative_rationals():
    src = CLASSICAL.replace("tau2 = 0 1", "tau2 = -1/2 1")
    model, _, _ = parse_model(src)
    assert model.tau2 == vec(F(-1, 2), 1)
