"""Model description files.

A file is a sequence of brace blocks::

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
    embedding {
      xi = 1/2
      scale = 1/8
    }
    simulation {
      directions = 100
      budget = 100000
      seed = 0
      epsilon = 1
    }

Numbers are integers or fractions p/q; decimal points are rejected so
every coordinate stays exact.  Angle values mean that multiple of pi.
``#`` starts a comment.  ``lattice`` is required; ``domain`` defaults to
the lattice parallelogram with opposite edges paired; ``obstacle`` may
repeat; ``embedding`` asks the loader to place the corner pair (it is
returned as parameters, not applied); ``simulation`` carries run
defaults.  An obstacle with two vertices is a slit.

Syntax problems raise ParseError with line and column; structural
problems (unknown keys, wrong arity, duplicates) raise SemanticError.
Geometry errors from model construction propagate unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import re
from typing import Optional

from .exactgeom import RatAngle, Vec2, vec
from .models import WindTreeModel, build_model, obstacle
from .surface import Polygon


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__("line %d, column %d: %s" % (line, col, message))
        self.line = line
        self.col = col


class SemanticError(Exception):
    """Well-formed file that does not describe a model."""


@dataclass
class EmbeddingParams:
    xi: Optional[RatAngle] = None
    scale: Optional[Fraction] = None
    anchor: Optional[Vec2] = None


@dataclass
class SimulationParams:
    directions: Optional[int] = None
    budget: Optional[int] = None
    seed: Optional[int] = None
    epsilon: Optional[Fraction] = None


_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _rational(tok: str, line: int, col: int) -> Fraction:
    tok = tok.strip()
    if "." in tok:
        raise ParseError("decimal numbers are not allowed; use p/q", line, col)
    if not _RAT.match(tok):
        raise ParseError("expected a rational number, got %r" % tok, line, col)
    if "/" in tok:
        p, q = tok.split("/")
        if int(q) == 0:
            raise ParseError("zero denominator", line, col)
        return Fraction(int(p), int(q))
    return Fraction(int(tok))


def _vector(val: str, line: int, col: int) -> Vec2:
    parts = val.split()
    if len(parts) != 2:
        raise ParseError("expected two coordinates", line, col)
    return vec(_rational(parts[0], line, col), _rational(parts[1], line, col))


def _split_list(val: str) -> list[str]:
    return [p.strip() for p in val.split(",") if p.strip()]


def _parse_blocks(text: str) -> list[tuple[str, dict, int]]:
    """(section, {key: (value, line, col)}, line) in file order."""
    blocks = []
    section = None
    body: dict = {}
    sec_line = 0
    for ln, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).rstrip()
        s = line.strip()
        if not s:
            continue
        if section is None:
            m = re.match(r"^(\w+)\s*\{$", s)
            if not m:
                raise ParseError("expected a section header like 'name {'",
                                 ln, len(line) - len(s) + 1)
            section = m.group(1)
            body = {}
            sec_line = ln
            continue
        if s == "}":
            blocks.append((section, body, sec_line))
            section = None
            continue
        if "=" not in s:
            raise ParseError("expected 'key = value' or '}'",
                             ln, len(line) - len(s) + 1)
        key, _, val = s.partition("=")
        key = key.strip()
        val = val.strip()
        if not key.isidentifier():
            raise ParseError("bad key %r" % key, ln, 1)
        if key in body:
            raise ParseError("duplicate key %r" % key, ln, 1)
        if not val:
            raise ParseError("empty value for %r" % key, ln, len(line))
        body[key] = (val, ln, line.index("=") + 2)
    if section is not None:
        raise ParseError("unterminated section %r" % section, sec_line, 1)
    return blocks


_SECTION_KEYS = {
    "lattice": {"tau1", "tau2"},
    "domain": {"vertices", "pairing"},
    "obstacle": {"vertices", "edge_angles", "rotation", "anchor"},
    "embedding": {"xi", "scale", "anchor"},
    "simulation": {"directions", "budget", "seed", "epsilon"},
}


def _check_keys(section: str, body: dict) -> None:
    allowed = _SECTION_KEYS[section]
    for k in body:
        if k not in allowed:
            raise SemanticError("section %r does not take key %r"
                                % (section, k))


def _get(body: dict, key: str):
    return body.get(key, (None, 0, 0))


def parse_model(source: str):
    """Parse a model file (text, or a path when the string has no brace).

    Returns (model, embedding_params or None, simulation_params or None);
    the embedding is not applied here.
    """
    if "{" not in source:
        with open(source) as fh:
            source = fh.read()
    blocks = _parse_blocks(source)

    lattice = domain = embedding = simulation = None
    obstacle_bodies = []
    for name, body, ln in blocks:
        if name not in _SECTION_KEYS:
            raise SemanticError("unknown section %r" % name)
        _check_keys(name, body)
        if name == "obstacle":
            obstacle_bodies.append(body)
        elif name == "lattice":
            if lattice is not None:
                raise SemanticError("duplicate lattice section")
            lattice = body
        elif name == "domain":
            if domain is not None:
                raise SemanticError("duplicate domain section")
            domain = body
        elif name == "embedding":
            if embedding is not None:
                raise SemanticError("duplicate embedding section")
            embedding = body
        elif name == "simulation":
            if simulation is not None:
                raise SemanticError("duplicate simulation section")
            simulation = body

    if lattice is None:
        raise SemanticError("missing lattice section")
    for key in ("tau1", "tau2"):
        if key not in lattice:
            raise SemanticError("lattice section needs %r" % key)
    tau1 = _vector(*lattice["tau1"])
    tau2 = _vector(*lattice["tau2"])

    fundamental = None
    f_pairing = None
    if domain is not None:
        if "vertices" not in domain or "pairing" not in domain:
            raise SemanticError("domain section needs vertices and pairing")
        val, ln, col = domain["vertices"]
        fundamental = Polygon([_vector(p, ln, col) for p in _split_list(val)])
        val, ln, col = domain["pairing"]
        f_pairing = {}
        for item in _split_list(val):
            if ":" not in item:
                raise ParseError("pairing items look like 'a:b'", ln, col)
            a, _, b = item.partition(":")
            try:
                f_pairing[int(a)] = int(b)
            except ValueError:
                raise ParseError("pairing indices must be integers", ln, col)

    obstacles = []
    for body in obstacle_bodies:
        if "vertices" not in body:
            raise SemanticError("obstacle section needs vertices")
        val, ln, col = body["vertices"]
        pts = [_vector(p, ln, col) for p in _split_list(val)]
        if len(pts) < 2:
            raise SemanticError("obstacle needs at least two vertices")
        axes = None
        if "edge_angles" in body:
            val, ln, col = body["edge_angles"]
            axes = [RatAngle(_rational(p, ln, col))
                    for p in _split_list(val)]
        rotation = None
        if "rotation" in body:
            rotation = RatAngle(_rational(*body["rotation"]))
        anchor = None
        if "anchor" in body:
            anchor = _vector(*body["anchor"])
        obstacles.append(obstacle(Polygon(pts, degenerate=len(pts) == 2),
                                  rotation=rotation, anchor=anchor, axes=axes))

    model = build_model(tau1, tau2, obstacles,
                        fundamental=fundamental, f_pairing=f_pairing)

    emb = None
    if embedding is not None:
        emb = EmbeddingParams()
        if "xi" in embedding:
            emb.xi = RatAngle(_rational(*embedding["xi"]))
        if "scale" in embedding:
            emb.scale = _rational(*embedding["scale"])
        if "anchor" in embedding:
            emb.anchor = _vector(*embedding["anchor"])

    sim = None
    if simulation is not None:
        sim = SimulationParams()
        for key in ("directions", "budget", "seed"):
            if key in simulation:
                v = _rational(*simulation[key])
                if v.denominator != 1:
                    raise SemanticError("%s must be an integer" % key)
                setattr(sim, key, int(v))
        if "epsilon" in simulation:
            sim.epsilon = _rational(*simulation["epsilon"])

    return model, emb, sim


# ---------------------------------------------------------------------------
# serialization


def _fmt(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else \
        "%d/%d" % (f.numerator, f.denominator)


def _fmt_vec(v: Vec2) -> str:
    return "%s %s" % (_fmt(v.x), _fmt(v.y))


def _fmt_angle(a: RatAngle) -> str:
    return _fmt(a.times_pi)


def serialize_model(model: WindTreeModel,
                    embedding: Optional[EmbeddingParams] = None,
                    simulation: Optional[SimulationParams] = None) -> str:
    """Model file text for an exact model.

    Obstacles are written as base polygon plus symbolic rotation, exactly
    as stored.  An applied L embedding is part of the obstacle list and is
    not re-emitted as an embedding section; pass ``embedding`` only for a
    placement request to perform on load.
    """
    if not all(o.base.is_exact() and o.anchor.is_exact()
               for o in model.obstacles) or \
            not (model.tau1.is_exact() and model.tau2.is_exact() and
                 model.fundamental.is_exact()):
        raise SemanticError("only exact models can be serialized")
    out = []
    out.append("lattice {")
    out.append("  tau1 = %s" % _fmt_vec(model.tau1))
    out.append("  tau2 = %s" % _fmt_vec(model.tau2))
    out.append("}")
    out.append("domain {")
    out.append("  vertices = %s" % ", ".join(
        _fmt_vec(v) for v in model.fundamental.vertices))
    pairs = sorted({(min(a, b), max(a, b))
                    for a, b in model.f_pairing.items()})
    out.append("  pairing = %s" % ", ".join("%d:%d" % p for p in pairs))
    out.append("}")
    for ob in model.obstacles:
        out.append("obstacle {")
        out.append("  vertices = %s" % ", ".join(
            _fmt_vec(v) for v in ob.base.vertices))
        out.append("  edge_angles = %s" % ", ".join(
            _fmt_angle(a) for a in ob.base_axes))
        if not ob.rotation.is_zero():
            out.append("  rotation = %s" % _fmt_angle(ob.rotation))
        if not ob.anchor.is_zero():
            out.append("  anchor = %s" % _fmt_vec(ob.anchor))
        out.append("}")
    if embedding is not None:
        out.append("embedding {")
        if embedding.xi is not None:
            out.append("  xi = %s" % _fmt_angle(embedding.xi))
        if embedding.scale is not None:
            out.append("  scale = %s" % _fmt(embedding.scale))
        if embedding.anchor is not None:
            out.append("  anchor = %s" % _fmt_vec(embedding.anchor))
        out.append("}")
    if simulation is not None:
        out.append("simulation {")
        for key in ("directions", "budget", "seed"):
            v = getattr(simulation, key)
            if v is not None:
                out.append("  %s = %d" % (key, v))
        if simulation.epsilon is not None:
            out.append("  epsilon = %s" % _fmt(simulation.epsilon))
        out.append("}")
    return "\n".join(out) + "\n"
