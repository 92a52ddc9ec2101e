"""Command line front end.

Five subcommands walk the pipeline: ``build`` validates a model file
and writes a normalized copy, ``unfold`` reports the translation
surface, ``certify`` writes the recurrence certificate, ``simulate``
runs the direction battery and writes the stats file, and ``plot``
emits the SVG figures.  Every output is a pure function of the input
file and the flags, so repeated runs produce identical bytes.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

from .flow import cover_trace, direction_battery, free_point, write_stats_csv
from .modelfile import (EmbeddingParams, SimulationParams, parse_model,
                        serialize_model, _fmt, _fmt_angle, _fmt_vec)
from .models import certify, embed_L, unfold_model
from .svgout import render_svg


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)
    print("wrote %s" % path)


def _load(args):
    """Parsed model plus the optional embedding and simulation sections.

    The embedding section, when present, is applied here: the parser
    only reports it.  An empty section asks for the default placement.
    """
    model, embp, simp = parse_model(args.model)
    emb = None
    if embp is not None:
        model, emb = embed_L(model, xi=embp.xi, scale=embp.scale,
                             anchor=embp.anchor)
    return model, emb, simp


def _pick(flag, from_file, fallback):
    if flag is not None:
        return flag
    if from_file is not None:
        return from_file
    return fallback


def cmd_build(args) -> int:
    model, embp, simp = parse_model(args.model)
    embedded = model
    resolved = None
    if embp is not None:
        embedded, emb = embed_L(model, xi=embp.xi, scale=embp.scale,
                                anchor=embp.anchor)
        resolved = EmbeddingParams(emb.xi, emb.scale, emb.anchor)

    print("lattice: tau1 = (%s), tau2 = (%s)"
          % (_fmt_vec(model.tau1), _fmt_vec(model.tau2)))
    print("domain: %d vertices, %d obstacles"
          % (model.fundamental.n, len(embedded.obstacles)))
    print("wall axes (times pi): %s"
          % ", ".join(_fmt(t) for t in
                      sorted({a.times_pi for a in embedded.wall_axes()})))
    print("unfolding constant: %d" % embedded.unfolding_constant())
    if resolved is not None:
        print("embedding: xi = %s pi, scale = %s, anchor = (%s)"
              % (_fmt_angle(resolved.xi), _fmt(resolved.scale),
                 _fmt_vec(resolved.anchor)))

    os.makedirs(args.out, exist_ok=True)
    # The raw model is written back with the placement pinned so that a
    # reload reproduces this build exactly.
    _write(os.path.join(args.out, "normalized.model"),
           serialize_model(model, embedding=resolved, simulation=simp))
    if args.svg:
        _write(os.path.join(args.out, "model.svg"), render_svg(embedded))
    return 0


def cmd_unfold(args) -> int:
    model, _, _ = _load(args)
    ms = unfold_model(model)
    surface = ms.surface
    print("unfolding constant: %d (%d copies)" % (ms.n, 2 * ms.n))
    print("faces: %d, edge pairs: %d, boundary edges: %d"
          % (len(surface.polygons), len(surface.pair_list),
             len(surface.boundary)))
    print("genus: %d" % surface.genus())
    sing = surface.singular_orbits()
    if sing:
        orders = ", ".join(str(s.turns - 1) for s in sing)
        print("singularities: %d (orders %s)" % (len(sing), orders))
    else:
        print("singularities: none")
    print("relative homology rank: %d" % ms.basis.rank)
    for i, g in enumerate(ms.gammas, 1):
        print("deck class gamma_%d: %s" % (i, list(g.coeffs)))
    if args.svg:
        os.makedirs(args.out, exist_ok=True)
        _write(os.path.join(args.out, "surface.svg"), render_svg(ms))
    return 0


def cmd_certify(args) -> int:
    model, _, _ = _load(args)
    cert = certify(model)
    text = cert.to_text()
    if not text.endswith("\n"):
        text += "\n"
    sys.stdout.write(text)
    os.makedirs(args.out, exist_ok=True)
    _write(os.path.join(args.out, "certificate.txt"), text)
    return 0 if cert.passed else 1


def cmd_simulate(args) -> int:
    model, _, simp = _load(args)
    simp = simp or SimulationParams()
    directions = _pick(args.directions, simp.directions, 100)
    budget = _pick(args.budget, simp.budget, 10 ** 5)
    seed = _pick(args.seed, simp.seed, 0)
    epsilon = args.epsilon
    if epsilon is None:
        epsilon = simp.epsilon if simp.epsilon is not None else 1
    epsilon = float(Fraction(epsilon))

    rows = direction_battery(model, directions=directions, budget=budget,
                             eps=epsilon, seed=seed)
    returned = sum(1 for r in rows if r["returned"])
    slopes = [r["envelope_slope"] for r in rows
              if isinstance(r["envelope_slope"], float)
              and math.isfinite(r["envelope_slope"])]
    print("directions: %d, budget: %d, seed: %d, epsilon: %g"
          % (directions, budget, seed, epsilon))
    print("returned within budget: %d of %d" % (returned, len(rows)))
    if slopes:
        print("mean envelope slope: %.4f" % (sum(slopes) / len(slopes)))

    os.makedirs(args.out, exist_ok=True)
    write_stats_csv(rows, os.path.join(args.out, "stats.csv"))
    print("wrote %s" % os.path.join(args.out, "stats.csv"))
    if args.svg and rows:
        traj = cover_trace(model, free_point(model), rows[0]["direction"],
                           budget=min(budget, 10 ** 4))
        _write(os.path.join(args.out, "trajectory.svg"), render_svg(traj))
    return 0


def cmd_plot(args) -> int:
    model, _, _ = _load(args)
    os.makedirs(args.out, exist_ok=True)
    _write(os.path.join(args.out, "model.svg"), render_svg(model))
    ms = unfold_model(model)
    _write(os.path.join(args.out, "surface.svg"), render_svg(ms))
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="windtree",
        description="rational billiards and periodic wind-tree models")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("model", help="model file")
        sp.add_argument("--out", default=".", metavar="DIR",
                        help="output directory (default: current)")

    sp = sub.add_parser("build", help="validate a model file and write a "
                        "normalized copy")
    common(sp)
    sp.add_argument("--svg", action="store_true", help="also write model.svg")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("unfold", help="report the unfolded translation "
                        "surface")
    common(sp)
    sp.add_argument("--svg", action="store_true",
                    help="also write surface.svg")
    sp.set_defaults(func=cmd_unfold)

    sp = sub.add_parser("certify", help="run the recurrence checks; exit 0 "
                        "only if all four pass")
    common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("simulate", help="run the direction battery and "
                        "write stats.csv")
    common(sp)
    sp.add_argument("--directions", type=int, default=None)
    sp.add_argument("--budget", type=int, default=None,
                    help="collision budget per direction")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--epsilon", default=None,
                    help="return-ball radius, rational like 1/2")
    sp.add_argument("--svg", action="store_true",
                    help="also write trajectory.svg for the first direction")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("plot", help="write model.svg and surface.svg")
    common(sp)
    sp.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as e:
        # every pipeline error carries a printable message; the CLI turns
        # it into a nonzero exit instead of a traceback
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
