"""``pillowcase`` command line: ``twobridge``, ``torus`` and ``table``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import chain, report
from .errors import TracelessError
from .pert import PerturbationData, rho_image, rho_unreduced_image
from .table_data import TORUS_TABLE
from .torus import TorusKnot, nonlinearity, trace_zero_set, variety_paths
from .twobridge import TwoBridgeKnot, restriction_curve


def _circles(pert: PerturbationData, mode: str, samples: int):
    if mode == "reduced":
        return [rho_image(pert, samples)]
    return [rho_unreduced_image(1, pert, samples), rho_unreduced_image(2, pert, samples)]


def _write_svg(path: str, spec: report.RenderSpec) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        report.render_svg(spec, fh)


def _run_twobridge(args) -> int:
    k = TwoBridgeKnot(args.p, args.q)
    pert = PerturbationData(args.epsilon)
    rep = chain.summarize(k, pert, mode=args.mode, samples=args.samples)
    out = report.report_json(rep) if args.format == "json" else report.report_tsv(rep)
    sys.stdout.write(out)
    if args.svg:
        panel = report.pillowcase_panel([restriction_curve(k, args.samples)], _circles(pert, args.mode, args.samples),
                                        rep, title=str(k))
        _write_svg(args.svg, report.RenderSpec(panels=[panel]))
    return 0


def _run_torus(args) -> int:
    if (args.r is None) != (args.s is None):
        raise argparse.ArgumentTypeError("--r and --s must be given together")
    k = TorusKnot(args.p, args.q, args.r, args.s)
    pert = PerturbationData(args.epsilon)
    zs = trace_zero_set(k, args.grid)
    paths = variety_paths(k, args.grid, zs)
    rep = chain.summarize(k, pert, mode=args.mode, grid=args.grid, paths=paths)
    trace_lines = []
    trace_info = {}
    if args.trace:
        comps = []
        for comp, path in zip(zs.components, paths):
            comps.append({"kind": comp.kind, "points": len(comp.points), "nonlinearity": nonlinearity(path)})
        fibers = [[float(x), float(y)] for x, y in zs.fiber_points]
        junctions = [[float(x), float(y)] for x, y in zs.junctions]
        trace_info = {"polynomial": str(zs.polynomial.to_sympy().as_expr()), "components": comps,
                      "fibers": fibers, "junctions": junctions}
        trace_lines.append(f"polynomial={trace_info['polynomial']}")
        for i, c in enumerate(comps):
            trace_lines.append(f"component {i} kind={c['kind']} points={c['points']} "
                               f"nonlinearity={c['nonlinearity']:.3g}")
        for x, y in fibers:
            trace_lines.append(f"fiber over ({x:.12g}, {y:.12g})")
        for x, y in junctions:
            trace_lines.append(f"junction at ({x:.12g}, {y:.12g})")
    if args.format == "json":
        sys.stdout.write(report.report_json(rep, {"trace": trace_info} if args.trace else None))
    else:
        sys.stdout.write(report.report_tsv(rep, trace_lines))
    if args.svg:
        panels = []
        if args.trace:
            panels.append(report.zero_set_panel(zs, title=f"V {k}"))
        panels.append(report.pillowcase_panel(paths, _circles(pert, args.mode, 2048), rep, title=str(k)))
        _write_svg(args.svg, report.RenderSpec(panels=panels))
    return 0


def _run_table(args) -> int:
    if args.family == "torus":
        if args.max_pq is None:
            knots = [TorusKnot(r.p, r.q) for r in TORUS_TABLE]
        else:
            knots = chain.torus_knots_up_to(args.max_pq)
        rows = [chain.table_row(k) for k in knots]
    else:
        rows = [chain.two_bridge_row(k) for k in chain.two_bridge_knots_up_to(args.max_pq or 11)]
    sys.stdout.write(report.table_json(rows) if args.format == "json" else report.table_tsv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pillowcase", description="Traceless character varieties of knots.")
    sub = parser.add_subparsers(dest="command", required=True)

    tb = sub.add_parser("twobridge", help="generators for a 2-bridge knot K(p/q)")
    tb.add_argument("-p", type=int, required=True)
    tb.add_argument("-q", type=int, required=True)
    tb.add_argument("--epsilon", type=float, default=0.1)
    tb.add_argument("--mode", choices=("reduced", "unreduced"), default="reduced")
    tb.add_argument("--format", choices=("tsv", "json"), default="tsv")
    tb.add_argument("--svg", metavar="PATH")
    tb.add_argument("--samples", type=int, default=2048)
    tb.set_defaults(run=_run_twobridge)

    to = sub.add_parser("torus", help="generators for a torus knot T(p,q)")
    to.add_argument("-p", type=int, required=True)
    to.add_argument("-q", type=int, required=True)
    to.add_argument("--r", type=int)
    to.add_argument("--s", type=int)
    to.add_argument("--epsilon", type=float, default=0.1)
    to.add_argument("--mode", choices=("reduced", "unreduced"), default="reduced")
    to.add_argument("--grid", type=int, default=512)
    to.add_argument("--trace", action="store_true", help="also describe the traced zero set")
    to.add_argument("--format", choices=("tsv", "json"), default="tsv")
    to.add_argument("--svg", metavar="PATH")
    to.set_defaults(run=_run_torus)

    ta = sub.add_parser("table", help="invariants and rank bounds for a family of knots")
    ta.add_argument("--family", choices=("torus", "twobridge"), default="torus")
    ta.add_argument("--max-pq", type=int, dest="max_pq")
    ta.add_argument("--format", choices=("tsv", "json"), default="tsv")
    ta.set_defaults(run=_run_table)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except argparse.ArgumentTypeError as exc:
        print(f"pillowcase: error: {exc}", file=sys.stderr)
        return 2
    except TracelessError as exc:
        print(f"pillowcase: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
