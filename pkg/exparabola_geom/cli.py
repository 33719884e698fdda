"""
Command-line front-end.

    exparabola max      --sides 1 1 1
    exparabola xfocal   --vertices 0 0 1 0 0 1 --x 1 1 1
    exparabola iterate  --in triangle.json --steps 40
    exparabola verify   --trials 1000 --seed 7
    exparabola render   --vertices 0 0 4 0 1 3 --figure focal --out focal.svg

Inputs come from flags, a JSON file (--in) or JSON on stdin. Reports are
JSON on stdout or in --out; logs go to stderr.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 numerical failure, 4 iteration cap exceeded.
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from exparabola_geom import __version__
from exparabola_geom.commands import (
    TriangleSpec,
    cmd_iterate,
    cmd_max,
    cmd_render,
    cmd_replay,
    cmd_verify,
    cmd_xfocal,
    parse_point,
)
from exparabola_geom.config import load_config
from exparabola_geom.errors import (
    GeometryError,
    InputSpecError,
    IterationCapError,
    NumericalError,
)
from exparabola_geom.render import FIGURES
from exparabola_geom.report import Report, dumps

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_ERROR = 3
EXIT_ITERATION_CAP = 4


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--in", dest="input", help="JSON input file (default: stdin)")
    parser.add_argument("--out", help="Write the report (render: the SVG) to this file")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false",
                     help="Compact JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true",
                     help="Indented JSON output")
    parser.set_defaults(pretty=False)
    parser.add_argument("--config", help="Configuration file (JSON)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")


def _add_triangle(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--vertices", nargs=6, type=float,
                       metavar=("XA", "YA", "XB", "YB", "XC", "YC"),
                       help="Triangle vertices")
    group.add_argument("--sides", nargs=3, type=float, metavar=("A", "B", "C"),
                       help="Side lengths a = |BC|, b = |CA|, c = |AB|")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exparabola",
        description="Exparabolas, focal triangles and their iteration.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("max", help="Max-exparabolas of a triangle")
    _add_common(p)
    _add_triangle(p)

    p = sub.add_parser("xfocal", help="Focal triangle with respect to a point X")
    _add_common(p)
    _add_triangle(p)
    p.add_argument("--x", nargs=3, metavar=("X0", "X1", "X2"),
                   help="Barycentric coordinates of X (homogeneous)")

    p = sub.add_parser("iterate", help="Iterated focal triangles and the limit hexagon")
    _add_common(p)
    _add_triangle(p)
    p.add_argument("--steps", type=int, default=None, help="Number of focal steps (default 10)")
    p.add_argument("--tol", type=float, default=None, help="Limit tolerance (default 1e-9)")
    p.add_argument("--base-point", nargs=3, metavar=("X0", "X1", "X2"),
                   help="Experimental: iterate with respect to this point instead of G")

    p = sub.add_parser("verify", help="Randomized invariant verification")
    _add_common(p)
    p.add_argument("--trials", type=int, default=None, help="Samples per invariant (default 1000)")
    p.add_argument("--seed", type=int, default=None, help="Random seed (default 0)")
    p.add_argument("--only", nargs="+", metavar="NAME", help="Run only these invariants")
    p.add_argument("--replay", help="Replay failing samples from a verify report or sample file")

    p = sub.add_parser("render", help="Render a figure as SVG")
    _add_common(p)
    _add_triangle(p)
    p.add_argument("--figure", choices=FIGURES, default="max", help="Figure to draw")
    p.add_argument("--t", type=float, default=None,
                   help="Parameter of the exparabola figure (default: middle max root)")
    p.add_argument("--steps", type=int, default=4, help="Panels of the sequence figure")
    return parser


def _read_json(path: Optional[str]) -> Any:
    try:
        if path is None:
            text = sys.stdin.read()
        else:
            with open(path, 'r', encoding='utf-8') as f:
                text = f.read()
    except OSError as e:
        raise InputSpecError(f"Cannot read input {path}: {e}") from e
    if not text.strip():
        return {}
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputSpecError(f"Input is not valid JSON: {e}") from e


def _document(args: argparse.Namespace) -> Dict[str, Any]:
    """JSON input document, read only when the flags do not already say everything."""
    has_triangle = getattr(args, "vertices", None) or getattr(args, "sides", None)
    needs_x = args.command == "xfocal" and args.x is None
    if has_triangle and not needs_x and args.input is None:
        return {}
    data = _read_json(args.input)
    if isinstance(data, list):
        return {"triangle": data}
    if not isinstance(data, dict):
        raise InputSpecError("JSON input must be an object or a list of vertices")
    return data


def _triangle_spec(args: argparse.Namespace, data: Dict[str, Any]) -> TriangleSpec:
    if args.vertices:
        v = args.vertices
        return TriangleSpec.from_vertices([v[0:2], v[2:4], v[4:6]])
    if args.sides:
        return TriangleSpec.from_sides(args.sides)
    if not data:
        raise InputSpecError("No triangle given: use --vertices, --sides, --in or stdin")
    return TriangleSpec.from_json(data.get("triangle", data))


def _emit(report: Report, args: argparse.Namespace, path: Optional[str]) -> None:
    text = dumps(report, pretty=args.pretty)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)


def _summarize(report: Report) -> None:
    """PASS/FAIL line on stderr, coloured on terminals unless NO_COLOR is set."""
    status = "PASS" if report.passed else "FAIL"
    failed = ", ".join(check.name for check in report.failures())
    line = f"{status}: {len(report.invariants)} invariants"
    if failed:
        line += f", failed: {failed}"
    if sys.stderr.isatty() and "NO_COLOR" not in os.environ:
        color = "\033[32m" if report.passed else "\033[31m"
        line = f"{color}{line}\033[0m"
    print(line, file=sys.stderr)


def run(args: argparse.Namespace) -> int:
    """Dispatch a parsed command line; exceptions propagate to main."""
    config = load_config(args.config)
    if args.command == "verify":
        config = config.updated(seed=args.seed, trials=args.trials)
        if args.replay:
            report = cmd_replay(_read_json(args.replay))
        else:
            report = cmd_verify(config.trials, config.seed, config, names=args.only)
        _emit(report, args, args.out)
        _summarize(report)
        return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED

    data = _document(args)
    spec = _triangle_spec(args, data)
    out = args.out

    if args.command == "max":
        report = cmd_max(spec)
    elif args.command == "xfocal":
        x = args.x if args.x is not None else data.get("x")
        if x is None:
            raise InputSpecError("xfocal needs a point: --x X0 X1 X2 or \"x\" in the input")
        report = cmd_xfocal(spec, parse_point(x))
    elif args.command == "iterate":
        config = config.updated(tol=args.tol)
        steps = args.steps if args.steps is not None else int(data.get("steps", 10))
        base = args.base_point if args.base_point is not None else data.get("base_point")
        report = cmd_iterate(spec, steps, config.tol, config,
                             base_point=parse_point(base) if base is not None else None)
    else:
        if out is None:
            raise InputSpecError("render needs --out FILE for the SVG")
        report = cmd_render(spec, args.figure, out, config, t=args.t, steps=args.steps)
        out = None

    _emit(report, args, out)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_INPUT_ERROR

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return run(args)
    except IterationCapError as e:
        logger.error("%s (steps=%d, last deviation=%.3g)", e, e.steps, e.last_deviation)
        return EXIT_ITERATION_CAP
    except NumericalError as e:
        logger.error("Numerical failure: %s", e)
        return EXIT_NUMERICAL_ERROR
    except (GeometryError, InputSpecError, OSError) as e:
        logger.error("%s", e)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
