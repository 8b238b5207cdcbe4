"""Command-line front end.

    confgeom eval SCENE --query "dist a b" [--query ...] [--eps E] [--json]
    confgeom bench [--sig 4,1] [--iters N] [--json]

Exit codes: 0 success, 1 usage error, 2 scene parse error, 3 geometric error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .bench import CrossCheckError, run_bench
from .errors import GeometryError
from .primitives import DEFAULT_EPS
from .query import QueryError, run_query
from .scene import DEGENERATE, SceneError, parse_scene

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_GEOMETRY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _signature(text: str) -> tuple[int, int]:
    try:
        p, q = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'p,q', got {text!r}") from None
    return p, q


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="confgeom", description="Conformal geometric algebra scene queries.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate queries against a scene file")
    ev.add_argument("scene", help="scene file, or - for stdin")
    ev.add_argument("--query", "-q", action="append", required=True,
                    help="query such as 'dist a b' (repeatable)")
    ev.add_argument("--eps", type=float, default=DEFAULT_EPS,
                    help="default tolerance for collinear/coplanar (default %(default)g)")
    ev.add_argument("--json", action="store_true", help="machine-readable output")

    bn = sub.add_parser("bench", help="time the multivector product kernel")
    bn.add_argument("--sig", type=_signature, action="append",
                    help="signature p,q (repeatable; default 3,1 and 4,1)")
    bn.add_argument("--iters", type=int, default=1_000_000)
    bn.add_argument("--seed", type=int, default=0)
    bn.add_argument("--json", action="store_true")
    return parser


def _eval(args) -> int:
    try:
        if args.scene == "-":
            text = sys.stdin.read()
        else:
            with open(args.scene, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"confgeom: cannot read scene: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        scene = parse_scene(text)
    except SceneError as exc:
        print(f"confgeom: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY if exc.code == DEGENERATE else EXIT_PARSE

    results = []
    status = EXIT_OK
    for query in args.query:
        try:
            results.append(run_query(scene, query, eps=args.eps))
        except QueryError as exc:
            print(f"confgeom: query {query!r}: {exc}", file=sys.stderr)
            status = EXIT_USAGE
        except GeometryError as exc:
            print(f"confgeom: query {query!r}: {exc}", file=sys.stderr)
            status = EXIT_GEOMETRY
        if status:
            break
    if args.json:
        print(json.dumps([r.data for r in results], indent=2))
    else:
        for r in results:
            print(r.text)
    return status


def _bench(args) -> int:
    sigs = args.sig or [(3, 1), (4, 1)]
    if args.iters < 0:
        print("confgeom: --iters must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    reports = []
    for p, q in sigs:
        try:
            report = run_bench(p, q, args.iters, seed=args.seed)
        except CrossCheckError as exc:
            print(f"confgeom: bench aborted: {exc}", file=sys.stderr)
            return EXIT_GEOMETRY
        except ValueError as exc:
            print(f"confgeom: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if report is not None:
            reports.append(report)
    if args.json:
        print(json.dumps([dataclasses.asdict(r) for r in reports], indent=2))
        return EXIT_OK
    for r in reports:
        print(f"{r.signature}: {r.iterations} products in {r.seconds:.3f} s "
              f"({r.products_per_second:.4g}/s); oracle {r.oracle_products_per_second:.4g}/s; "
              f"speedup {r.speedup:.1f}x; cross-check pass "
              f"({r.check_samples} samples, max rel err {r.check_max_error:.2g})")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "eval":
        return _eval(args)
    return _bench(args)


if __name__ == "__main__":
    sys.exit(main())
