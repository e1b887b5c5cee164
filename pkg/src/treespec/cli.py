"""Command-line front end: ``treespec <subcommand> [options] [FILE]``.

Exit status: 0 success, 1 violation found (verify-theorem), 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import eigen, verify
from .enumeration import MAX_N, TreeStream
from .poly import as_rational
from .tree import Tree, TreeError, find_subdivided_edges, parse_tree

SCHEMA = eigen.SCHEMA


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3 or -7/2: {exc}") from None


def _read_tree(path: str) -> Tree:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_tree(text)


def _dump(obj: object) -> str:
    return json.dumps(obj, indent=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treespec", description="Exact spectral tools for trees.")
    parser.add_argument("--seed", type=int, default=0, help="seed for any randomized step")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("input", nargs="?", default="-", help="edge-list file (default: stdin)")
        return p

    with_input(sub.add_parser("charpoly", help="characteristic polynomial as JSON"))
    with_input(sub.add_parser("spectrum", help="spectrum report as JSON"))
    with_input(sub.add_parser("is-integral", help="spectrum report as JSON"))
    with_input(sub.add_parser("subdivided", help="maximal subdivided edges as JSON"))

    p = with_input(sub.add_parser("count", help="eigenvalues in an open interval"))
    p.add_argument("--from", dest="lo", type=_rational, required=True)
    p.add_argument("--to", dest="hi", type=_rational, required=True)
    p.add_argument("--distinct", action="store_true", help="count distinct eigenvalues")

    p = with_input(sub.add_parser("trace", help="sign dynamics along a subdivided edge"))
    p.add_argument("--edge", type=int, default=0, help="index into the subdivided-edge list (default: longest)")
    p.add_argument("--reverse", action="store_true", help="root at the other endpoint")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify-theorem", help="exhaustive check of the subdivided-edge theorem")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--k", type=int, default=7)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checkpoint", default=None, help="JSON checkpoint file to resume from and update")

    p = sub.add_parser("search-integral", help="all integral trees up to a size")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("enumerate", help="non-isomorphic trees as one-line edge-list records")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min-subdivided", type=int, default=None)
    return parser


def _check_range(name: str, value: int, lo: int, hi: int = MAX_N) -> None:
    if not lo <= value <= hi:
        raise UsageError(f"{name} must lie in {lo}..{hi}, got {value}")


def run(args: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    random.seed(args.seed)
    cmd = args.command
    if cmd == "charpoly":
        t = _read_tree(args.input)
        phi = eigen.char_poly(t)
        out.write(_dump({"schema": SCHEMA, "n": t.n, "char_poly": phi.to_json(), "text": str(phi)}) + "\n")
    elif cmd in ("spectrum", "is-integral"):
        t = _read_tree(args.input)
        out.write(_dump(eigen.spectrum_report(t).to_json()) + "\n")
    elif cmd == "count":
        t = _read_tree(args.input)
        if args.lo >= args.hi:
            raise UsageError("--from must be smaller than --to")
        mode = "distinct" if args.distinct else "with_multiplicity"
        out.write(f"{eigen.count_eigs_interval(t, args.lo, args.hi, mode)}\n")
    elif cmd == "subdivided":
        t = _read_tree(args.input)
        edges = [e.to_json() for e in find_subdivided_edges(t)]
        out.write(_dump({"schema": SCHEMA, "n": t.n, "subdivided_edges": edges}) + "\n")
    elif cmd == "trace":
        t = _read_tree(args.input)
        edges = find_subdivided_edges(t)
        if not 0 <= args.edge < len(edges):
            raise UsageError(f"--edge must lie in 0..{len(edges) - 1}")
        edge = edges[args.edge].reversed() if args.reverse else edges[args.edge]
        trace = verify.trace_sign_dynamics(t, edge)
        out.write(trace.to_csv() if args.format == "csv" else _dump(trace.to_json()) + "\n")
    elif cmd == "verify-theorem":
        _check_range("--k", args.k, 2)
        _check_range("--max-n", args.max_n, 1)
        _check_range("--jobs", args.jobs, 1, 256)
        rep = verify.verify_theorem(args.max_n, args.k, jobs=args.jobs, checkpoint_path=args.checkpoint)
        out.write(_dump(rep.to_json()) + "\n")
        return 0 if rep.ok else 1
    elif cmd == "search-integral":
        _check_range("--max-n", args.max_n, 1)
        _check_range("--jobs", args.jobs, 1, 256)
        found = verify.search_integral_trees(args.max_n, jobs=args.jobs)
        body = [{"tree": t.to_record(), "report": rep.to_json()} for t, rep in found]
        out.write(_dump({"schema": SCHEMA, "max_n": args.max_n, "integral_trees": body}) + "\n")
    elif cmd == "enumerate":
        _check_range("--n", args.n, 1)
        if args.min_subdivided is not None:
            _check_range("--min-subdivided", args.min_subdivided, 2, 10**6)
        for t in TreeStream(args.n, min_subdivided=args.min_subdivided):
            out.write(t.to_record() + "\n")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (UsageError, TreeError, ValueError) as exc:
        print(f"treespec: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
