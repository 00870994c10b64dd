"""Command-line entry point.

Exit codes: 0 computed, 2 input error, 3 order or search budget exhausted.
"""
from __future__ import annotations

import argparse
import sys

from .errors import BudgetError, CRJetError
from .problem import emit, load_problem, parse_int_list, parse_multi_indices, run


def _parser():
    p = argparse.ArgumentParser(prog="crjet", description="Exact jet computations for CR structures.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("file")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("check", help="nondegeneracy and CR-regularity report")
    common(c)
    c.add_argument("--k", type=int, default=None, help="search depth k_max (overrides the file)")
    c.add_argument("--workers", type=int, default=None, help="processes for determinant enumeration")

    m = sub.add_parser("multiplier", help="one multiplier determinant")
    common(m)
    m.add_argument("--alphas", required=True, help="multi-indices, e.g. '0;1' or '0,0;1,0;2,0'")
    m.add_argument("--r", required=True, help="characteristic form indices, e.g. '1,1'")

    l = sub.add_parser("lieder", help="iterated Lie derivative of a characteristic form")
    common(l)
    l.add_argument("--alpha", required=True)
    l.add_argument("--j", type=int, default=1)

    s = sub.add_parser("symbol", help="symbol composition or parametrix")
    s.add_argument("action", choices=("compose", "parametrix"))
    common(s)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--side", choices=("left", "right"), default="left")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if args.command == "check":
            spec = load_problem(args.file, k_max=args.k)
            report = run(spec, "check", workers=args.workers)
        elif args.command == "multiplier":
            spec = load_problem(args.file)
            report = run(spec, "multiplier", alphas=parse_multi_indices(args.alphas, spec.n), r=parse_int_list(args.r))
        elif args.command == "lieder":
            spec = load_problem(args.file)
            alpha = parse_multi_indices(args.alpha, spec.n)[0]
            report = run(spec, "lieder", alpha=alpha, j=args.j)
        else:
            spec = load_problem(args.file)
            report = run(spec, args.action, depth=args.depth, side=args.side)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (CRJetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(report, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
