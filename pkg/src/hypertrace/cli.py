"""Command-line front end.

Exit codes: 0 success / property holds, 1 property violated (trace found under
``--assert-free``, lemma violation, invalid covering, search budget hit),
2 usage or input-format error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bounds, constructions, coverings, extsearch, tracedetect
from .hypercore import HypergraphError, parse_hypergraph

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_pattern(text: str) -> tracedetect.PatternGraph:
    """``star:t``, ``k2t:t`` or ``file:<path>`` holding PatternGraph JSON."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "star":
            return tracedetect.star(int(arg))
        if kind == "k2t":
            return tracedetect.k2t(int(arg))
        if kind == "file":
            return tracedetect.PatternGraph.from_dict(json.loads(Path(arg).read_text()))
    except (ValueError, OSError) as exc:
        raise UsageError(f"bad pattern {text!r}: {exc}") from None
    raise UsageError(f"unknown pattern {text!r}; use star:t, k2t:t or file:<path>")


def _read_hypergraph(path: str):
    try:
        return parse_hypergraph(Path(path).read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except HypergraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(obj: dict, fmt: str, rows: Optional[list] = None) -> None:
    if fmt == "json":
        print(json.dumps(obj))
    elif rows is not None:
        for row in rows:
            print("\t".join("" if x is None else str(x) for x in row))
    else:
        for key, val in obj.items():
            print(f"{key}\t{json.dumps(val) if isinstance(val, (dict, list)) else val}")


def cmd_construct(args) -> int:
    if args.method == "fl":
        rep = constructions.fl_star_free(args.n, args.r, args.t)
    else:
        if args.covering:
            try:
                cov = coverings.CoveringDesign.from_dict(json.loads(Path(args.covering).read_text()))
            except (OSError, ValueError) as exc:
                raise UsageError(f"{args.covering}: {exc}") from None
        else:
            cov, optimal = constructions.star_free_covering(args.r, args.t)
            if not optimal:
                print("note: covering is not proven minimum", file=sys.stderr)
        rep = constructions.covering_star_free(args.n, args.r, args.t, cov)
    h = rep.hypergraph
    text = h.to_json()
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        _emit(h.to_dict(), args.format, [e for e in h.edges])
    if args.report:
        Path(args.report).write_text(rep.to_json() + "\n")
    else:
        print(rep.to_json(), file=sys.stderr)
    if args.verify and tracedetect.contains_star_trace(h, args.t) is not None:
        print("construction contains a star trace", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_check(args) -> int:
    h = _read_hypergraph(args.hypergraph)
    f = parse_pattern(args.pattern)
    t = f.star_size()
    if t is not None and args.method != "general":
        w = tracedetect.contains_star_trace(h, t)
    else:
        w = tracedetect.contains_trace(h, f)
    out = {"contains": w is not None, "witness": None if w is None else w.to_dict()}
    _emit(out, args.format)
    if args.assert_free and w is not None:
        print(f"trace found: {w.to_json()}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_covering_find(args) -> int:
    v, k, t, lam = args.v, args.k, args.t, args.lam
    try:
        if args.method == "sts":
            if (k, t, lam) != (3, 2, 1):
                raise UsageError("--method sts needs --k 3 --t 2 --lambda 1")
            d = coverings.steiner_triple_system(v)
        elif args.method == "turan":
            if k != v - 2 or lam != 1:
                raise UsageError("--method turan needs --k = --v - 2 and --lambda 1")
            d = coverings.turan_covering(v, t)
        elif args.method == "greedy":
            d = coverings.greedy_covering(v, k, t, lam)
        else:
            d = coverings.min_covering_exact(v, k, t, lam, budget=args.budget)
    except coverings.CoveringBudgetExhausted as exc:
        print(str(exc), file=sys.stderr)
        _emit(exc.best.to_dict(), args.format, [b for b in exc.best.blocks])
        return EXIT_VIOLATION
    except coverings.CoveringError as exc:
        raise UsageError(str(exc)) from None
    _emit(d.to_dict(), args.format, [b for b in d.blocks])
    return EXIT_OK


def cmd_covering_verify(args) -> int:
    try:
        d = coverings.CoveringDesign.from_dict(json.loads(Path(args.design).read_text()))
    except (OSError, ValueError) as exc:
        raise UsageError(f"{args.design}: {exc}") from None
    chk = coverings.verify_covering(d)
    _emit({"valid": chk.valid, "size": d.size, "uncovered": [list(s) for s in chk.uncovered]}, args.format)
    return EXIT_OK if chk.valid else EXIT_VIOLATION


def cmd_bounds_k2t(args) -> int:
    if args.t_min < 2 or args.t_max < args.t_min:
        raise UsageError("need 2 <= --t-min <= --t-max")
    rows = bounds.k2t_table(args.t_min, args.t_max, args.log_base)
    if args.format == "json":
        print(json.dumps([
            {"t": c.t, "new_coeff": c.new_coeff, "ls_coeff": c.ls_coeff, "ratio": c.ratio, "log_base": c.log_base}
            for c in rows
        ]))
    else:
        print("t\tnew_coeff\tls_coeff\tratio")
        for c in rows:
            ls = "" if c.ls_coeff is None else f"{c.ls_coeff:.10g}"
            ratio = "" if c.ratio is None else f"{c.ratio:.10g}"
            print(f"{c.t}\t{c.new_coeff:.10g}\t{ls}\t{ratio}")
    return EXIT_OK


def cmd_bounds_star(args) -> int:
    try:
        rep = bounds.bounds_report(args.n, args.r, args.t, args.cov_size)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(rep.to_dict(), args.format)
    return EXIT_OK


def cmd_search(args) -> int:
    f = parse_pattern(args.pattern)
    try:
        res = extsearch.exact_extremal(args.n, args.r, f, args.budget)
    except (extsearch.SearchGuardError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(res.to_dict(), args.format)
    return EXIT_OK if res.complete else EXIT_VIOLATION


def cmd_lemmas(args) -> int:
    if args.hypergraph:
        h = _read_hypergraph(args.hypergraph)
    elif args.random_n is not None:
        h = extsearch.random_maximal_trace_free(args.random_n, 3, tracedetect.k2t(args.t), args.seed)
    else:
        raise UsageError("give --hypergraph FILE or --random-n N")
    try:
        rep = extsearch.check_k2t_lemmas(h, args.t)
    except extsearch.TracePresentError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        _emit({"error": "trace present", "witness": exc.witness.to_dict()}, args.format)
        return EXIT_VIOLATION
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(rep.to_dict(), args.format)
    return EXIT_OK if rep.holds else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    def common(fmt: str = "json") -> argparse.ArgumentParser:
        # fresh per subcommand: argparse parents share action objects, defaults included
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--format", choices=["json", "tsv"], default=fmt)
        c.add_argument("--threads", type=int, default=1, help="accepted for compatibility; searches run single-threaded")
        return c

    p = argparse.ArgumentParser(prog="hypertrace", description="Trace-free hypergraph constructions and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common()], help="build a star-trace-free hypergraph")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--method", choices=["fl", "covering"], default="covering")
    c.add_argument("--covering", help="CoveringDesign JSON to delete from each component")
    c.add_argument("--output", help="write the hypergraph JSON here instead of stdout")
    c.add_argument("--report", help="write the construction report JSON here instead of stderr")
    c.add_argument("--verify", action="store_true", help="check the output is star-trace-free")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("check", parents=[common()], help="look for a pattern trace")
    c.add_argument("--hypergraph", required=True)
    c.add_argument("--pattern", required=True, help="star:t, k2t:t or file:<path>")
    c.add_argument("--assert-free", action="store_true", help="exit 1 when a trace is found")
    c.add_argument("--method", choices=["auto", "general"], default="auto")
    c.set_defaults(func=cmd_check)

    cov = sub.add_parser("covering", help="covering designs")
    csub = cov.add_subparsers(dest="action", required=True)
    c = csub.add_parser("find", parents=[common()])
    c.add_argument("--v", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--lambda", dest="lam", type=int, default=1)
    c.add_argument("--method", choices=["exact", "greedy", "sts", "turan"], default="exact")
    c.add_argument("--budget", type=int, default=5_000_000)
    c.set_defaults(func=cmd_covering_find)
    c = csub.add_parser("verify", parents=[common()])
    c.add_argument("--design", required=True)
    c.set_defaults(func=cmd_covering_verify)

    b = sub.add_parser("bounds", help="bound formulas")
    bsub = b.add_subparsers(dest="action", required=True)
    c = bsub.add_parser("k2t", parents=[common("tsv")])
    c.add_argument("--t-min", type=int, required=True)
    c.add_argument("--t-max", type=int, required=True)
    c.add_argument("--log-base", choices=["e", "2", "10"], default="e")
    c.set_defaults(func=cmd_bounds_k2t)
    c = bsub.add_parser("star", parents=[common()])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--cov-size", type=int)
    c.set_defaults(func=cmd_bounds_star)

    c = sub.add_parser("search", parents=[common()], help="exact extremal number by branch and bound")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--pattern", required=True)
    c.add_argument("--budget", type=int)
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("lemmas", parents=[common()], help="check the K_{2,t} co-degree inequalities")
    c.add_argument("--hypergraph")
    c.add_argument("--random-n", type=int, help="generate a random maximal Tr(K_{2,t})-free 3-graph")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--t", type=int, required=True)
    c.set_defaults(func=cmd_lemmas)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
