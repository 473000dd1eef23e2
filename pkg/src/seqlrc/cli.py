"""Command-line front end: ``seqlrc build|analyze|verify|recover|classify|tables|ratecmp``.

Data goes to stdout, diagnostics to stderr; the exit status is the failure
channel (2 parse, 3 construction, 4 budget, 5 pattern shape, 6 table mismatch).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import expr, recovery, report, slrc
from .errors import BudgetExceeded, ExpressionError, SlrcError

EXIT_PARSE = 2
EXIT_BUILD = 3
EXIT_BUDGET = 4
EXIT_SHAPE = 5
EXIT_MISMATCH = 6


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _code(text: str):
    try:
        node = expr.parse(text)
    except ExpressionError as exc:
        raise _Fail(EXIT_PARSE, exc.caret()) from exc
    try:
        return expr.build(node)
    except (SlrcError, ValueError) as exc:
        raise _Fail(EXIT_BUILD, f"cannot build {text!r}: {exc}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_build(args) -> int:
    code = _code(args.expr)
    dist = code.min_distance()
    suffix = "" if dist.exact else "  (d is a lower bound)"
    print(f"[{code.n}, {code.k}, {dist.d}]{suffix}")
    if args.out:
        Path(args.out).write_text(code.generator.dumps() + "\n", encoding="utf-8")
    return 0


def cmd_analyze(args) -> int:
    code = _code(args.expr)
    try:
        rep = slrc.analyze(
            code, r=args.r, exact_a=args.exact_a, dual_budget=args.dual_budget,
            verify_budget=args.verify_budget,
        )
    except BudgetExceeded as exc:
        raise _Fail(EXIT_BUDGET, str(exc)) from exc
    except SlrcError as exc:
        raise _Fail(EXIT_BUILD, str(exc)) from exc
    print(_dump(rep))
    return 0


def cmd_verify(args) -> int:
    code = _code(args.expr)
    r = args.r if args.r is not None else slrc.locality(code)
    try:
        res = slrc.verify_slrc_exhaustive(code, r, args.t, budget=args.budget)
    except BudgetExceeded as exc:
        raise _Fail(EXIT_BUDGET, str(exc)) from exc
    if res.ok:
        print(f"ok ({res.checked} patterns, r={r}, t={args.t})")
        return 0
    print(f"fail {list(res.witness)}")
    return 1


def cmd_recover(args) -> int:
    code = _code(args.expr)
    try:
        obj = json.loads(Path(args.pattern).read_text(encoding="utf-8"))
        pattern, shape = recovery.ErasurePattern.from_json(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise _Fail(EXIT_SHAPE, f"bad pattern file: {exc}") from exc
    grid = code if isinstance(code, slrc.ProductCode) else slrc.ProductCode([code])
    if tuple(shape) != tuple(grid.shape):
        raise _Fail(EXIT_SHAPE, f"pattern shape {tuple(shape)} does not match code shape {grid.shape}")
    rng = np.random.default_rng(args.seed)
    x = code.encode(rng.integers(0, code.q, code.k))
    word = recovery.erase(x, pattern)
    if args.engine == "lines":
        out, trace = recovery.recover_lines(grid, word)
    else:
        r = args.r if args.r is not None else slrc.locality(code)
        out, trace = recovery.recover_generic(code, word, r)
    if not trace.is_sequentially_valid():
        raise AssertionError("trace uses symbols before they are known")
    for i, v in enumerate(out.values):
        if v is not None and v != int(x[i]):
            raise AssertionError(f"coordinate {i} recovered incorrectly")
    print("full" if trace.status == "full" else f"partial {len(trace.residual)}")
    if args.trace:
        Path(args.trace).write_text(_dump(trace.to_json(shape)) + "\n", encoding="utf-8")
    if args.plot:
        from .plotting import plot_pattern

        plot_pattern(shape, pattern, args.plot, trace)
    return 0


def cmd_classify(args) -> int:
    try:
        if args.mu is not None:
            reg = recovery.classify_regime(args.n, args.k, args.d, args.ell, args.mu)
            print(f"{reg.value} {reg.name}")
            return 0
        total = args.n**args.ell
        recovery.classify_regime(args.n, args.k, args.d, args.ell, 0)
    except SlrcError as exc:
        raise _Fail(EXIT_BUILD, str(exc)) from exc
    start = 0
    cur = None
    for mu in range(total + 1):
        reg = recovery.classify_regime(args.n, args.k, args.d, args.ell, mu)
        if reg is not cur:
            if cur is not None:
                print(f"{cur.value} {cur.name} {start}-{mu - 1}")
            cur, start = reg, mu
    print(f"{cur.value} {cur.name} {start}-{total}")
    return 0


def _catalog_tables(which: str) -> list[int]:
    if which == "all":
        return list(report.CATALOG_TABLES)
    w = int(which)
    return [w] if w in report.CATALOG_TABLES else []


def _rates(r: int, tmax: int, plot: str | None):
    rows = report.rate_table(r, tmax)
    if plot:
        from .plotting import plot_rates

        plot_rates(rows, r, plot)
    return rows, report.rate_mismatches(rows)


def cmd_tables(args) -> int:
    tables = _catalog_tables(args.which)
    want_rates = args.which in ("5", "6", "all")
    bad: list[str] = []
    entries = []
    if tables:
        entries = report.build_catalog(tables, dual_budget=args.dual_budget)
        for e in entries:
            if not e.match:
                why = e.error or "; ".join(e.mismatches)
                bad.append(f"table {e.table} {e.construction}: {why}")
        if args.plot:
            from .plotting import plot_catalog

            plot_catalog(entries, args.plot)
    rows = []
    if want_rates:
        rows, rate_bad = _rates(2, 10, None if tables else args.plot)
        bad += [f"rates {m}" for m in rate_bad]
    if tables and want_rates and args.format == "json":
        sys.stdout.write(_dump({
            "catalog": [e.to_json() for e in entries],
            "rates": [r.to_json() for r in rows],
        }) + "\n")
    else:
        chunks = []
        if tables:
            chunks.append(report.emit(entries, args.format))
        if want_rates:
            chunks.append(report.emit_rates(rows, args.format))
        sys.stdout.write("\n".join(chunks))
    for line in bad:
        print(f"mismatch: {line}", file=sys.stderr)
    return EXIT_MISMATCH if bad else 0


def cmd_ratecmp(args) -> int:
    rows, bad = _rates(args.r, args.tmax, args.plot)
    sys.stdout.write(report.emit_rates(rows, args.format))
    for line in bad:
        print(f"mismatch: {line}", file=sys.stderr)
    return EXIT_MISMATCH if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="seqlrc", description=__doc__.splitlines()[0])
    p.add_argument("--distance-budget", type=int, default=None,
                   help="max messages enumerated for exact distance (env SLRC_BUDGET_OPS)")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a code and print [n, k, d]")
    b.add_argument("expr")
    b.add_argument("--out", help="write the generator matrix as JSON")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="SLRC parameter report as JSON")
    a.add_argument("expr")
    a.add_argument("--r", type=int, default=None, help="locality to analyze at")
    a.add_argument("--exact-a", action="store_true", help="fail unless alternativity is enumerated")
    a.add_argument("--dual-budget", type=int, default=slrc.DEFAULT_DUAL_BUDGET)
    a.add_argument("--verify-budget", type=int, default=slrc.DEFAULT_SUBSET_BUDGET)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="exhaustive sequential-recovery check")
    v.add_argument("expr")
    v.add_argument("--r", type=int, default=None)
    v.add_argument("--t", type=int, required=True)
    v.add_argument("--budget", type=int, default=slrc.DEFAULT_SUBSET_BUDGET)
    v.set_defaults(func=cmd_verify)

    rc = sub.add_parser("recover", help="erase a random codeword and repair it")
    rc.add_argument("expr")
    rc.add_argument("--pattern", required=True, help='JSON {"shape": [...], "erased": [[...], ...]}')
    rc.add_argument("--engine", choices=("lines", "generic"), default="lines")
    rc.add_argument("--r", type=int, default=None, help="locality for the generic engine")
    rc.add_argument("--trace", help="write the repair trace as JSON")
    rc.add_argument("--plot", help="write a PNG of the grid coloured by repair round")
    rc.add_argument("--seed", type=int, default=0)
    rc.set_defaults(func=cmd_recover)

    c = sub.add_parser("classify", help="erasure regime for l-fold products of an [n, k, d] code")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--mu", type=int, default=None, help="erasure count; omit to list all ranges")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("tables", help="rebuild the published catalogs and rate table")
    t.add_argument("--which", choices=("1", "2", "3", "4", "5", "6", "all"), default="all")
    t.add_argument("--format", choices=report.FORMATS, default="markdown")
    t.add_argument("--dual-budget", type=int, default=report.DEFAULT_CATALOG_DUAL_BUDGET)
    t.add_argument("--plot", help="write a PNG chart")
    t.set_defaults(func=cmd_tables)

    rt = sub.add_parser("ratecmp", help="rate comparison against r/(r+t) and (r/(r+1))^t")
    rt.add_argument("--r", type=int, default=2)
    rt.add_argument("--tmax", type=int, default=10)
    rt.add_argument("--format", choices=report.FORMATS, default="markdown")
    rt.add_argument("--plot", help="write a PNG chart")
    rt.set_defaults(func=cmd_ratecmp)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.distance_budget is not None:
        os.environ["SLRC_BUDGET_OPS"] = str(args.distance_budget)
    try:
        return args.func(args)
    except _Fail as exc:
        print(exc, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
