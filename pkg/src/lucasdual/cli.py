"""Command-line front end.

Subcommands: term, dual, entry, verify, fib-cases, census, bias,
import-factors. All numeric output is exact; rationals print as num/den.
Exit codes: 0 success, 1 at least one VIOLATED verification result,
2 usage errors, 3 I/O errors (unreadable or malformed files).

The LUCASDUAL_CACHE_DIR environment variable, when set, selects a
directory for the entry-point census cache.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from math import gcd

from .arith import DEFAULT_RHO_ITERATIONS, factorize
from .bias import (
    FactorTableError,
    bias_table,
    census_build,
    export_bias_csv,
    import_factor_table,
)
from .congruence import (
    verify_cor_lift,
    verify_cor_modn,
    verify_cor_mult,
    verify_fib_cases,
    verify_thm_mu,
    verify_thm_mv,
)
from .dual import dual_u, dual_v
from .grids import VERIFY_PRIMES, constructible_grid
from .lucas import LucasParams, entry_point, u_term, v_term
from .reports import Status

CACHE_DIR_ENV = "LUCASDUAL_CACHE_DIR"

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _add_params_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-P", type=int, required=True, help="first Lucas parameter")
    parser.add_argument("-Q", type=int, required=True, help="second Lucas parameter")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lucasdual",
        description="Exact Lucas-sequence duals, entry points, and congruence checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_term = sub.add_parser("term", help="print U_n or V_n")
    _add_params_flags(p_term)
    p_term.add_argument("--kind", choices=("U", "V"), default="U")
    p_term.add_argument("-n", type=int, required=True)

    p_dual = sub.add_parser("dual", help="print the Mobius dual M^U_n or M^V_n")
    _add_params_flags(p_dual)
    p_dual.add_argument("--kind", choices=("U", "V"), default="U")
    p_dual.add_argument("-n", type=int, required=True)

    p_entry = sub.add_parser("entry", help="print the entry point of a prime")
    _add_params_flags(p_entry)
    p_entry.add_argument("-p", type=int, required=True, help="prime")

    p_verify = sub.add_parser("verify", help="run congruence verifiers")
    p_verify.add_argument("--all", action="store_true", help="full default grid")
    p_verify.add_argument(
        "--statement",
        choices=("thm-mu", "thm-mv", "cor-modn", "cor-lift", "cor-mult"),
        help="single statement (requires -P/-Q and indices)",
    )
    p_verify.add_argument("-P", type=int)
    p_verify.add_argument("-Q", type=int)
    p_verify.add_argument("-p", type=int, help="prime (thm-mu, thm-mv, cor-lift)")
    p_verify.add_argument("-n", type=int, help="index")
    p_verify.add_argument("--xmax", type=int, default=50, help="index bound for --all")
    p_verify.add_argument("--kmax", type=int, default=4)
    p_verify.add_argument("--budget", type=int, default=DEFAULT_RHO_ITERATIONS)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--format", choices=("text", "csv"), default="text")

    p_fib = sub.add_parser("fib-cases", help="Fibonacci characteristic-factor cases")
    p_fib.add_argument("--case", choices=("a", "b", "c", "d", "e"), required=True)
    p_fib.add_argument("--nmax", type=int, default=1000)
    p_fib.add_argument("--budget", type=int, default=DEFAULT_RHO_ITERATIONS)
    p_fib.add_argument("--table", help="factor table file for U(1,-1)")
    p_fib.add_argument("--format", choices=("text", "csv"), default="text")

    p_census = sub.add_parser("census", help="entry points of all primes up to a bound")
    _add_params_flags(p_census)
    p_census.add_argument("--limit", type=int, required=True)
    p_census.add_argument("--jobs", type=int, default=1)
    p_census.add_argument("--out", help="write CSV here instead of stdout")
    p_census.add_argument("--format", choices=("text", "csv"), default="text")

    p_bias = sub.add_parser("bias", help="cumulative entry-point bias table")
    _add_params_flags(p_bias)
    p_bias.add_argument("--xmax", type=int, required=True)
    p_bias.add_argument("--budget", type=int, default=DEFAULT_RHO_ITERATIONS)
    p_bias.add_argument("--table", help="factor table file")
    p_bias.add_argument("--out", help="write CSV here instead of stdout")

    p_import = sub.add_parser("import-factors", help="validate a factor table file")
    _add_params_flags(p_import)
    p_import.add_argument("--table", required=True)

    return parser


def _params_or_usage(parser: argparse.ArgumentParser, P, Q) -> LucasParams:
    if P is None or Q is None:
        parser.error("-P and -Q are required")
    try:
        return LucasParams(P, Q)
    except ValueError as exc:
        parser.error(str(exc))


_GRID_VERIFIERS = {
    "thm-mu": verify_thm_mu,
    "thm-mv": verify_thm_mv,
    "cor-lift": verify_cor_lift,
}


def _verify_cell(cell) -> list:
    kind, P, Q, rest = cell
    params = LucasParams(P, Q)
    if kind in _GRID_VERIFIERS:
        p, n, kmax = rest
        return _GRID_VERIFIERS[kind](params, p, n, kmax)
    if kind == "cor-modn":
        (n,) = rest
        return [verify_cor_modn(params, n)]
    if kind == "cor-mult":
        n, budget = rest
        return [verify_cor_mult(params, n, budget)]
    raise ValueError(f"unknown grid cell kind {kind!r}")


def _grid_cells(xmax: int, kmax: int, budget: int) -> list:
    cells = []
    for params in constructible_grid():
        P, Q = params.P, params.Q
        for p in VERIFY_PRIMES:
            for n in range(1, xmax + 1):
                if gcd(p, n) != 1:
                    continue
                for kind in ("thm-mu", "thm-mv", "cor-lift"):
                    cells.append((kind, P, Q, (p, n, kmax)))
        for n in range(2, xmax + 1):
            if len(factorize(n).primes()) >= 2:
                cells.append(("cor-modn", P, Q, (n,)))
        if params.regular:
            for n in range(2, xmax + 1):
                cells.append(("cor-mult", P, Q, (n, budget)))
    return cells


def _run_cells(cells, jobs: int) -> list:
    reports = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for batch in pool.map(_verify_cell, cells, chunksize=16):
                reports.extend(batch)
    else:
        for cell in cells:
            reports.extend(_verify_cell(cell))
    return reports


def _emit_reports(reports, fmt: str) -> int:
    violated = [r for r in reports if r.status is Status.VIOLATED]
    if fmt == "csv":
        for report in reports:
            print(report.to_line())
    else:
        counts: dict[str, int] = {}
        for report in reports:
            counts[report.status.name] = counts.get(report.status.name, 0) + 1
        summary = ", ".join(f"{name}={counts[name]}" for name in sorted(counts))
        print(f"{len(reports)} reports: {summary}")
        for report in violated:
            print(report.to_line())
    return EXIT_VIOLATED if violated else EXIT_OK


def _cmd_verify(parser, args) -> int:
    if args.all:
        cells = _grid_cells(args.xmax, args.kmax, args.budget)
        reports = _run_cells(cells, args.jobs)
        return _emit_reports(reports, args.format)
    if not args.statement:
        parser.error("verify needs --all or --statement")
    params = _params_or_usage(parser, args.P, args.Q)
    if args.statement in _GRID_VERIFIERS:
        if args.p is None or args.n is None:
            parser.error(f"--statement {args.statement} needs -p and -n")
        reports = _GRID_VERIFIERS[args.statement](params, args.p, args.n, args.kmax)
    elif args.statement == "cor-modn":
        if args.n is None:
            parser.error("--statement cor-modn needs -n")
        reports = [verify_cor_modn(params, args.n)]
    else:
        if args.n is None:
            parser.error("--statement cor-mult needs -n")
        reports = [verify_cor_mult(params, args.n, args.budget)]
    for report in reports:
        print(report.to_line())
    return EXIT_VIOLATED if any(r.status is Status.VIOLATED for r in reports) else EXIT_OK


def _cmd_fib_cases(args) -> int:
    table = None
    if args.table:
        table = import_factor_table(args.table, LucasParams(1, -1))
    reports = verify_fib_cases(args.case, nmax=args.nmax, budget=args.budget, table=table)
    return _emit_reports(reports, args.format)


def _cmd_census(args, params: LucasParams) -> int:
    census = census_build(
        params, args.limit, jobs=args.jobs, cache_dir=os.environ.get(CACHE_DIR_ENV)
    )
    lines = [
        f"{p},{z.value if z.finite else 'inf'}" for p, z in sorted(census.records.items())
    ]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write("p,z\n")
            handle.writelines(line + "\n" for line in lines)
        return EXIT_OK
    if args.format == "csv":
        print("p,z")
        for line in lines:
            print(line)
    else:
        for line in lines:
            p, z = line.split(",")
            print(f"{p} {z}")
    return EXIT_OK


def _cmd_bias(args, params: LucasParams) -> int:
    table = None
    if args.table:
        table = import_factor_table(args.table, params)
    rows = bias_table(params, args.xmax, budget=args.budget, table=table)
    if args.out:
        export_bias_csv(rows, args.out)
        return EXIT_OK
    print("n,count_r,count_n,exact")
    for row in rows:
        flag = "true" if row.exact else "false"
        print(f"{row.n},{row.count_r},{row.count_n},{flag}")
    return EXIT_OK


def _cmd_import_factors(args, params: LucasParams) -> int:
    table = import_factor_table(args.table, params)
    complete = sum(1 for entry in table.entries.values() if entry.complete)
    print(f"{len(table.entries)} entries ({complete} complete) from {args.table}")
    return EXIT_OK


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "term":
            params = _params_or_usage(parser, args.P, args.Q)
            term = u_term if args.kind == "U" else v_term
            print(term(params, args.n))
            return EXIT_OK
        if args.command == "dual":
            params = _params_or_usage(parser, args.P, args.Q)
            value = dual_u(params, args.n) if args.kind == "U" else dual_v(params, args.n)
            print(value)
            return EXIT_OK
        if args.command == "entry":
            params = _params_or_usage(parser, args.P, args.Q)
            print(entry_point(params, args.p))
            return EXIT_OK
        if args.command == "verify":
            return _cmd_verify(parser, args)
        if args.command == "fib-cases":
            return _cmd_fib_cases(args)
        if args.command == "census":
            return _cmd_census(args, _params_or_usage(parser, args.P, args.Q))
        if args.command == "bias":
            return _cmd_bias(args, _params_or_usage(parser, args.P, args.Q))
        if args.command == "import-factors":
            return _cmd_import_factors(args, _params_or_usage(parser, args.P, args.Q))
        parser.error(f"unknown command {args.command!r}")
    except (FactorTableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        parser.error(str(exc))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
