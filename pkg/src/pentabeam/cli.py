"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 iteration did not converge,
3 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import experiments
from .assembly import MIN_UNKNOWNS, BeamProblem, BoundaryKind
from .experiments import verify_order
from .explicit_inverse import explicit_inverse
from .fixed_point import IterationConfig, iterate
from .norms import NORM_ORDERS, lipschitz, norm_label, norm_order, norm_report
from .oracle import MAX_ORDER
from .records import OutputRecord, dumps_csv, write_csv, write_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_CONVERGED = 2
EXIT_VERIFY_FAILED = 3

VERIFY_RTOL = 1e-9
PATH_AGREEMENT_RTOL = 1e-10
TABLE_CHOICES = ("1", "2", "3", "4", "5", "fig1", "fig23")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bc(text: str) -> BoundaryKind:
    try:
        return BoundaryKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _p(text: str) -> float:
    try:
        return norm_order(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pentabeam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="run the fixed-point iteration and write the solution")
    s.add_argument("--bc", type=_bc, required=True, help="cf or cc")
    s.add_argument("--n", type=int, required=True, help="number of unknowns (>= 5)")
    s.add_argument("--k", type=float, default=1.0, help="load constant K > 0")
    s.add_argument("--p", type=_p, default=math.inf, help="norm for the stopping rule: 1, 2 or inf")
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--max-iters", type=int, default=10_000)
    s.add_argument("--init", choices=("zeros", "ones"), default="zeros", help="initial guess")
    s.add_argument("--out", type=Path, help="solution CSV; the trace goes next to it with a .json suffix")

    v = sub.add_parser("verify", help="check the closed-form inverses against dense elimination")
    v.add_argument("--bc", type=_bc, required=True)
    v.add_argument("--n-min", type=int, default=MIN_UNKNOWNS)
    v.add_argument("--n-max", type=int, required=True)

    nm = sub.add_parser("norms", help="closed-form and brute-force norms of the inverse")
    nm.add_argument("--bc", type=_bc, required=True)
    nm.add_argument("--n", type=int, required=True)
    nm.add_argument("--k", type=float, default=1.0)
    nm.add_argument("--out", type=Path, help="write the report as CSV")

    t = sub.add_parser("tables", help="regenerate table or figure data as CSV")
    t.add_argument("which", choices=TABLE_CHOICES)
    t.add_argument("--out-dir", type=Path, default=Path("results"))
    return parser


def _check_n(n: int, flag: str = "--n") -> None:
    if n < MIN_UNKNOWNS:
        raise UsageError(f"{flag}: n must be ≥ {MIN_UNKNOWNS}, got {n}")


def cmd_solve(args) -> int:
    _check_n(args.n)
    if not args.k > 0:
        raise UsageError(f"--k: K must be > 0, got {args.k}")
    if not args.tol > 0:
        raise UsageError(f"--tol: must be > 0, got {args.tol}")
    if args.max_iters < 1:
        raise UsageError(f"--max-iters: must be >= 1, got {args.max_iters}")

    problem = BeamProblem(args.bc, args.n, args.k)
    config = IterationConfig(p=args.p, tol=args.tol, max_iters=args.max_iters, initial_guess=args.init)
    trace = iterate(problem, config)
    L, _ = lipschitz(problem, config.p)
    params = {
        "bc": problem.bc.value,
        "n": problem.n,
        "k": problem.K,
        "p": norm_label(config.p),
        "tol": config.tol,
        "max_iters": config.max_iters,
        "init": args.init,
    }
    record = OutputRecord(
        "solve",
        params,
        [{"i": i, "x": float(x), "u": float(u)} for i, (x, u) in enumerate(zip(problem.nodes, trace.solution), start=1)],
    )
    payload = {
        "bc": problem.bc.value,
        "n": problem.n,
        "k": problem.K,
        "p": norm_label(config.p),
        "tol": config.tol,
        "iterations": trace.iterations,
        "converged": trace.converged,
        "lipschitz": L,
        "observed_max_rate": trace.observed_max_rate,
        "diffs": trace.diffs.tolist(),
        "rates": trace.rates.tolist(),
    }
    if args.out is not None:
        write_csv(args.out, record)
        write_json(args.out.with_suffix(".json"), payload)
    status = "converged" if trace.converged else "did not converge"
    print(
        f"{status} after {trace.iterations} iterations; observed max rate {trace.observed_max_rate:.4f}; "
        f"L_{norm_label(config.p)} = {L:.4g}"
    )
    return EXIT_OK if trace.converged else EXIT_NOT_CONVERGED


def cmd_verify(args) -> int:
    _check_n(args.n_min, "--n-min")
    if args.n_max < args.n_min:
        raise UsageError(f"--n-max must be >= --n-min ({args.n_max} < {args.n_min})")
    if args.n_max > MAX_ORDER:
        raise UsageError(f"--n-max: the oracle is limited to n <= {MAX_ORDER}")

    failures = []
    for n in range(args.n_min, args.n_max + 1):
        r = verify_order(args.bc, n)
        worst = max(r["oracle_rel_error"], r["residual"], r.get("sm_oracle_rel_error", 0.0))
        ok = worst <= VERIFY_RTOL and r.get("sm_closed_rel_error", 0.0) <= PATH_AGREEMENT_RTOL
        line = f"{r['bc']} n={n:4d} max_rel_error={r['oracle_rel_error']:.3e} residual={r['residual']:.3e}"
        if "sm_closed_rel_error" in r:
            line += f" sm_vs_oracle={r['sm_oracle_rel_error']:.3e} sm_vs_closed={r['sm_closed_rel_error']:.3e}"
        print(line + ("" if ok else "  FAIL"))
        if not ok:
            failures.append((r["bc"], n))
    if failures:
        print("verification failed for: " + ", ".join(f"({bc}, {n})" for bc, n in failures), file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_norms(args) -> int:
    _check_n(args.n)
    if not args.k > 0:
        raise UsageError(f"--k: K must be > 0, got {args.k}")
    problem = BeamProblem(args.bc, args.n, args.k)
    inv = explicit_inverse(problem.bc, problem.n)
    rows = []
    for p in NORM_ORDERS:
        rep = norm_report(problem, p, inv)
        rows.append(
            {
                "p": norm_label(p),
                "exact_or_bound": rep.exact_or_bound,
                "brute_force": rep.brute_force,
                "is_exact": rep.is_exact,
                "lipschitz": rep.lipschitz,
                "guaranteed": rep.guaranteed,
            }
        )
    record = OutputRecord("norms", {"bc": problem.bc.value, "n": problem.n, "k": problem.K}, rows)
    if args.out is not None:
        write_csv(args.out, record)
    sys.stdout.write(dumps_csv(record))
    return EXIT_OK


def cmd_tables(args) -> int:
    which = args.which
    out_dir: Path = args.out_dir
    if which in experiments.RATE_TABLES:
        table = experiments.RATE_TABLES[which]
        record = OutputRecord(
            "tables",
            {"which": which, "bc": table.bc.value, "n": table.n, "tol": 1e-6, "init": "zeros"},
            experiments.rate_rows(table),
        )
        path = write_csv(out_dir / f"table{which}.csv", record)
    elif which == "5":
        record = OutputRecord("tables", {"which": which, "sizes": list(experiments.NORM_TABLE_SIZES)}, experiments.norm_rows())
        path = write_csv(out_dir / "table5.csv", record)
    elif which == "fig1":
        record = OutputRecord("tables", {"which": which, "n": 100, "k": 1.0, "p": "inf"}, experiments.solution_rows())
        path = write_csv(out_dir / "fig1.csv", record)
    else:
        sizes = experiments.GAP_STUDY_SIZES
        record = OutputRecord(
            "tables", {"which": which, "bc": "cc", "n_first": sizes[0], "n_last": sizes[-1], "n_step": 2}, experiments.gap_rows(sizes)
        )
        path = write_csv(out_dir / "fig23.csv", record)
    print(f"wrote {path} ({len(record.rows)} rows)")
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "verify": cmd_verify, "norms": cmd_norms, "tables": cmd_tables}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"pentabeam {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
