"""Relative gap between the clamped-clamped inverse norms and the sharp bound on even n.

Prints a short summary and, with --out, writes the rows as CSV.  The 2-norm gap
is compared with the continuum limit beta^4/384 - 1, where beta is the first
positive root of cos(beta) cosh(beta) = 1.
"""

import argparse
import math
from pathlib import Path

from scipy.optimize import brentq

from pentabeam.experiments import gap_rows
from pentabeam.records import OutputRecord, write_csv


def continuum_gap() -> float:
    beta = brentq(lambda b: math.cos(b) * math.cosh(b) - 1, 4.0, 5.0)
    return beta**4 / 384 - 1


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=10)
    ap.add_argument("--n-max", type=int, default=1000)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    sizes = range(args.n_min + args.n_min % 2, args.n_max + 1, 2)
    rows = gap_rows(sizes)
    for p in ("1", "2"):
        sel = [r for r in rows if r["p"] == p]
        first, last = sel[0], sel[-1]
        print(f"p={p}: n={first['n']} gap={first['relative_error']:.3e}  n={last['n']} gap={last['relative_error']:.6e}")
    print(f"continuum 2-norm gap: {continuum_gap():.6e}")
    if args.out:
        write_csv(args.out, OutputRecord("gap_study", {"n_min": sizes[0], "n_max": sizes[-1]}, rows))


if __name__ == "__main__":
    main()
