"""Drivers that regenerate the convergence-rate tables, the norm table and the figure data."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .assembly import CC, CF, BeamProblem, BoundaryKind, assemble
from .explicit_inverse import cc_inverse, explicit_inverse
from .fixed_point import IterationConfig, iterate
from .norms import NORM_ORDERS, brute_force_norm, cc_norm_bound, lipschitz, norm_label
from .oracle import dense_invert


@dataclass(frozen=True)
class RateTable:
    bc: BoundaryKind
    n: int
    loads: tuple[float, ...]


RATE_TABLES = {
    "1": RateTable(CF, 50, (1 / 8, 1.0, 8.0)),
    "2": RateTable(CF, 99, (1 / 8, 1.0, 8.0)),
    "3": RateTable(CC, 49, (1 / 8, 1.0, 8.0, 32.0, 128.0)),
    "4": RateTable(CC, 100, (1 / 8, 1.0, 8.0, 32.0, 128.0)),
}
NORM_TABLE_SIZES = (49, 50, 99, 100, 150)
GAP_STUDY_SIZES = tuple(range(10, 1001, 2))


def rate_rows(table: RateTable, config: IterationConfig | None = None) -> list[dict]:
    """One row per (K, p): observed maximum rate next to the theoretical ``L_p``."""
    base = config or IterationConfig()
    rows = []
    for K in table.loads:
        problem = BeamProblem(table.bc, table.n, K)
        for p in NORM_ORDERS:
            cfg = IterationConfig(p=p, tol=base.tol, max_iters=base.max_iters, initial_guess=base.initial_guess)
            trace = iterate(problem, cfg)
            L, guaranteed = lipschitz(problem, p)
            rows.append(
                {
                    "bc": table.bc.value,
                    "n": table.n,
                    "K": K,
                    "p": norm_label(p),
                    "observed_max_rate": trace.observed_max_rate,
                    "theoretical_rate": L,
                    "guaranteed": guaranteed,
                    "iterations": trace.iterations,
                    "converged": trace.converged,
                }
            )
    return rows


def norm_rows(sizes=NORM_TABLE_SIZES) -> list[dict]:
    """Computed CC norms for each size against the sharp bound."""
    rows = []
    for n in sizes:
        inv = cc_inverse(n)
        bound, _ = cc_norm_bound(n, 1)
        row = {"n": n}
        for p in NORM_ORDERS:
            row[f"norm_{norm_label(p)}"] = brute_force_norm(inv, p)
        row["bound"] = bound
        row["coarse_bound"] = (n + 1) ** 4 / 32
        rows.append(row)
    return rows


def solution_rows(n: int = 100, K: float = 1.0, p=math.inf) -> list[dict]:
    rows = []
    for bc in (CF, CC):
        problem = BeamProblem(bc, n, K)
        trace = iterate(problem, IterationConfig(p=p))
        for i, (x, u) in enumerate(zip(problem.nodes, trace.solution), start=1):
            rows.append({"bc": bc.value, "i": i, "x": float(x), "u": float(u)})
    return rows


def gap_rows(sizes=GAP_STUDY_SIZES) -> list[dict]:
    """Relative gap ``|norm - bound| / norm`` for the CC inverse (1- and 2-norms; inf equals 1)."""
    rows = []
    for n in sizes:
        inv = cc_inverse(n)
        bound, _ = cc_norm_bound(n, 1)
        for p in (1, 2):
            value = brute_force_norm(inv, p)
            rows.append({"n": n, "p": norm_label(p), "norm": value, "bound": bound, "relative_error": abs(value - bound) / value})
    return rows


def verify_order(bc: BoundaryKind, n: int) -> dict:
    """Compare the closed-form inverse of order ``n`` with the elimination oracle.

    Returns the worst entrywise relative error against the oracle, the scaled
    residual ``||A B - I||_inf / ||B||_inf`` and, for CC, the worst relative
    disagreement between the closed form and the Sherman-Morrison rebuild.
    """
    A = assemble(bc, n).dense()
    B = explicit_inverse(bc, n).entries
    O = dense_invert(A)
    out = {
        "bc": bc.value,
        "n": n,
        "oracle_rel_error": float(np.max(np.abs(B - O) / np.abs(O))),
        "residual": float(np.abs(A @ B - np.eye(n)).sum(axis=1).max() / np.abs(B).sum(axis=1).max()),
    }
    if bc is CC:
        S = explicit_inverse(bc, n, "sherman_morrison").entries
        out["sm_oracle_rel_error"] = float(np.max(np.abs(S - O) / np.abs(O)))
        out["sm_closed_rel_error"] = float(np.max(np.abs(S - B) / np.abs(B)))
    return out
