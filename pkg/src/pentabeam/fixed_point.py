"""Fixed-point iteration ``u <- h^4 K A^-1 exp(-u)`` driven by the explicit inverse."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .assembly import BeamProblem, assemble
from .explicit_inverse import DENSE_CAP, inverse_operator
from .norms import norm_order


@dataclass(frozen=True)
class IterationConfig:
    """Stopping rule and start for :func:`iterate`.

    ``initial_guess`` is ``"zeros"``, ``"ones"`` or an explicit non-negative
    vector.  From any non-negative start the first iterate is already strictly
    positive because every entry of ``A^-1`` is.
    """

    p: float = math.inf
    tol: float = 1e-6
    max_iters: int = 10_000
    initial_guess: str | np.ndarray = "zeros"
    dense_cap: int = DENSE_CAP

    def __post_init__(self):
        object.__setattr__(self, "p", norm_order(self.p))
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if isinstance(self.initial_guess, str) and self.initial_guess not in ("zeros", "ones"):
            raise ValueError(f"unknown initial guess {self.initial_guess!r}")

    def start(self, n: int) -> np.ndarray:
        if isinstance(self.initial_guess, str):
            return np.zeros(n) if self.initial_guess == "zeros" else np.ones(n)
        u0 = np.array(self.initial_guess, dtype=float)
        if u0.shape != (n,):
            raise ValueError(f"initial guess has shape {u0.shape}, expected ({n},)")
        if not np.all(u0 >= 0) or not np.all(np.isfinite(u0)):
            raise ValueError("initial guess must be finite and non-negative")
        return u0


@dataclass(frozen=True)
class IterationTrace:
    """Record of one run.  ``rates[k] = diffs[k+1] / diffs[k]``."""

    diffs: np.ndarray
    rates: np.ndarray
    converged: bool
    solution: np.ndarray
    p: float = math.inf
    history: list = field(default_factory=list, repr=False)

    @property
    def iterations(self) -> int:
        return len(self.diffs)

    @property
    def observed_max_rate(self) -> float:
        """Largest ratio of successive difference norms; 0 if the run stopped after one step."""
        return float(self.rates.max()) if self.rates.size else 0.0


def iterate(problem: BeamProblem, config: IterationConfig | None = None, keep_history: bool = False) -> IterationTrace:
    """Run ``u^l = h^4 K A^-1 exp(-u^(l-1))`` until ``||u^l - u^(l-1)||_p < tol``.

    Each step is one product with the explicit inverse.  Hitting
    ``max_iters`` is reported through ``converged=False``, not raised.
    """
    config = config or IterationConfig()
    apply_inv = inverse_operator(problem.bc, problem.n, cap=config.dense_cap)
    scale = problem.scale
    u = config.start(problem.n)
    diffs = []
    history = [u.copy()] if keep_history else []
    converged = False
    for _ in range(config.max_iters):
        new = scale * apply_inv(np.exp(-u))
        d = float(np.linalg.norm(new - u, config.p))
        diffs.append(d)
        u = new
        if keep_history:
            history.append(u.copy())
        if d < config.tol:
            converged = True
            break
    diffs = np.array(diffs)
    rates = diffs[1:] / diffs[:-1]
    return IterationTrace(diffs, rates, converged, u, config.p, history)


def residual(problem: BeamProblem, solution: np.ndarray, p=math.inf) -> float:
    """``||A u - h^4 K exp(-u)||_p`` with the banded matrix (no inverse involved)."""
    u = np.asarray(solution, dtype=float)
    if u.shape != (problem.n,):
        raise ValueError(f"solution has shape {u.shape}, expected ({problem.n},)")
    r = assemble(problem).matvec(u) - problem.scale * np.exp(-u)
    return float(np.linalg.norm(r, norm_order(p)))


def check_monotone_cf(solution: np.ndarray) -> bool:
    """True iff a clamped-free profile increases strictly with strictly increasing steps.

    The steps include the clamped node ``u_0 = 0``, so the check is
    ``0 < u_1 - u_0 < u_2 - u_1 < ... < u_n - u_(n-1)``.
    """
    u = np.asarray(solution, dtype=float)
    if u.ndim != 1 or u.size < 2:
        return False
    steps = np.diff(np.concatenate(([0.0], u)))
    return bool(np.all(steps > 0) and np.all(np.diff(steps) > 0))
