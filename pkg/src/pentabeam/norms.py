"""Norms of the explicit inverses: closed forms, bounds, and brute force.

Norm orders follow numpy: ``1``, ``2`` and ``numpy.inf``.  The strings
``"1"``, ``"2"``, ``"inf"`` are accepted wherever an order is expected.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .assembly import CF, BeamProblem, BoundaryKind, check_size
from .explicit_inverse import ExplicitInverse, explicit_inverse

NORM_ORDERS = (1, 2, math.inf)


class PowerIterationWarning(RuntimeWarning):
    pass


def norm_order(p) -> float:
    """Normalize ``p`` to one of ``1``, ``2``, ``inf``."""
    if isinstance(p, str):
        key = p.strip().lower()
        if key in ("inf", "infinity", "max"):
            return math.inf
        try:
            p = float(key)
        except ValueError:
            raise ValueError(f"unsupported norm order {p!r}") from None
    if p in (1, 2) or p == math.inf:
        return math.inf if p == math.inf else int(p)
    raise ValueError(f"unsupported norm order {p!r}; expected 1, 2 or inf")


def norm_label(p) -> str:
    p = norm_order(p)
    return "inf" if p == math.inf else str(p)


def cf_norm_formula(n: int, p) -> tuple[float, bool]:
    """``||A^-1||_p`` for the clamped-free matrix.

    Exact for ``p = 1`` ((n^4 - n^2)/8) and ``p = inf`` ((n^4 + n^2)/8); for
    ``p = 2`` the Hoelder bound ``sqrt(n^8 - n^4)/8`` is returned with
    ``is_exact=False``.
    """
    n = check_size(n)
    p = norm_order(p)
    if p == 1:
        return (n**4 - n**2) / 8, True
    if p == math.inf:
        return (n**4 + n**2) / 8, True
    return math.sqrt(n**8 - n**4) / 8, False


def cc_norm_bound(n: int, p) -> tuple[float, bool]:
    """Sharp bound ``(n+1)^2 ((n+1)^2 + 8) / 384`` on ``||A^-1||_p`` for the clamped-clamped matrix.

    It is attained for odd ``n`` and ``p`` in ``{1, inf}``.
    """
    n = check_size(n)
    p = norm_order(p)
    m = (n + 1) ** 2
    return m * (m + 8) / 384, (n % 2 == 1 and p != 2)


def cc_norm_coarse_bound(n: int) -> float:
    """The cruder ``(n+1)^4 / 32`` from ``||T^-1||^2 ||M||``."""
    n = check_size(n)
    return (n + 1) ** 4 / 32


def norm_formula(bc: BoundaryKind | str, n: int, p) -> tuple[float, bool]:
    bc = BoundaryKind.parse(bc)
    return cf_norm_formula(n, p) if bc is CF else cc_norm_bound(n, p)


def spectral_norm(B: np.ndarray, tol: float = 1e-8, max_iter: int = 10_000) -> tuple[float, bool]:
    """Largest singular value of ``B`` by power iteration on ``B^T B``.

    Starts from the all-ones vector and stops once the Rayleigh quotient
    changes by less than ``tol`` relative.  Returns ``(sigma, converged)``.
    """
    B = np.asarray(B, dtype=float)
    v = np.ones(B.shape[1]) / math.sqrt(B.shape[1])
    lam = 0.0
    for _ in range(max_iter):
        w = B.T @ (B @ v)
        new = float(v @ w)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0, True
        v = w / nw
        if abs(new - lam) <= tol * abs(new):
            return math.sqrt(new), True
        lam = new
    return math.sqrt(lam), False


def brute_force_norm(inv: ExplicitInverse | np.ndarray, p, tol: float = 1e-8, max_iter: int = 10_000) -> float:
    """``||inv||_p`` from the materialized entries.

    ``p=1``: largest column abs-sum; ``p=inf``: largest row abs-sum;
    ``p=2``: power iteration (warns with :class:`PowerIterationWarning` and
    returns the last estimate if it does not settle).
    """
    B = np.asarray(inv, dtype=float)
    p = norm_order(p)
    if p == 1:
        return float(np.abs(B).sum(axis=0).max())
    if p == math.inf:
        return float(np.abs(B).sum(axis=1).max())
    sigma, converged = spectral_norm(B, tol=tol, max_iter=max_iter)
    if not converged:
        warnings.warn(f"power iteration did not reach rtol={tol} in {max_iter} steps", PowerIterationWarning, stacklevel=2)
    return sigma


def lipschitz(problem: BeamProblem, p) -> tuple[float, bool]:
    """``L_p = h^4 K ||A^-1||_p`` using the closed-form norm (or bound), and whether ``L_p < 1``."""
    value, _ = norm_formula(problem.bc, problem.n, p)
    L = problem.scale * value
    return L, L < 1.0


@dataclass(frozen=True)
class NormReport:
    bc: BoundaryKind
    n: int
    p: float
    exact_or_bound: float
    brute_force: float
    is_exact: bool
    lipschitz: float
    K: float

    @property
    def guaranteed(self) -> bool:
        return self.lipschitz < 1.0

    def consistent(self, rtol: float = 1e-9) -> bool:
        if self.is_exact:
            return abs(self.brute_force - self.exact_or_bound) <= rtol * self.exact_or_bound
        return self.brute_force <= self.exact_or_bound * (1 + 1e-12)


def norm_report(problem: BeamProblem, p, inverse: ExplicitInverse | None = None) -> NormReport:
    p = norm_order(p)
    if inverse is None:
        inverse = explicit_inverse(problem.bc, problem.n)
    value, exact = norm_formula(problem.bc, problem.n, p)
    L, _ = lipschitz(problem, p)
    return NormReport(problem.bc, problem.n, p, value, brute_force_norm(inverse, p), exact, L, problem.K)


def cc_argmax_rows(n: int) -> set[int]:
    """Rows (1-based) where the CC inverse row sum may peak: floor and ceil of (n+1)/2."""
    n = check_size(n)
    return {(n + 1) // 2, (n + 2) // 2}

