"""Dense reference solver used to check the closed forms.

Plain Gaussian elimination with partial pivoting, kept deliberately simple so
it can be trusted by reading it.  O(n^3); limited to ``n <= MAX_ORDER``.
"""

from __future__ import annotations

import numpy as np

MAX_ORDER = 1024
PIVOT_RTOL = 1e-12


class SingularMatrixError(np.linalg.LinAlgError):
    def __init__(self, column: int, pivot: float):
        self.column = column
        self.pivot = pivot
        super().__init__(f"matrix is numerically singular: pivot {pivot:.3e} in column {column} (1-based)")


def _as_square(m) -> np.ndarray:
    m = np.array(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_ORDER:
        raise ValueError(f"oracle is limited to order <= {MAX_ORDER}, got {m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _eliminate(m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Reduce ``[m | rhs]`` in place to upper-triangular form, then back-substitute."""
    n = m.shape[0]
    threshold = PIVOT_RTOL * np.abs(m).sum(axis=1).max()
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        if abs(m[p, k]) <= threshold:
            raise SingularMatrixError(k + 1, m[p, k])
        if p != k:
            m[[k, p]] = m[[p, k]]
            rhs[[k, p]] = rhs[[p, k]]
        factors = m[k + 1 :, k] / m[k, k]
        m[k + 1 :, k:] -= np.outer(factors, m[k, k:])
        rhs[k + 1 :] -= np.outer(factors, rhs[k])
    x = np.empty_like(rhs)
    for k in range(n - 1, -1, -1):
        x[k] = (rhs[k] - m[k, k + 1 :] @ x[k + 1 :]) / m[k, k]
    return x


def dense_solve(m, rhs) -> np.ndarray:
    """Solve ``m x = rhs``; ``rhs`` may be a vector or a matrix of columns."""
    m = _as_square(m)
    rhs = np.array(rhs, dtype=float)
    vector = rhs.ndim == 1
    if rhs.shape[0] != m.shape[0]:
        raise ValueError(f"rhs has {rhs.shape[0]} rows, matrix has order {m.shape[0]}")
    x = _eliminate(m, rhs.reshape(m.shape[0], -1))
    return x[:, 0] if vector else x


def dense_invert(m) -> np.ndarray:
    m = _as_square(m)
    return _eliminate(m, np.eye(m.shape[0]))


def oracle_iterate(problem, tol: float = 1e-6, max_iters: int = 10_000, p=np.inf, u0=None):
    """The fixed-point iteration with each step done as a dense solve ``A u_new = h^4 K exp(-u)``.

    Returns ``(u, iterations, converged)``.  Independent of the explicit inverse.
    """
    from .assembly import assemble

    A = assemble(problem).dense()
    u = np.zeros(problem.n) if u0 is None else np.array(u0, dtype=float)
    for it in range(1, max_iters + 1):
        new = dense_solve(A, problem.scale * np.exp(-u))
        diff = np.linalg.norm(new - u, p)
        u = new
        if diff < tol:
            return u, it, True
    return u, max_iters, False
