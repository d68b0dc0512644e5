"""Closed-form inverses of the CF and CC beam matrices.

Nothing here solves or factors a linear system.  Entries come from the
explicit formulas; the clamped-clamped inverse can also be rebuilt from the
rank-2 splitting ``A = T^2 + U U^T`` through the Sherman-Morrison identity

    A^-1 = T^-1 (I - W S^-1 W^T) T^-1,    W = T^-1 U,  S = I_2 + W^T W,

which only needs matrix products of explicitly known factors.

Formula numerators are integers.  They are evaluated in int64 while that is
exact and in float64 beyond, where the factorized forms used below contain no
subtractions of large terms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .assembly import CC, CF, BoundaryKind, check_size

#: Largest order materialized densely; bigger operators apply the formulas row-block by row-block.
DENSE_CAP = 4096

# int64 exactness limits for the formula numerators (3 n^3 and ~5 n^4 respectively).
_CF_INT64_MAX_N = 1_400_000
_CC_INT64_MAX_N = 36_000

_STREAM_BLOCK = 256


class InversePath(enum.Enum):
    CLOSED_FORM = "closed_form"
    SHERMAN_MORRISON = "sherman_morrison"


@dataclass(frozen=True)
class ExplicitInverse:
    n: int
    bc: BoundaryKind
    entries: np.ndarray
    path: InversePath = InversePath.CLOSED_FORM

    def __post_init__(self):
        self.entries.setflags(write=False)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.entries @ np.asarray(x, dtype=float)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def _check_index(n: int, i: int, j: int) -> None:
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"index ({i}, {j}) out of range for order {n} (indices are 1-based)")


# --------------------------------------------------------------------------
# clamped-free


def _cf_numerators(n: int, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Twelve times the CF inverse entries for 1-based ``rows[:, None]``, ``cols[None, :]``.

    With ``g(a, b) = b (b (3a - b) + 1) = 3ab^2 + b - b^3``:

    * ``b[i, j] = g(max, min) / 6`` for ``i, j <= n-1``;
    * ``b[n, j] = g(n, j) / 6``;
    * ``b[i, n] = b[n, i] / 2 = g(n, i) / 12``, which includes ``b[n, n] = n (2n^2 + 1) / 12``.
    """
    dtype = np.int64 if n <= _CF_INT64_MAX_N else np.float64
    I = rows.astype(dtype)[:, None]
    J = cols.astype(dtype)[None, :]
    a = np.maximum(I, J)
    b = np.minimum(I, J)
    num = 2 * (b * (b * (3 * a - b) + 1))
    last = J == n
    if last.any():
        num = np.where(last, I * (I * (3 * n - I) + 1), num)
    return num


def cf_inverse_entry(n: int, i: int, j: int) -> float:
    """Entry ``(i, j)`` of the clamped-free inverse, 1-based.

    >>> cf_inverse_entry(5, 1, 1), cf_inverse_entry(5, 2, 2), cf_inverse_entry(5, 5, 5)
    (0.5, 3.0, 21.25)
    """
    n = check_size(n)
    _check_index(n, i, j)
    if j == n:
        return float(Fraction(i * (i * (3 * n - i) + 1), 12))
    a, b = max(i, j), min(i, j)
    return float(Fraction(b * (b * (3 * a - b) + 1), 6))


def cf_inverse(n: int) -> ExplicitInverse:
    n = check_size(n)
    idx = np.arange(1, n + 1)
    entries = _cf_numerators(n, idx, idx) / 12.0
    return ExplicitInverse(n, CF, entries)


# --------------------------------------------------------------------------
# tridiag(-1, 2, -1) and the M block


def t_inverse_entry(n: int, i: int, j: int) -> float:
    """Entry of ``tridiag(-1, 2, -1)^-1``: ``min(i,j) (n + 1 - max(i,j)) / (n + 1)``."""
    n = check_size(n, minimum=1)
    _check_index(n, i, j)
    a, b = max(i, j), min(i, j)
    return float(Fraction(b * (n + 1 - a), n + 1))


def t_inverse(n: int) -> np.ndarray:
    n = check_size(n, minimum=1)
    idx = np.arange(1, n + 1)
    a = np.maximum(idx[:, None], idx[None, :])
    b = np.minimum(idx[:, None], idx[None, :])
    return b * (n + 1 - a) / (n + 1)


def t_inverse_u(n: int) -> np.ndarray:
    """``T^-1 U``: ``sqrt(2)/(n+1)`` times the columns ``(n, n-1, ..., 1)`` and ``(1, ..., n)``."""
    n = check_size(n, minimum=2)
    k = np.arange(1, n + 1, dtype=float)
    return np.sqrt(2.0) / (n + 1) * np.column_stack([n + 1 - k, k])


@dataclass(frozen=True)
class SmallSystem:
    """The 2x2 capacitance matrix ``S = I_2 + U^T T^-2 U`` and its inverse, in closed form."""

    n: int
    tau: Fraction
    gamma: Fraction
    delta: Fraction

    @classmethod
    def for_order(cls, n: int) -> "SmallSystem":
        tau = Fraction(2 * n**3 + 3 * n**2 + n, 6)
        gamma = Fraction((n + 1) ** 2, 2)
        delta = (n + 1) * (2 * tau + gamma * (1 - n))
        return cls(n, tau, gamma, delta)

    @property
    def matrix(self) -> np.ndarray:
        g, t, n = self.gamma, self.tau, self.n
        return np.array([[g + t, g * n - t], [g * n - t, g + t]], dtype=float) / float(g)

    @property
    def inverse(self) -> np.ndarray:
        g, t, n = self.gamma, self.tau, self.n
        return np.array([[g + t, t - g * n], [t - g * n, g + t]], dtype=float) / float(self.delta)

    @property
    def det(self) -> Fraction:
        """``(n^2 + 2n + 3) / 3``."""
        return self.delta / self.gamma


@dataclass(frozen=True)
class MMatrixBlock:
    """``M = (I + W W^T)^-1 = I - W S^-1 W^T`` with ``W = T^-1 U``.

    Off the diagonal ``m_ij = q0 + q1 (i + j) + q2 i j``; on the diagonal
    ``m_ii = 1 + q0 + 2 q1 i + q2 i^2``.  The coefficients are kept as exact
    fractions.
    """

    n: int
    q0: Fraction
    q1: Fraction
    q2: Fraction

    def offdiag(self, i, j):
        return float(self.q0) + float(self.q1) * (np.add(i, j)) + float(self.q2) * np.multiply(i, j)

    def diag_entry(self, i: int) -> float:
        n = self.n
        den = (n + 1) * (n * n + 2 * n + 3)
        return float(Fraction(n**3 - n**2 - 3 * n - 3, den) + Fraction(12 * i, n * n + 2 * n + 3) - Fraction(12 * i * i, den))

    def dense(self) -> np.ndarray:
        idx = np.arange(1, self.n + 1)
        m = self.offdiag(idx[:, None], idx[None, :])
        m[np.diag_indices(self.n)] = [self.diag_entry(i) for i in idx]
        return m


def m_block(n: int) -> MMatrixBlock:
    n = check_size(n, minimum=1)
    c = n * n + 2 * n + 3
    return MMatrixBlock(
        n,
        q0=Fraction(-(4 * n * n + 8 * n + 6), (n + 1) * c),
        q1=Fraction(6, c),
        q2=Fraction(-12, (n + 1) * c),
    )


# --------------------------------------------------------------------------
# clamped-clamped


def _cc_bracket(n, dtype, i, j):
    """``eps + (j^2 - 1)(2 alpha^2 + 1)`` for ``i >= j``, ``alpha = n + 1 - i``."""
    alpha = n + 1 - i
    eps = 3 * (1 + alpha * (n + 1)) * (1 + (i - j) * j)
    if __debug__ and dtype is np.int64:
        # the same quantity written the other way round
        assert np.array_equal(eps, 3 * (1 + alpha + n * alpha) * (1 + i * j - j * j))
    return alpha, eps + (j * j - 1) * (2 * alpha * alpha + 1)


def _cc_block(n: int, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    dtype = np.int64 if n <= _CC_INT64_MAX_N else np.float64
    I = rows.astype(dtype)[:, None]
    J = cols.astype(dtype)[None, :]
    i = np.maximum(I, J)
    j = np.minimum(I, J)
    alpha, bracket = _cc_bracket(n, dtype, i, j)
    denom = 6.0 * (n + 1) * (n * n + 2 * n + 3)
    # beta = j alpha / denom; product taken in float to avoid int64 overflow
    return (j * alpha).astype(float) * bracket.astype(float) / denom


def cc_inverse_entry(n: int, i: int, j: int) -> float:
    """Entry ``(i, j)`` of the clamped-clamped inverse, 1-based.

    For ``i >= j``, with ``alpha = n + 1 - i``::

        beta = j alpha / (6 (n+1) (n^2 + 2n + 3))
        eps  = 3 (1 + alpha (n+1)) (1 + (i-j) j)
        a^-1 = beta (eps + (j^2 - 1)(2 alpha^2 + 1))

    and by symmetry otherwise.
    """
    n = check_size(n)
    _check_index(n, i, j)
    i, j = max(i, j), min(i, j)
    alpha = n + 1 - i
    eps = 3 * (1 + alpha * (n + 1)) * (1 + (i - j) * j)
    assert eps == 3 * (1 + alpha + n * alpha) * (1 + i * j - j * j)
    return float(Fraction(j * alpha * (eps + (j * j - 1) * (2 * alpha * alpha + 1)), 6 * (n + 1) * (n * n + 2 * n + 3)))


def cc_inverse(n: int) -> ExplicitInverse:
    n = check_size(n)
    idx = np.arange(1, n + 1)
    return ExplicitInverse(n, CC, _cc_block(n, idx, idx))


def cc_inverse_sherman_morrison(n: int) -> ExplicitInverse:
    """Rebuild the CC inverse as ``T^-1 M T^-1`` from the closed-form factors."""
    n = check_size(n)
    Tinv = t_inverse(n)
    W = t_inverse_u(n)
    Sinv = SmallSystem.for_order(n).inverse
    M = np.eye(n) - W @ Sinv @ W.T
    return ExplicitInverse(n, CC, Tinv @ M @ Tinv, InversePath.SHERMAN_MORRISON)


# --------------------------------------------------------------------------
# dispatch


def explicit_inverse(bc: BoundaryKind | str, n: int, path: InversePath = InversePath.CLOSED_FORM) -> ExplicitInverse:
    bc = BoundaryKind.parse(bc)
    path = InversePath(path)
    if bc is CF:
        if path is not InversePath.CLOSED_FORM:
            raise ValueError("the Sherman-Morrison path exists only for the clamped-clamped matrix")
        return cf_inverse(n)
    if path is InversePath.SHERMAN_MORRISON:
        return cc_inverse_sherman_morrison(n)
    return cc_inverse(n)


def inverse_block(bc: BoundaryKind | str, n: int, rows: np.ndarray, cols: np.ndarray | None = None) -> np.ndarray:
    """Rows ``rows`` (1-based) of the closed-form inverse, restricted to ``cols``."""
    bc = BoundaryKind.parse(bc)
    n = check_size(n)
    rows = np.asarray(rows)
    cols = np.arange(1, n + 1) if cols is None else np.asarray(cols)
    if bc is CF:
        return _cf_numerators(n, rows, cols) / 12.0
    return _cc_block(n, rows, cols)


def inverse_matvec(bc: BoundaryKind | str, n: int, x: np.ndarray, block: int = _STREAM_BLOCK) -> np.ndarray:
    """``A^-1 x`` evaluated from the formulas a block of rows at a time, without storing ``A^-1``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise ValueError(f"expected a vector of length {n}, got shape {x.shape}")
    y = np.empty(n)
    for start in range(1, n + 1, block):
        rows = np.arange(start, min(start + block, n + 1))
        y[start - 1 : start - 1 + rows.size] = inverse_block(bc, n, rows) @ x
    return y


def inverse_operator(bc: BoundaryKind | str, n: int, cap: int = DENSE_CAP):
    """Callable ``x -> A^-1 x``; dense up to ``cap``, streamed beyond."""
    bc = BoundaryKind.parse(bc)
    n = check_size(n)
    if n <= cap:
        return explicit_inverse(bc, n).matvec
    return lambda x: inverse_matvec(bc, n, x)
