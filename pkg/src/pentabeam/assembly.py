"""Finite-difference matrices of the fourth-order beam operator.

Indices in docstrings are 1-based, as in the usual matrix notation; arrays are
0-based.  Two boundary conditions are supported:

* clamped-free (CF): ``n`` unknowns on ``x_i = i/n``, ``i = 1..n``;
* clamped-clamped (CC): ``n`` interior unknowns on ``x_i = i/(n+1)``.

Both matrices share the interior stencil ``1, -4, 6, -4, 1`` and differ only
in the first and last two rows.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

MIN_UNKNOWNS = 5


class BoundaryKind(enum.Enum):
    CLAMPED_FREE = "cf"
    CLAMPED_CLAMPED = "cc"

    @classmethod
    def parse(cls, value: "BoundaryKind | str") -> "BoundaryKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown boundary condition {value!r}; expected 'cf' or 'cc'") from None


CF = BoundaryKind.CLAMPED_FREE
CC = BoundaryKind.CLAMPED_CLAMPED


def grid_spacing(bc: BoundaryKind, n: int) -> float:
    return 1.0 / n if bc is CF else 1.0 / (n + 1)


def check_size(n: int, minimum: int = MIN_UNKNOWNS) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise TypeError(f"n must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        raise ValueError(f"n must be >= {minimum}, got {n}")
    return n


@dataclass(frozen=True)
class BeamProblem:
    """Discrete problem ``A u = h^4 K exp(-u)``.

    ``h`` is derived from the boundary condition and ``n`` unless given, in
    which case it must agree.
    """

    bc: BoundaryKind
    n: int
    K: float
    h: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        bc = BoundaryKind.parse(self.bc)
        object.__setattr__(self, "bc", bc)
        object.__setattr__(self, "n", check_size(self.n))
        if not np.isfinite(self.K) or self.K < 0:
            raise ValueError(f"K must be a finite non-negative number, got {self.K}")
        expected = grid_spacing(bc, self.n)
        if self.h is None:
            object.__setattr__(self, "h", expected)
        elif not np.isclose(self.h, expected, rtol=1e-12, atol=0.0):
            raise ValueError(f"h={self.h} inconsistent with bc={bc.value}, n={self.n} (expected {expected})")

    @property
    def scale(self) -> float:
        """Right-hand-side factor ``h^4 K``."""
        return self.h**4 * self.K

    @property
    def nodes(self) -> np.ndarray:
        return self.h * np.arange(1, self.n + 1)


@dataclass(frozen=True)
class PentaBands:
    """Five-diagonal storage.  ``sub2[k]`` holds ``A[k+2, k]``, ``super1[k]`` holds ``A[k, k+1]``, etc."""

    n: int
    sub2: np.ndarray
    sub1: np.ndarray
    diag: np.ndarray
    super1: np.ndarray
    super2: np.ndarray

    def __post_init__(self):
        n = self.n
        for name, length in (("sub2", n - 2), ("sub1", n - 1), ("diag", n), ("super1", n - 1), ("super2", n - 2)):
            band = np.asarray(getattr(self, name), dtype=float)
            if band.shape != (max(length, 0),):
                raise ValueError(f"{name} must have length {max(length, 0)}, got {band.shape}")
            band.setflags(write=False)
            object.__setattr__(self, name, band)

    def dense(self) -> np.ndarray:
        out = np.diag(self.diag)
        for offset, band in ((-2, self.sub2), (-1, self.sub1), (1, self.super1), (2, self.super2)):
            if band.size:
                out += np.diag(band, offset)
        return out

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = self.diag * x
        y[1:] += self.sub1 * x[:-1]
        y[2:] += self.sub2 * x[:-2]
        y[:-1] += self.super1 * x[1:]
        y[:-2] += self.super2 * x[2:]
        return y


@dataclass(frozen=True)
class TriBands:
    n: int
    sub: np.ndarray
    diag: np.ndarray
    super: np.ndarray

    def dense(self) -> np.ndarray:
        out = np.diag(self.diag)
        if self.n > 1:
            out += np.diag(self.sub, -1) + np.diag(self.super, 1)
        return out


def assemble(problem: BeamProblem | BoundaryKind | str, n: int | None = None) -> PentaBands:
    """Assemble the beam matrix for ``problem`` (or for ``bc, n`` directly).

    CF, rows 1 and n-1..n::

        7 -4  1
          ... 1 -4  5 -2
          ...    2 -4  2

    CC has ``7`` in both corners and is otherwise the Toeplitz stencil.
    """
    if isinstance(problem, BeamProblem):
        bc, n = problem.bc, problem.n
    else:
        bc = BoundaryKind.parse(problem)
        if n is None:
            raise TypeError("n is required when a boundary kind is passed")
        n = check_size(n)

    sub2 = np.ones(n - 2)
    sub1 = np.full(n - 1, -4.0)
    diag = np.full(n, 6.0)
    super1 = np.full(n - 1, -4.0)
    super2 = np.ones(n - 2)
    diag[0] = 7.0
    if bc is CC:
        diag[-1] = 7.0
    else:
        # row n-1: 1 -4 5 -2
        diag[-2] = 5.0
        super1[-1] = -2.0
        # row n: 2 -4 2
        sub2[-1] = 2.0
        sub1[-1] = -4.0
        diag[-1] = 2.0
    return PentaBands(n, sub2, sub1, diag, super1, super2)


def assemble_T(n: int) -> TriBands:
    """``tridiag(-1, 2, -1)`` of order ``n``."""
    n = check_size(n, minimum=1)
    off = np.full(n - 1, -1.0)
    return TriBands(n, off, np.full(n, 2.0), off.copy())


def assemble_U(n: int) -> np.ndarray:
    """``n x 2`` factor with ``sqrt(2)`` at (1, 1) and (n, 2), so that ``A_cc = T^2 + U U^T``."""
    n = check_size(n, minimum=2)
    U = np.zeros((n, 2))
    U[0, 0] = U[-1, 1] = np.sqrt(2.0)
    return U
