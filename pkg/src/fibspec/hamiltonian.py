"""Finite sections of the Fibonacci Hamiltonian and a Sturm eigensolver.

The operator acts on square-summable sequences by

    (H u)(n) = u(n+1) + u(n-1) + lam * w(n) * u(n),

with the quasiperiodic word w(n) = chi_[1-alpha, 1) (n*alpha + omega0 mod 1)
for alpha the inverse golden mean.  Finite sections use Dirichlet
truncation on sites 1..n, so the diagonal is a natural prefix of the word.

Eigenvalues come from Sturm-sequence counting plus bisection — an
implementation deliberately independent of the trace-map pipeline, so the
two can cross-validate each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EigenvalueSeparationError, SizeCapError

#: Inverse golden mean, the rotation number of the Fibonacci word.
ALPHA = (math.sqrt(5.0) - 1.0) / 2.0

#: Pairwise-sum spectra are capped at this many entries.
SQUARE_SAMPLE_CAP = 4_000_000


@dataclass(frozen=True)
class FibonacciPotential:
    """The two-valued quasiperiodic potential at coupling ``lam``.

    ``omega0`` shifts the sampling phase; the spectrum of the full-line
    operator does not depend on it, which finite-section experiments can
    probe but not prove.
    """

    lam: float
    omega0: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.lam) and math.isfinite(self.omega0)):
            raise ValueError("coupling and phase must be finite")

    def word(self, n_from: int, n_to: int) -> np.ndarray:
        """0/1 word w(n) for n in [n_from, n_to], inclusive."""
        if n_from > n_to:
            raise ValueError("empty site range")
        n = np.arange(n_from, n_to + 1, dtype=float)
        frac = np.mod(n * ALPHA + self.omega0, 1.0)
        return (frac >= 1.0 - ALPHA).astype(np.int64)

    def diagonal(self, n_from: int, n_to: int) -> np.ndarray:
        return self.lam * self.word(n_from, n_to).astype(float)


def potential_values(p: FibonacciPotential, n_from: int, n_to: int) -> np.ndarray:
    """The 0/1 potential word on an inclusive site range."""
    return p.word(n_from, n_to)


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Symmetric tridiagonal matrix with unit off-diagonal entries."""

    diagonal: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = np.ascontiguousarray(self.diagonal, dtype=float)
        if d.ndim != 1 or d.size < 1:
            raise ValueError("diagonal must be a non-empty 1-d array")
        if not np.all(np.isfinite(d)):
            raise ValueError("diagonal entries must be finite")
        d.setflags(write=False)
        object.__setattr__(self, "diagonal", d)

    @property
    def n(self) -> int:
        return int(self.diagonal.size)

    @property
    def offdiagonal(self) -> np.ndarray:
        return np.ones(self.n - 1)

    def count_below(self, t: float | np.ndarray) -> int | np.ndarray:
        """Number of eigenvalues < t, via the Sturm pivot recursion.

        d_1 = a_1 - t,  d_{i+1} = (a_{i+1} - t) - 1/d_i; the count of
        negative pivots equals the eigenvalue count.  A zero pivot is
        replaced by -1e-300 (the conventional signed-epsilon guard).
        """
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        a = self.diagonal
        d = a[0] - t_arr
        d = np.where(d == 0.0, -1e-300, d)
        count = (d < 0).astype(np.int64)
        for i in range(1, self.n):
            d = (a[i] - t_arr) - 1.0 / d
            d = np.where(d == 0.0, -1e-300, d)
            count += d < 0
        if np.ndim(t) == 0:
            return int(count[0])
        return count


def fibonacci_tridiagonal(lam: float, n: int, omega0: float = 0.0) -> TridiagonalMatrix:
    """Dirichlet truncation of the Fibonacci Hamiltonian to sites 1..n."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    pot = FibonacciPotential(lam, omega0)
    return TridiagonalMatrix(pot.diagonal(1, n))


def eigenvalues(m: TridiagonalMatrix, tol: float = 1e-10) -> np.ndarray:
    """All eigenvalues, ascending, each bracketed to width <= tol.

    Bisection on the Sturm count runs for every index simultaneously.
    If 200 halvings cannot reach ``tol`` (tolerance below the floating
    floor, or a pathological cluster), the unresolved indices are
    reported in an EigenvalueSeparationError.
    """
    if tol <= 0:
        raise ValueError("tolerance must be > 0")
    n = m.n
    radius = float(np.max(np.abs(m.diagonal))) + 2.0 + 1.0
    lo = np.full(n, -radius)
    hi = np.full(n, radius)
    ks = np.arange(n)
    for _ in range(200):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        c = m.count_below(mid)
        # eigenvalue k >= mid exactly when at most k eigenvalues lie below
        go_up = c <= ks
        lo = np.where(go_up, mid, lo)
        hi = np.where(go_up, hi, mid)
    width = hi - lo
    if np.any(width > tol):
        bad = np.flatnonzero(width > tol)
        raise EigenvalueSeparationError(bad.tolist(), float(width.max()), tol)
    return np.sort(0.5 * (lo + hi))


def square_eigenvalue_sample(e1: np.ndarray, e2: np.ndarray | None = None) -> np.ndarray:
    """All pairwise sums of two eigenvalue lists, sorted ascending.

    This is the exact spectrum of H1 (x) I + I (x) H2 on the tensor
    product, i.e. the finite-section stand-in for the sum-set spectrum.
    """
    e1 = np.asarray(e1, dtype=float)
    e2 = e1 if e2 is None else np.asarray(e2, dtype=float)
    total = e1.size * e2.size
    if total > SQUARE_SAMPLE_CAP:
        raise SizeCapError("pairwise eigenvalue sums", total, SQUARE_SAMPLE_CAP)
    return np.sort(np.add.outer(e1, e2).ravel())
