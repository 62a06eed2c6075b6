"""Normalized finite unions of closed intervals on the real line.

IntervalSet is the lingua franca between the band finder, the dimension
estimators, the Minkowski-sum machinery and the IFS sandbox.  The
normal form is: components sorted by left endpoint, pairwise disjoint,
with touching endpoints merged (so hi[i] < lo[i+1] strictly).  Degenerate
single-point components [a, a] are legal and preserved unless a merge
swallows them.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


class IntervalSet:
    """Immutable normalized union of closed intervals."""

    __slots__ = ("lo", "hi")

    def __init__(self, pairs: Iterable[tuple[float, float]] | np.ndarray = ()):
        arr = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs, dtype=float)
        if arr.size == 0:
            lo = np.empty(0)
            hi = np.empty(0)
        else:
            if arr.ndim != 2 or arr.shape[1] != 2:
                raise ValueError("expected pairs of endpoints")
            lo, hi = _normalize(arr[:, 0].copy(), arr[:, 1].copy())
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    # The constructor sweeps unconditionally; this trusts presorted data.
    @classmethod
    def _from_normalized(cls, lo: np.ndarray, hi: np.ndarray) -> "IntervalSet":
        self = object.__new__(cls)
        lo = np.ascontiguousarray(lo, dtype=float)
        hi = np.ascontiguousarray(hi, dtype=float)
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        return self

    @classmethod
    def from_arrays(cls, lo: np.ndarray, hi: np.ndarray) -> "IntervalSet":
        lo2, hi2 = _normalize(np.asarray(lo, dtype=float).copy(), np.asarray(hi, dtype=float).copy())
        return cls._from_normalized(lo2, hi2)

    @classmethod
    def point(cls, x: float) -> "IntervalSet":
        return cls([(x, x)])

    # -- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return int(self.lo.size)

    def __bool__(self) -> bool:
        return self.lo.size > 0

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return iter(zip(self.lo.tolist(), self.hi.tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return (
            self.lo.shape == other.lo.shape
            and bool(np.all(self.lo == other.lo))
            and bool(np.all(self.hi == other.hi))
        )

    def __hash__(self):
        return hash((self.lo.tobytes(), self.hi.tobytes()))

    def __repr__(self) -> str:
        if len(self) <= 4:
            body = ", ".join(f"[{a:g}, {b:g}]" for a, b in self)
        else:
            body = f"[{self.lo[0]:g}, {self.hi[0]:g}], ... , [{self.lo[-1]:g}, {self.hi[-1]:g}] ({len(self)} parts)"
        return f"IntervalSet({body})"

    def pairs(self) -> list[list[float]]:
        """Endpoint pairs as plain lists (JSON-friendly)."""
        return [[a, b] for a, b in zip(self.lo.tolist(), self.hi.tolist())]

    @property
    def lengths(self) -> np.ndarray:
        return self.hi - self.lo

    @property
    def total_length(self) -> float:
        return float(np.sum(self.hi - self.lo))

    @property
    def span(self) -> float:
        """Diameter of the convex hull (0 for the empty set)."""
        if not self:
            return 0.0
        return float(self.hi[-1] - self.lo[0])

    @property
    def hull(self) -> tuple[float, float]:
        if not self:
            raise ValueError("empty interval set has no hull")
        return float(self.lo[0]), float(self.hi[-1])

    @property
    def max_length(self) -> float:
        return float(np.max(self.hi - self.lo)) if self else 0.0

    def contains_point(self, x: float) -> bool:
        i = int(np.searchsorted(self.lo, x, side="right")) - 1
        return i >= 0 and x <= self.hi[i]

    def contains_points(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized closed-set membership for an array of reals."""
        xs = np.asarray(xs, dtype=float)
        idx = np.searchsorted(self.lo, xs, side="right") - 1
        ok = idx >= 0
        safe = np.where(ok, idx, 0)
        return ok & (xs <= self.hi[safe])

    # -- constructive ops ------------------------------------------------

    def union(self, other: "IntervalSet") -> "IntervalSet":
        if not self:
            return other
        if not other:
            return self
        lo = np.concatenate([self.lo, other.lo])
        hi = np.concatenate([self.hi, other.hi])
        return IntervalSet.from_arrays(lo, hi)

    def translate(self, t: float) -> "IntervalSet":
        return IntervalSet._from_normalized(self.lo + t, self.hi + t)

    def dilate(self, eps: float) -> "IntervalSet":
        """Closed eps-neighborhood (components may merge)."""
        if eps < 0:
            raise ValueError("dilation must be >= 0")
        if not self:
            return self
        return IntervalSet.from_arrays(self.lo - eps, self.hi + eps)

    def covers(self, other: "IntervalSet", slack: float = 0.0) -> bool:
        """True if every component of ``other`` fits inside one component
        of self dilated by ``slack``."""
        if not other:
            return True
        if not self:
            return False
        idx = np.searchsorted(self.lo - slack, other.lo, side="right") - 1
        if np.any(idx < 0):
            return False
        return bool(np.all(other.hi <= self.hi[idx] + slack))


def _normalize(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if lo.ndim != 1 or lo.shape != hi.shape:
        raise ValueError("endpoint arrays must be 1-d and equal length")
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
        raise ValueError("interval endpoints must be finite")
    if np.any(hi < lo):
        j = int(np.argmax(hi < lo))
        raise ValueError(f"reversed interval [{lo[j]}, {hi[j]}]")
    order = np.argsort(lo, kind="stable")
    lo = lo[order]
    hi = hi[order]
    if lo.size <= 1:
        return lo, hi
    # Components start wherever the left endpoint clears every right
    # endpoint seen so far; touching intervals therefore merge.
    run_hi = np.maximum.accumulate(hi)
    starts = np.empty(lo.size, dtype=bool)
    starts[0] = True
    starts[1:] = lo[1:] > run_hi[:-1]
    first = np.flatnonzero(starts)
    out_lo = lo[first]
    out_hi = np.maximum.reduceat(hi, first)
    return out_lo, out_hi
