"""Independent slow-path oracles used to cross-check the library.

Everything here is deliberately naive: brute-force grids and literal
recursions, no reuse of the library's band-finding or word logic.
"""

import numpy as np

from fibspec import multiplier_p_closed, multiplier_q_closed


def dense_band_count(lam: float, k: int, refine: int = 64,
                     chunk: int = 8_000_000) -> int:
    """Count runs of {E : |x_k(E)| <= 1} on a dense uniform grid.

    The step is the narrowest plausible band width (set by the larger
    closed-form orbit multiplier per refinement level) divided by
    ``refine``, so every band holds many grid points.  Runs are counted
    chunk-by-chunk to keep memory flat.
    """
    a = lam * lam / 4.0
    m = max(multiplier_p_closed(a) ** 0.25, multiplier_q_closed(a) ** (1.0 / 6.0))
    span = 4.0 + lam
    step = span * m ** -k / refine
    lo, hi = -2.0 - lam, 2.0 + lam
    total = int(np.ceil((hi - lo) / step)) + 1

    runs = 0
    prev_inside = False
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.float64)
        E = lo + idx * step
        xm2 = np.ones_like(E)
        xm1 = E / 2.0
        xc = (E - lam) / 2.0
        if k == 0:
            xc = xm1
        else:
            for _ in range(2, k + 1):
                xm2, xm1, xc = xm1, xc, 2.0 * xc * xm1 - xm2
        inside = np.abs(xc) <= 1.0
        first = np.concatenate(([prev_inside], inside[:-1]))
        runs += int(np.sum(inside & ~first))
        prev_inside = bool(inside[-1])
    return runs


def substitution_word(n: int) -> list[int]:
    """First n letters of the fixed point of 1 -> 10, 0 -> 1, seeded at 1."""
    w = [1]
    while len(w) < n:
        w = [s for c in w for s in ((1, 0) if c == 1 else (1,))]
    return w[:n]
