import numpy as np
import pytest

from fibspec import (Point3, apply_map, escapes, fibonacci_number, half_traces,
                     sigma_bands, spectral_line, spectrum_cover)
from fibspec.spectrum import band_hierarchy

from oracles import dense_band_count


def test_fibonacci_degrees():
    assert [fibonacci_number(k) for k in range(9)] == [1, 1, 2, 3, 5, 8, 13, 21, 34]


def test_half_traces_fixed_point():
    seq = half_traces(0.0, 2.0, 20)
    assert all(seq.x(k) == 1.0 for k in range(-1, 21))
    assert seq.escaped_at is None


def test_half_traces_immediate_escape():
    seq = half_traces(1.0, 100.0, 10)
    assert seq.escaped_at == 0


def test_half_traces_hand_iteration():
    seq = half_traces(4.0, 0.0, 6)
    assert [seq.x(k) for k in range(-1, 5)] == [1.0, 0.0, -2.0, -1.0, 4.0, -6.0]


def test_half_traces_recursion_holds():
    seq = half_traces(2.5, 1.3, 15)
    for k in range(1, seq.last_index):
        assert seq.x(k + 1) == pytest.approx(
            2 * seq.x(k) * seq.x(k - 1) - seq.x(k - 2), rel=1e-12)


def test_escape_examples():
    assert escapes(1.0, 10.0).escaped
    assert not escapes(0.0, 0.0, K=200).escaped
    res = escapes(4.0, 0.0)
    assert res.escaped and res.index <= 5


def test_recursion_is_the_map_on_the_line():
    """(x_{k+1}, x_k, x_{k-1}) must track f^k applied to the line point."""
    rng = np.random.default_rng(11)
    for _ in range(25):
        lam = rng.uniform(0.2, 6.0)
        E = rng.uniform(-2 - lam, 2 + lam)
        seq = half_traces(lam, E, 12)
        p = spectral_line(lam, E)
        for k in range(0, min(10, seq.last_index) - 1):
            triple = (seq.x(k + 1), seq.x(k), seq.x(k - 1))
            if max(abs(t) for t in triple) > 1e10:
                break
            assert np.allclose(triple, tuple(p), rtol=1e-10, atol=1e-10)
            p = apply_map(p)


def test_sigma_band_examples():
    assert np.allclose(sigma_bands(7.3, 0).pairs(), [[-2.0, 2.0]], atol=1e-10)
    assert np.allclose(sigma_bands(3.0, 1).pairs(), [[1.0, 5.0]], atol=1e-10)
    assert len(sigma_bands(5.0, 6)) == 13


def test_band_endpoints_solve_unit_half_trace():
    for lo, hi in sigma_bands(5.0, 5).pairs():
        for e in (lo, hi):
            seq = half_traces(5.0, e, 5)
            assert abs(abs(seq.x(5)) - 1.0) < 1e-9


def test_cover_examples():
    assert np.allclose(spectrum_cover(3.0, 0).cover.pairs(), [[-2.0, 5.0]],
                       atol=1e-10)
    assert np.allclose(spectrum_cover(5.0, 0).cover.pairs(),
                       [[-2.0, 2.0], [3.0, 7.0]], atol=1e-10)


def test_cover_length_decreases():
    assert (spectrum_cover(5.0, 10).cover.total_length
            < spectrum_cover(5.0, 8).cover.total_length)


def test_band_counts_match_dense_oracle():
    for lam, k in ((5.0, 8), (6.0, 7)):
        assert len(sigma_bands(lam, k)) == fibonacci_number(k) == dense_band_count(lam, k)


def test_bands_inside_operator_norm_interval():
    for lam in (0.5, 2.0, 8.0):
        for k in (3, 6):
            lo, hi = sigma_bands(lam, k).hull
            assert lo >= -2 - lam - 1e-9
            assert hi <= 2 + lam + 1e-9


def test_cover_nesting():
    for lam in (2.0, 5.0):
        hier = band_hierarchy(lam, 9)
        for k in range(8):
            outer = hier[k].union(hier[k + 1]).dilate(1e-9)
            inner = hier[k + 1].union(hier[k + 2])
            assert outer.covers(inner)


def test_hierarchy_consistent_with_direct_bands():
    hier = band_hierarchy(5.0, 7)
    for k in range(8):
        direct = sigma_bands(5.0, k)
        assert len(direct) == len(hier[k])
        assert np.allclose(direct.lo, hier[k].lo, atol=1e-9)
        assert np.allclose(direct.hi, hier[k].hi, atol=1e-9)


def test_merged_bands_accepted_at_small_coupling():
    """Below coupling 4 bands may touch and merge; the finder must accept
    a short count instead of failing certification."""
    bands = sigma_bands(0.3, 8)
    assert 1 <= len(bands) < fibonacci_number(8)
