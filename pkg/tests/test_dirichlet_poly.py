"""Dirichlet polynomial grids, mean values, and large-value measures."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from liouville_lab import dirichlet_poly as dp
from liouville_lab.util import QuadratureError

import oracles


def test_coeff_seq_validation():
    with pytest.raises(ValueError):
        dp.CoeffSeq(5, 5, np.zeros(0))
    with pytest.raises(ValueError):
        dp.CoeffSeq(-1, 4, np.zeros(5))
    with pytest.raises(ValueError):
        dp.CoeffSeq(0, 4, np.zeros(5))


def test_coeff_seq_support_is_lo_exclusive():
    c = dp.CoeffSeq(10, 13, np.array([1.0, 2.0, 3.0]))
    assert c.n_array.tolist() == [11.0, 12.0, 13.0]
    assert c.sum_sq == pytest.approx(14.0)
    assert c.max_abs == 3.0


def test_coeffs_from_dict_round_trip():
    c = dp.coeffs_from_dict({3: 1.0 + 2.0j, 7: -1.0})
    assert c.support_lo == 2 and c.support_hi == 7
    assert c.values[0] == 1.0 + 2.0j
    assert c.values[-1] == -1.0
    assert np.count_nonzero(c.values) == 2


def test_prime_band_coeffs_frozen():
    c = dp.prime_band_coeffs(10, 1.0, weight="reciprocal", sign="liouville")
    nz = {int(n): v for n, v in zip(c.n_array, c.values) if v != 0}
    assert sorted(nz) == [11, 13, 17, 19]
    assert nz[11] == pytest.approx(-1 / 11)
    assert nz[19] == pytest.approx(-1 / 19)
    c2 = dp.prime_band_coeffs(10, 1.0, weight="unit", sign="plus")
    assert sorted(int(n) for n, v in zip(c2.n_array, c2.values) if v != 0) \
        == [11, 13, 17, 19]
    assert set(c2.values[c2.values != 0].tolist()) == {1.0 + 0j}


def test_prime_dirichlet_sum_frozen():
    # 1/11 + 1/13 + 1/17 + 1/19
    want = 1 / 11 + 1 / 13 + 1 / 17 + 1 / 19
    assert dp.prime_dirichlet_sum(10, 1.0, 0.0) == pytest.approx(want, rel=1e-14)
    assert dp.prime_dirichlet_sum(10, 0.05, 0.0) == 0j  # (10, 10.5] holds none


def test_evaluate_matches_direct_loop():
    c = dp.coeffs_from_dict({2: 1.0, 3: -2.0j, 10: 0.5})
    for t in (0.0, 1.7, -23.0):
        direct = sum(a * complex(n) ** complex(0, t)
                     for n, a in {2: 1.0, 3: -2.0j, 10: 0.5}.items())
        assert abs(dp.evaluate(c, t) - direct) < 1e-12


def test_tgrid_step_rule():
    c = dp.CoeffSeq(0, 100, np.ones(100))
    ok = dp.TGrid(0.0, 10.0, math.pi / (4 * math.log(100)))
    ok.check_for(c)
    with pytest.raises(ValueError):
        dp.TGrid(0.0, 10.0, 1.0).check_for(c)
    with pytest.raises(ValueError):
        dp.TGrid(3.0, 3.0, 0.1)


def test_tsubset_validation_and_measure():
    sub = dp.TSubset([(0.0, 1.0), (2.0, 4.5)], 10.0)
    assert sub.measure == pytest.approx(3.5)
    with pytest.raises(ValueError):
        dp.TSubset([(1.0, 0.5)], 10.0)
    with pytest.raises(ValueError):
        dp.TSubset([(0.0, 2.0), (1.0, 3.0)], 10.0)
    with pytest.raises(ValueError):
        dp.TSubset([(0.0, 11.0)], 10.0)


def test_mean_value_against_closed_form():
    rng = np.random.default_rng(11)
    for _ in range(4):
        a = rng.normal(size=40) + 1j * rng.normal(size=40)
        c = dp.CoeffSeq(0, 40, a)
        for T in (25.0, 160.0):
            mv = dp.mean_value_integral(c, T)
            ref = oracles.mean_value_closed_form(a, T)
            assert mv.value == pytest.approx(ref, rel=5e-4)
            assert mv.halving_delta < 1e-3


def test_mean_value_ratio_envelope():
    # |integral - T sum|a|^2| <= 8 N sum|a|^2 for unimodular coefficients
    rng = np.random.default_rng(5)
    for _ in range(5):
        a = np.exp(2j * math.pi * rng.random(120))
        c = dp.CoeffSeq(0, 120, a)
        for T in (60.0, 700.0):
            mv = dp.mean_value_integral(c, T)
            assert abs(mv.ratio) <= 8.0


def test_mean_value_rejects_bad_T():
    c = dp.CoeffSeq(0, 4, np.ones(4))
    with pytest.raises(ValueError):
        dp.mean_value_integral(c, 0.0)


def test_halasz_subset_bound_holds():
    rng = np.random.default_rng(3)
    a = np.exp(2j * math.pi * rng.random(80))
    c = dp.CoeffSeq(0, 80, a)
    sub = dp.TSubset([(0.0, 5.0), (40.0, 44.0), (120.0, 121.0)], 200.0)
    hs = dp.halasz_subset_integral(c, sub)
    assert hs.value <= hs.bound
    assert hs.measure == pytest.approx(10.0)
    assert hs.halving_delta < 1e-3


def test_halasz_value_matches_mean_value_on_prefix():
    # the subset [0, T] must reproduce the full mean value integral
    rng = np.random.default_rng(9)
    a = rng.normal(size=30).astype(complex)
    c = dp.CoeffSeq(0, 30, a)
    T = 30.0
    hs = dp.halasz_subset_integral(c, dp.TSubset([(0.0, T)], T))
    mv = dp.mean_value_integral(c, T)
    assert hs.value == pytest.approx(mv.value, rel=1e-6)


def test_raise_power_square_of_prime_band():
    c = dp.prime_band_coeffs(4, 1.0, weight="unit", sign="liouville")
    sq = dp.raise_power(c, 2)
    assert sq.support_lo == 4**2 and sq.support_hi == 8**2
    nz = {int(n): v for n, v in zip(sq.n_array, sq.values) if v != 0}
    # (5, 8] holds primes 5, 7 with value -1: squares 25, 49 get 1, 35 gets 2
    assert set(nz) == {25, 35, 49}
    assert nz[25] == pytest.approx(1.0)
    assert nz[35] == pytest.approx(2.0)
    assert nz[49] == pytest.approx(1.0)


def test_raise_power_identity_and_limits():
    c = dp.prime_band_coeffs(4, 1.0, weight="unit", sign="plus")
    same = dp.raise_power(c, 1)
    assert np.allclose(same.values, c.values)
    with pytest.raises(ValueError):
        dp.raise_power(c, 0)
    with pytest.raises(ValueError):
        dp.raise_power(c, dp.MAX_POWER + 1)


def test_large_value_measure_full_cover():
    # a single unit coefficient keeps |poly| = 1 > threshold everywhere
    c = dp.coeffs_from_dict({3: 1.0})
    rep = dp.large_value_measure(c, 4.0, gamma=1.0 / 9.0)
    assert rep.measure == pytest.approx(4.0, rel=1e-9)
    assert rep.threshold == pytest.approx(2.0 ** (-1.0 / 9.0))


def test_large_value_measure_empty_set():
    # tiny coefficient never exceeds the threshold
    c = dp.coeffs_from_dict({3: 1e-6})
    rep = dp.large_value_measure(c, 4.0, gamma=1.0 / 9.0)
    assert rep.measure == 0.0
    assert rep.cells == 0
    assert rep.measure <= rep.bound


def test_large_value_measure_rejects_low_support():
    with pytest.raises(ValueError):
        dp.large_value_measure(dp.coeffs_from_dict({2: 1.0}), 1.0, 0.1)


def test_typical_set_partition_and_extremes():
    ts = dp.typical_set(20, 1.0 / 9.0, 0.5, 0.5, 0.0, 3.0)
    widths = np.diff(ts.cell_edges)
    inside = float(np.dot(widths, ts.mask))
    assert inside + ts.complement_measure == pytest.approx(3.0)
    # gamma so large every nonempty band polynomial exceeds the threshold
    hard = dp.typical_set(20, 3.0, 0.5, 0.5, 0.0, 1.0)
    assert hard.complement_measure == pytest.approx(1.0)


def test_kernel_sum_bounds_hold():
    for t in (0.0, 7.0, 300.0):
        for kind in ("smooth", "sharp"):
            val, bound = dp.kernel_sum_bound_check(200.0, t, kind)
            assert val <= bound, (kind, t)
    with pytest.raises(ValueError):
        dp.kernel_sum_bound_check(100.0, 1.0, "other")


@given(st.integers(min_value=2, max_value=60),
       st.floats(min_value=0.1, max_value=1.0))
@settings(max_examples=30, deadline=None)
def test_prime_band_support_property(Q, delta):
    c = dp.prime_band_coeffs(Q, delta, weight="unit", sign="plus")
    ns = c.n_array[np.abs(c.values) > 0].astype(int)
    for p in ns:
        assert Q < p <= (1 + delta) * Q
        assert oracles.is_prime(int(p))
    direct = [p for p in oracles.primes_upto(int((1 + delta) * Q) + 1)
              if Q < p <= (1 + delta) * Q]
    assert sorted(ns.tolist()) == direct
