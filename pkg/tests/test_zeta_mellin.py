"""Cutoff transforms, strip zeta values, and the truncated contour formula."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from liouville_lab import arith_core as ac
from liouville_lab import zeta_mellin as zm

import oracles


def test_smooth_cutoff_rejects_bad_delta():
    with pytest.raises(ValueError):
        zm.SmoothCutoff(0.0)
    with pytest.raises(ValueError):
        zm.SmoothCutoff(0.5)


def test_psi_delta_ramp_shape():
    c = zm.SmoothCutoff(0.2)
    assert zm.psi_delta(0.3, c) == 1.0
    assert zm.psi_delta(0.8, c) == 1.0
    assert zm.psi_delta(0.9, c) == pytest.approx(0.5)
    assert zm.psi_delta(1.0, c) == 0.0
    assert zm.psi_delta(7.0, c) == 0.0


@given(st.floats(min_value=0.01, max_value=0.49),
       st.floats(min_value=1e-6, max_value=3.0))
@settings(max_examples=200, deadline=None)
def test_psi_delta_range_and_monotone(delta, x):
    c = zm.SmoothCutoff(delta)
    v = zm.psi_delta(x, c)
    assert 0.0 <= v <= 1.0
    assert zm.psi_delta(x + 1e-9, c) <= v + 1e-12


def test_mellin_psi_frozen_value():
    # delta = 0.1 at s = 2: (1 - 0.9^3) / (2 * 3 * 0.1) = 0.271/0.6
    c = zm.SmoothCutoff(0.1)
    assert zm.mellin_psi(2.0, c) == pytest.approx(0.271 / 0.6, rel=1e-14)


def test_mellin_psi_matches_quadrature():
    # flat piece integrates to (1-delta)^s / s in closed form; only the
    # short ramp piece needs quadrature, and it does not oscillate
    c = zm.SmoothCutoff(0.3)
    d = c.delta
    us = np.linspace(1.0 - d, 1.0, 200001)
    dt = float(us[1] - us[0])
    for s in (1.7 + 0.0j, 2.0 + 3.0j, 1.2 - 5.0j):
        flat = (1.0 - d) ** s / s
        ramp_vals = ((1.0 - us) / d) * us ** (s - 1)
        ramp = oracles.trapezoid_complex(ramp_vals, dt)
        assert abs(flat + ramp - zm.mellin_psi(s, c)) < 1e-9


@given(st.floats(min_value=0.02, max_value=0.45),
       st.floats(min_value=0.5, max_value=3.0),
       st.floats(min_value=-80.0, max_value=80.0))
@settings(max_examples=150, deadline=None)
def test_mellin_bound_dominates(delta, sigma, t):
    c = zm.SmoothCutoff(delta)
    s = complex(sigma, t)
    assert abs(zm.mellin_psi(s, c)) <= zm.mellin_psi_bound(s, c) * (1 + 1e-12)


def test_zeta_even_integers_exact():
    assert zm.zeta_strip(2.0) == pytest.approx(math.pi**2 / 6, abs=1e-12)
    assert zm.zeta_strip(4.0) == pytest.approx(math.pi**4 / 90, abs=1e-12)


def test_zeta_strip_against_series_tail_oracle():
    # independent truncation: plain series + integral tail + half term
    def series_tail(sig, N):
        head = math.fsum(n ** -sig for n in range(1, N + 1))
        return head + N ** (1 - sig) / (sig - 1) - 0.5 * N**-sig \
            + sig / 12.0 * N ** (-sig - 1)

    for sig in (1.5, 2.0, 3.0):
        ref = series_tail(sig, 40000)
        assert zm.zeta_strip(sig).real == pytest.approx(ref, abs=1e-8)
        assert abs(zm.zeta_strip(sig).imag) < 1e-15


def test_zeta_strip_against_mpmath_off_axis():
    for s in (0.5 + 14.1347j, 1.1 + 3.0j, 2.0 + 100.0j, 0.75 - 0.5j):
        ref = complex(mpmath.zeta(s))
        assert abs(zm.zeta_strip(s) - ref) < 1e-10


def test_zeta_strip_grid_matches_scalar():
    ts = np.array([0.5, 2.0, 37.0])
    grid = zm.zeta_strip_grid(1.3, ts, 3000)
    for t, v in zip(ts, grid):
        assert abs(v - zm.zeta_strip(complex(1.3, t), terms=3000)) < 1e-13


def test_zeta_strip_domain_errors():
    with pytest.raises(ValueError):
        zm.zeta_strip(1.0)
    with pytest.raises(ValueError):
        zm.zeta_strip(-0.2 + 3.0j)


def test_z_lambda_residual_small():
    # sum lambda(n) n^{-2} converges to zeta(4)/zeta(2) = pi^2/15
    assert zm.z_lambda_residual(2.0, 10**5) < 1e-3
    # explicit series cross-check
    lam = ac.liouville_range(1, 10**5 + 1).astype(np.float64)
    n = np.arange(1, 10**5 + 1, dtype=np.float64)
    series = float(np.dot(lam, n**-2.0))
    assert series == pytest.approx(math.pi**2 / 15, abs=1e-3)


def test_z_lambda_residual_needs_halfplane():
    with pytest.raises(ValueError):
        zm.z_lambda_residual(1.0, 100)


def test_perron_unit_kind_tracks_integral():
    pr = zm.perron_truncated("unit", 500.0, zm.SmoothCutoff(0.2), 120.0)
    assert abs(pr.integral - pr.smoothed_sum) <= pr.envelope
    assert pr.halving_delta < 1e-4
    # ramp only reweights n in (x(1-delta), x], so the sharp sum is close
    assert abs(pr.sharp_sum - pr.smoothed_sum) <= 0.2 * 500.0 + 1.0


def test_perron_liouville_envelope_and_halving():
    pr = zm.perron_truncated("liouville", 800.0, zm.SmoothCutoff(0.1), 150.0)
    assert abs(pr.integral - pr.smoothed_sum) <= pr.envelope
    assert pr.halving_delta < 1e-4
    assert abs(pr.integral.imag) < 1e-9


def test_perron_smoothed_sum_is_weighted_partial_sum():
    x, c = 300.0, zm.SmoothCutoff(0.25)
    pr = zm.perron_truncated("liouville", x, c, 80.0)
    lam = ac.liouville_range(1, int(x) + 1)
    direct = math.fsum(int(lam[n - 1]) * zm.psi_delta(n / x, c)
                       for n in range(1, int(x) + 1))
    assert pr.smoothed_sum == pytest.approx(direct, abs=1e-9)
    sharp = int(ac.summatory_lambda(int(x)))
    assert pr.sharp_sum == sharp
