"""A two-factor weight on (X, 2(1+delta)X] built from prime bands.

Each n = p m with p prime contributes the dQ/Q measure of the Q-window in
[P0, Q0] where p sits in (Q, (1+delta)Q], m sits in (X/Q, 2X/Q], and m has
no prime factor in [P0, (1+delta)Q). Normalized by log(1+delta) the weight
stays in [0, 1], agrees with the indicator of (X, 2X] off a thin error set,
and turns vertical-line sums over (X, 2X] into an integral of products of
two shorter polynomials, exactly up to the error-set term.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import arith_core
from .util import fsum_complex


@dataclass
class RamareWeight:
    """Parameters of the weight; arrays over its domain are cached."""

    X: int
    delta: float
    P0: int
    Q0: int
    _u: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not (2 <= self.P0 < self.Q0):
            raise ValueError("need 2 <= P0 < Q0")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0,1)")
        if self.X <= self.Q0:
            raise ValueError("X must exceed Q0")

    @property
    def domain_hi(self):
        """Largest n the weight can touch: 2(1+delta)X."""
        return int(math.floor(2.0 * (1.0 + self.delta) * self.X))


def _scan_band(lo, hi, P0):
    """(lam, qmin) over [lo, hi): Liouville sign and the smallest prime
    factor >= P0 (inf when none)."""
    lo, hi = int(lo), int(hi)
    base = arith_core.primes_upto(math.isqrt(hi - 1)).primes
    cof = np.arange(lo, hi, dtype=np.int64)
    omega = np.zeros(hi - lo, dtype=np.int16)
    qmin = np.full(hi - lo, np.inf)
    for p in base:
        p = int(p)
        start = (-lo) % p
        idx = np.arange(start, hi - lo, p, dtype=np.int64)
        if idx.size == 0:
            continue
        if p >= P0:
            hit = np.isinf(qmin[idx])
            qmin[idx[hit]] = p
        while idx.size:
            cof[idx] //= p
            omega[idx] += 1
            idx = idx[cof[idx] % p == 0]
    left = cof > 1
    omega[left] += 1
    big = left & np.isinf(qmin) & (cof >= P0)
    qmin[big] = cof[big]
    lam = np.where(omega & 1, -1, 1).astype(np.int8)
    if lo <= 1 < hi:
        lam[1 - lo] = 1
    return lam, qmin


def _q_window(w, p, m, qmin_m):
    """Exact dQ/Q measure of the admissible Q-window for n = p*m."""
    one = 1.0 + w.delta
    lo = max(float(w.P0), p / one, w.X / m)
    hi = min(float(w.Q0), float(p), 2.0 * w.X / m, qmin_m / one)
    if hi > lo:
        return math.log(hi / lo)
    return 0.0


def ramare_weight(w, n):
    """Weight value at a single integer n, exact closed-form measures."""
    n = int(n)
    if n < 2:
        return 0.0
    total = 0.0
    m_rest = n
    p_list = []
    d = 2
    while d * d <= m_rest:
        if m_rest % d == 0:
            p_list.append(d)
            while m_rest % d == 0:
                m_rest //= d
        d += 1 if d == 2 else 2
    if m_rest > 1:
        p_list.append(m_rest)
    one = 1.0 + w.delta
    for p in p_list:
        if not w.P0 < p <= one * w.Q0:
            continue
        m = n // p
        lam_m, qmin_m = _scan_band(m, m + 1, w.P0)
        total += _q_window(w, p, m, float(qmin_m[0]))
    return total / math.log(one)


def weight_array(w):
    """Weight values for every n in (X, 2(1+delta)X], cached on w."""
    if w._u is not None:
        return w._u
    n_lo, n_hi = w.X, w.domain_hi
    one = 1.0 + w.delta
    u = np.zeros(n_hi - n_lo, dtype=np.float64)  # index n - X - 1
    m_hi = n_hi // (w.P0 + 1) + 2
    _, qmin = _scan_band(1, m_hi, w.P0)
    band = arith_core.primes_upto(int(one * w.Q0)).primes
    band = band[band > w.P0]
    for p in band:
        p = int(p)
        first = (n_lo // p + 1) * p
        ns = np.arange(first, n_hi + 1, p, dtype=np.int64)
        if ns.size == 0:
            continue
        ms = ns // p
        qm = qmin[ms - 1]
        lo = np.maximum(np.maximum(float(w.P0), p / one), w.X / ms)
        hi = np.minimum.reduce([
            np.full(len(ms), min(float(w.Q0), float(p))),
            2.0 * w.X / ms,
            qm / one,
        ])
        good = hi > lo
        u[ns[good] - n_lo - 1] += np.log(hi[good] / lo[good])
    u /= math.log(one)
    w._u = u
    return u


@dataclass
class ErrReport:
    members: list        # (n, u) with |u - indicator| > 1e-12
    near_misses: list    # (n, u) with deviation in (1e-12, 1e-6]
    density: float


def err_set(w, tol=1e-12, near_tol=1e-6):
    """Where the weight disagrees with the indicator of (X, 2X]."""
    u = weight_array(w)
    ns = np.arange(w.X + 1, w.domain_hi + 1, dtype=np.int64)
    indicator = (ns <= 2 * w.X).astype(np.float64)
    dev = np.abs(u - indicator)
    memb_idx = np.flatnonzero(dev > tol)
    near_idx = np.flatnonzero((dev > tol) & (dev <= near_tol))
    members = [(int(ns[i]), float(u[i])) for i in memb_idx]
    near = [(int(ns[i]), float(u[i])) for i in near_idx]
    return ErrReport(members, near, len(members) / w.X)


def _z2_data(w):
    """lam and qmin over the full m-range (X/Q0, 2X/P0]."""
    m_lo = int(w.X // w.Q0)
    m_hi = int(2 * w.X // w.P0) + 1
    lam, qmin = _scan_band(max(m_lo, 1), m_hi + 1, w.P0)
    return max(m_lo, 1), lam, qmin


def factorization_identity_residual(w, t, q_nodes):
    """Residual of the band identity at s = 1 + it.

    Left side: sum over (X, 2X] of lambda(n) n^{-s} minus the error-set
    term. Right side: (1/log(1+delta)) times the midpoint log-Q quadrature
    of Z1(Q) Z2(Q) with q_nodes nodes. The integrand is piecewise constant
    in Q, so the residual is pure quadrature error and shrinks at least
    linearly as nodes double. Empty prime band gives residual <= 1e-10.
    """
    if q_nodes < 16:
        raise ValueError("q_nodes must be at least 16")
    s = 1.0 + 1j * float(t)
    one = 1.0 + w.delta

    lam_n, _ = _scan_band(w.X + 1, w.domain_hi + 1, w.P0)
    ns = np.arange(w.X + 1, w.domain_hi + 1, dtype=np.float64)
    nvals = lam_n * np.exp(-s * np.log(ns))
    lhs = fsum_complex(nvals[ns <= 2 * w.X])
    u = weight_array(w)
    indicator = (ns <= 2 * w.X).astype(np.float64)
    z_err = fsum_complex((indicator - u) * nvals)

    band = arith_core.primes_upto(int(one * w.Q0)).primes
    band = band[band > w.P0].astype(np.float64)
    m_base, lam_m, qmin_m = _z2_data(w)
    ms = np.arange(m_base, m_base + len(lam_m), dtype=np.float64)
    mvals = lam_m * np.exp(-s * np.log(ms))

    log_lo, log_hi = math.log(w.P0), math.log(w.Q0)
    du = (log_hi - log_lo) / q_nodes
    centers = np.exp(log_lo + du * (np.arange(q_nodes) + 0.5))
    acc = 0j
    pvals = -np.exp(-s * np.log(band)) if len(band) else np.zeros(0, np.complex128)
    for Q in centers:
        in_band = (band > Q) & (band <= one * Q)
        z1 = pvals[in_band].sum() if in_band.any() else 0j
        if z1 == 0:
            continue
        keep = (ms > w.X / Q) & (ms <= 2 * w.X / Q) & (qmin_m >= one * Q)
        z2 = mvals[keep].sum() if keep.any() else 0j
        acc += z1 * z2 * du
    rhs = acc / math.log(one)
    return abs(lhs - z_err - rhs)
