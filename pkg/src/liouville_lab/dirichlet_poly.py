"""Finite Dirichlet polynomials: evaluation, mean values over t-ranges,
integrals over sparse t-sets, powers of prime-supported polynomials, and
grid measures of large-value sets.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import arith_core
from .util import QuadratureError, check_mul64, fsum, fsum_complex

MAX_POWER = 12


@dataclass
class CoeffSeq:
    """Coefficients a_n for n in (support_lo, support_hi], dense storage."""

    support_lo: int
    support_hi: int
    values: np.ndarray

    def __post_init__(self):
        if not 0 <= self.support_lo < self.support_hi:
            raise ValueError("need 0 <= support_lo < support_hi")
        self.values = np.asarray(self.values, dtype=np.complex128)
        if len(self.values) != self.support_hi - self.support_lo:
            raise ValueError("values length must match the support")

    @property
    def n_array(self):
        return np.arange(self.support_lo + 1, self.support_hi + 1, dtype=np.float64)

    @property
    def max_abs(self):
        return float(np.max(np.abs(self.values))) if len(self.values) else 0.0

    @property
    def sum_sq(self):
        return fsum(np.abs(self.values) ** 2)


def coeffs_from_dict(mapping):
    lo = min(mapping) - 1
    hi = max(mapping)
    vals = np.zeros(hi - lo, dtype=np.complex128)
    for n, a in mapping.items():
        vals[n - lo - 1] = a
    return CoeffSeq(lo, hi, vals)


def prime_band_coeffs(Q, delta, weight="reciprocal", sign="liouville"):
    """Coefficients supported on primes p in (Q, (1+delta)Q].

    weight 'reciprocal' stores sign(p)/p (vertical-line values folded in),
    'unit' stores sign(p). sign 'liouville' gives -1 at primes, 'plus' +1.
    """
    lo = int(math.floor(Q))
    hi = int(math.floor((1.0 + delta) * Q))
    plist = arith_core.primes_upto(max(hi, 2)).primes
    plist = plist[(plist > Q) & (plist <= hi)]
    # a band holding no integer still yields a valid all-zero sequence
    hi = max(hi, lo + 1)
    vals = np.zeros(hi - lo, dtype=np.complex128)
    s = -1.0 if sign == "liouville" else 1.0
    for p in plist:
        a = s / p if weight == "reciprocal" else s
        vals[int(p) - lo - 1] = a
    return CoeffSeq(lo, hi, vals)


@dataclass
class TGrid:
    """Uniform t-grid on [t0, t1] with step small enough for the polynomial
    it samples: step <= pi / (4 log support_hi)."""

    t0: float
    t1: float
    step: float

    def __post_init__(self):
        if not (self.t1 > self.t0 and self.step > 0):
            raise ValueError("need t1 > t0 and step > 0")

    def nodes(self):
        n = int(math.ceil((self.t1 - self.t0) / self.step)) + 1
        return np.linspace(self.t0, self.t1, n)

    def check_for(self, coeffs):
        limit = math.pi / (4.0 * math.log(max(coeffs.support_hi, 3)))
        if self.step > limit * (1 + 1e-12):
            raise ValueError(
                "grid step %.4g too coarse for support %d (limit %.4g)"
                % (self.step, coeffs.support_hi, limit)
            )


@dataclass
class TSubset:
    """Disjoint ascending intervals inside [0, limit]."""

    intervals: list
    limit: float

    def __post_init__(self):
        prev = 0.0
        for a, b in self.intervals:
            if a < prev - 1e-12 or b <= a or b > self.limit + 1e-12:
                raise ValueError("intervals must be disjoint, ascending, in range")
            prev = b

    @property
    def measure(self):
        return math.fsum(b - a for a, b in self.intervals)


def evaluate(coeffs, t):
    """sum of a_n n^{it} over the support, exactly rounded accumulation."""
    phases = np.exp(1j * float(t) * np.log(coeffs.n_array))
    return fsum_complex(coeffs.values * phases)


def _grid_values(coeffs, ts):
    """Vector of sum a_n n^{it} on a t-array, chunked."""
    logn = np.log(coeffs.n_array)
    vals = coeffs.values
    out = np.empty(len(ts), dtype=np.complex128)
    chunk = max(1, (1 << 22) // max(len(logn), 1))
    for a in range(0, len(ts), chunk):
        b = min(a + chunk, len(ts))
        phases = np.exp(1j * np.multiply.outer(ts[a:b], logn))
        out[a:b] = phases @ vals
    return out


def _trap(vals, dt):
    w = np.ones(len(vals))
    w[0] = w[-1] = 0.5
    return float(np.dot(w, vals)) * dt


@dataclass
class MeanValueResult:
    value: float
    ratio: float
    halving_delta: float
    sum_sq: float


def mean_value_integral(coeffs, T, rel_tol=1e-3):
    """integral_0^T |sum a_n n^{it}|^2 dt by certified trapezoid quadrature.

    The fine grid runs at half the step limit pi/(4 log support_hi); the
    coarse pass reuses alternate nodes, and the two must agree to rel_tol.
    Returns the value and the ratio (value - T sum|a|^2) / (N sum|a|^2).
    """
    T = float(T)
    if T <= 0:
        raise ValueError("T must be positive")
    step = math.pi / (4.0 * math.log(max(coeffs.support_hi, 3)))
    half_nodes = int(math.ceil(T / step)) + 1
    fine_n = 2 * (half_nodes - 1) + 1
    ts = np.linspace(0.0, T, fine_n)
    sq = np.abs(_grid_values(coeffs, ts)) ** 2
    dt = ts[1] - ts[0]
    fine = _trap(sq, dt)
    coarse = _trap(sq[::2], 2 * dt)
    scale = max(abs(fine), 1e-300)
    halving = abs(fine - coarse) / scale
    if halving > rel_tol:
        raise QuadratureError(
            "mean value quadrature moved %.3g under halving (tol %.3g)"
            % (halving, rel_tol)
        )
    ssq = coeffs.sum_sq
    N = coeffs.support_hi
    ratio = (fine - T * ssq) / (N * ssq) if ssq > 0 else 0.0
    return MeanValueResult(fine, ratio, halving, ssq)


@dataclass
class HalaszResult:
    value: float
    bound: float
    measure: float
    halving_delta: float


def halasz_subset_integral(coeffs, subset, slack=10.0, rel_tol=1e-3):
    """integral of |sum a_n n^{it}|^2 over a union of t-intervals.

    Reports the sparse-set envelope
    slack * (N + measure * sqrt(T) log T) * sum|a|^2 with T = subset.limit.
    """
    step = math.pi / (4.0 * math.log(max(coeffs.support_hi, 3)))
    total_fine = 0.0
    total_coarse = 0.0
    for a, b in subset.intervals:
        n = 2 * max(int(math.ceil((b - a) / step)), 1) + 1
        ts = np.linspace(a, b, n)
        sq = np.abs(_grid_values(coeffs, ts)) ** 2
        dt = ts[1] - ts[0]
        total_fine += _trap(sq, dt)
        total_coarse += _trap(sq[::2], 2 * dt)
    scale = max(abs(total_fine), 1e-300)
    halving = abs(total_fine - total_coarse) / scale
    if halving > rel_tol:
        raise QuadratureError("subset quadrature failed halving certification")
    T = subset.limit
    ssq = coeffs.sum_sq
    bound = slack * (coeffs.support_hi + subset.measure * math.sqrt(T) * math.log(max(T, 2.0))) * ssq
    return HalaszResult(total_fine, bound, subset.measure, halving)


def prime_dirichlet_sum(Q, delta, t):
    """sum over primes Q < p <= (1+delta)Q of p^{-1-it}."""
    hi = int(math.floor((1.0 + delta) * Q))
    plist = arith_core.primes_upto(hi).primes
    plist = plist[plist > Q].astype(np.float64)
    if len(plist) == 0:
        return 0j
    vals = np.exp((-1.0 - 1j * float(t)) * np.log(plist))
    return fsum_complex(vals)


def raise_power(coeffs, ell):
    """ell-fold Dirichlet self-convolution of a prime-supported sequence.

    Support lands in (lo^ell, hi^ell]; coefficient magnitudes stay below
    ell! when the base values are bounded by 1. Hard 64-bit support check.
    """
    if not 1 <= ell <= MAX_POWER:
        raise ValueError("ell must lie in 1..%d" % MAX_POWER)
    check_mul64(*([coeffs.support_hi] * ell))
    base = {}
    for i, a in enumerate(coeffs.values):
        if a != 0:
            base[coeffs.support_lo + 1 + i] = complex(a)
    acc = {1: 1.0 + 0j}
    for _ in range(ell):
        nxt = {}
        for n, an in acc.items():
            for p, ap in base.items():
                key = n * p
                nxt[key] = nxt.get(key, 0j) + an * ap
        acc = nxt
    lo = coeffs.support_lo**ell
    hi = coeffs.support_hi**ell
    vals = np.zeros(hi - lo, dtype=np.complex128)
    for n, a in acc.items():
        vals[n - lo - 1] = a
    return CoeffSeq(lo, hi, vals)


@dataclass
class LargeValueReport:
    measure: float
    threshold: float
    bound: float
    cells: int


def large_value_measure(coeffs, T, gamma, slack=50.0):
    """Grid measure of {t in [0,T] : |sum a_n n^{it}| > Q^{-gamma}}.

    Q is the support floor. A cell joins the set when the polynomial
    exceeds the threshold at its midpoint or either endpoint, which makes
    the reported measure an over-cover of the sampled set. Envelope
    slack * T^{4/9}.
    """
    Q = coeffs.support_lo
    if Q < 2:
        raise ValueError("prime-band support must start above 1")
    threshold = Q ** (-gamma)
    step = math.pi / (4.0 * math.log(max(coeffs.support_hi, 3)))
    cells = max(int(math.ceil(T / step)), 1)
    ts = np.linspace(0.0, T, 2 * cells + 1)  # endpoints and midpoints
    mod = np.abs(_grid_values(coeffs, ts))
    exceed = mod > threshold
    cell_hit = exceed[0:-2:2] | exceed[1::2] | exceed[2::2]
    dt = T / cells
    measure = float(np.count_nonzero(cell_hit)) * dt
    return LargeValueReport(measure, threshold, slack * T ** (4.0 / 9.0), int(np.count_nonzero(cell_hit)))


@dataclass
class TypicalSet:
    A: int
    gamma: float
    alpha: float
    delta: float
    cell_edges: np.ndarray
    mask: np.ndarray     # True where every band polynomial stays small

    @property
    def complement_measure(self):
        widths = np.diff(self.cell_edges)
        return float(np.dot(widths, ~self.mask))


def typical_set(A, gamma, alpha, delta, t0, t1, step=None):
    """Cells of [t0, t1] where |Z_Q(1+it)| <= Q^{-gamma} for every integer
    Q in [A^alpha, A], with Z_Q the Liouville prime-band polynomial."""
    A = int(A)
    q_lo = max(2, int(math.ceil(A**alpha)))
    if q_lo > A:
        raise ValueError("empty Q-range")
    if step is None:
        step = math.pi / (4.0 * math.log((1.0 + delta) * A + 2))
    cells = max(int(math.ceil((t1 - t0) / step)), 1)
    edges = np.linspace(t0, t1, cells + 1)
    ts = np.linspace(t0, t1, 2 * cells + 1)
    mask = np.ones(cells, dtype=bool)
    for Q in range(q_lo, A + 1):
        coeffs = prime_band_coeffs(Q, delta, weight="reciprocal", sign="liouville")
        if not np.any(coeffs.values):
            continue
        mod = np.abs(_grid_values(coeffs, ts))
        exceed = mod > Q ** (-gamma)
        bad = exceed[0:-2:2] | exceed[1::2] | exceed[2::2]
        mask &= ~bad
    return TypicalSet(A, gamma, alpha, delta, edges, mask)


def kernel_sum_bound_check(x, t, kind, C=10.0):
    """Modulus of a unit-coefficient polynomial against its decay envelope.

    kind 'smooth' weights n by the tent (1 on (0,1], 2-u on (1,2]) at n/x
    and checks C (x/(1+|t|)^2 + sqrt|t| log(1+|t|)); kind 'sharp' sums
    n <= x against C (x/(1+|t|) + sqrt|t| log(1+|t|)).
    """
    x = float(x)
    t = float(t)
    if kind == "smooth":
        n = np.arange(1, int(math.floor(2 * x)) + 1, dtype=np.float64)
        u = n / x
        w = np.where(u <= 1.0, 1.0, 2.0 - u)
        w = np.clip(w, 0.0, 1.0)
        val = abs(fsum_complex(w * np.exp(1j * t * np.log(n))))
        bound = C * (x / (1.0 + abs(t)) ** 2 + math.sqrt(abs(t)) * math.log1p(abs(t)))
    elif kind == "sharp":
        n = np.arange(1, int(math.floor(x)) + 1, dtype=np.float64)
        val = abs(fsum_complex(np.exp(1j * t * np.log(n))))
        bound = C * (x / (1.0 + abs(t)) + math.sqrt(abs(t)) * math.log1p(abs(t)))
    else:
        raise ValueError("kind must be 'smooth' or 'sharp'")
    return val, bound
