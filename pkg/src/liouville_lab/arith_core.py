"""Segmented factor sieves and the elementary counting functions built on them.

The central object is FactorTable: smallest prime factor, prime-factor count
(with multiplicity), Liouville sign and Mobius value for every integer in a
half-open window [lo, hi). Everything else in the package that needs lambda,
mu or Lambda values at scale goes through the segmented passes here.
"""

import math
from dataclasses import dataclass

import numpy as np

from .util import INT64_MAX, BudgetError, fsum

DEFAULT_SEGMENT = 1 << 20
SPAN_BUDGET = 1 << 26


@dataclass
class PrimeList:
    """Primes up to an inclusive bound, ascending."""

    bound: int
    primes: np.ndarray

    def __len__(self):
        return len(self.primes)


@dataclass
class FactorTable:
    """Per-integer factor data on [lo, hi)."""

    lo: int
    hi: int
    spf: np.ndarray      # smallest prime factor, 0 for n = 1
    omega: np.ndarray    # number of prime factors with multiplicity
    lam: np.ndarray      # Liouville sign (-1)^omega, int8
    mu: np.ndarray       # Mobius value, int8

    def _idx(self, n):
        if not self.lo <= n < self.hi:
            raise IndexError("n=%d outside [%d, %d)" % (n, self.lo, self.hi))
        return n - self.lo

    def liouville(self, n):
        return int(self.lam[self._idx(n)])

    def mobius(self, n):
        return int(self.mu[self._idx(n)])

    def smallest_prime_factor(self, n):
        if n < 2:
            raise ValueError("spf defined for n >= 2")
        return int(self.spf[self._idx(n)])

    def big_omega(self, n):
        return int(self.omega[self._idx(n)])


def primes_upto(bound):
    """PrimeList of all primes <= bound via boolean Eratosthenes."""
    bound = int(bound)
    if bound < 2:
        return PrimeList(bound, np.zeros(0, dtype=np.int64))
    mask = np.ones(bound + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return PrimeList(bound, np.flatnonzero(mask).astype(np.int64))


def _factor_segment(lo, hi, base_primes):
    """Factor data for one segment [lo, hi). base_primes covers sqrt(hi-1)."""
    n = np.arange(lo, hi, dtype=np.int64)
    cof = n.copy()
    omega = np.zeros(hi - lo, dtype=np.int16)
    spf = np.zeros(hi - lo, dtype=np.int64)
    sqfree = np.ones(hi - lo, dtype=bool)
    for p in base_primes:
        p = int(p)
        if p * p >= hi:
            break
        start = (-lo) % p
        idx = np.arange(start, hi - lo, p, dtype=np.int64)
        if idx.size == 0:
            continue
        spf_hit = spf[idx] == 0
        spf[idx[spf_hit]] = p
        cof[idx] //= p
        omega[idx] += 1
        again = cof[idx] % p == 0
        sqfree[idx[again]] = False
        idx = idx[again]
        while idx.size:
            cof[idx] //= p
            omega[idx] += 1
            idx = idx[cof[idx] % p == 0]
    left = cof > 1
    omega[left] += 1
    fresh = left & (spf == 0)
    spf[fresh] = cof[fresh]  # untouched survivors are prime
    if lo <= 1 < hi:
        spf[1 - lo] = 0
    lam = np.where(omega & 1, -1, 1).astype(np.int8)
    mu = np.where(sqfree, lam, 0).astype(np.int8)
    if lo <= 1 < hi:
        lam[1 - lo] = 1
        mu[1 - lo] = 1
    return spf, omega, lam, mu


def build_sieve(lo, hi, segment_len=DEFAULT_SEGMENT):
    """FactorTable over [lo, hi), processed in segments of segment_len.

    Base primes up to sqrt(hi-1) are sieved once up front. Raises
    BudgetError when the span exceeds the memory budget and OverflowError
    when hi does not fit the 64-bit invariants.
    """
    lo, hi = int(lo), int(hi)
    if not 1 <= lo < hi:
        raise ValueError("need 1 <= lo < hi")
    if hi - 1 > INT64_MAX or (math.isqrt(hi - 1) + 1) ** 2 > INT64_MAX:
        raise OverflowError("sieve range exceeds 64-bit budget")
    if hi - lo > SPAN_BUDGET:
        raise BudgetError("span %d exceeds budget %d" % (hi - lo, SPAN_BUDGET))
    base = primes_upto(math.isqrt(hi - 1)).primes
    spf = np.empty(hi - lo, dtype=np.int64)
    omega = np.empty(hi - lo, dtype=np.int16)
    lam = np.empty(hi - lo, dtype=np.int8)
    mu = np.empty(hi - lo, dtype=np.int8)
    for a in range(lo, hi, segment_len):
        b = min(a + segment_len, hi)
        s, o, l, m = _factor_segment(a, b, base)
        spf[a - lo : b - lo] = s
        omega[a - lo : b - lo] = o
        lam[a - lo : b - lo] = l
        mu[a - lo : b - lo] = m
    return FactorTable(lo, hi, spf, omega, lam, mu)


def _omega_segment(lo, hi, base_primes):
    """Parity-only pass: returns int8 Liouville signs for [lo, hi)."""
    cof = np.arange(lo, hi, dtype=np.int64)
    omega = np.zeros(hi - lo, dtype=np.int16)
    for p in base_primes:
        p = int(p)
        if p * p >= hi:
            break
        start = (-lo) % p
        idx = np.arange(start, hi - lo, p, dtype=np.int64)
        if idx.size == 0:
            continue
        while idx.size:
            cof[idx] //= p
            omega[idx] += 1
            idx = idx[cof[idx] % p == 0]
    omega[cof > 1] += 1
    lam = np.where(omega & 1, -1, 1).astype(np.int8)
    if lo <= 1 < hi:
        lam[1 - lo] = 1
    return lam


def liouville_range(lo, hi, segment_len=DEFAULT_SEGMENT):
    """int8 array of lambda(n) for n in [lo, hi); lean path for bulk scans."""
    lo, hi = int(lo), int(hi)
    if not 1 <= lo < hi:
        raise ValueError("need 1 <= lo < hi")
    if hi - lo > SPAN_BUDGET:
        raise BudgetError("span %d exceeds budget %d" % (hi - lo, SPAN_BUDGET))
    base = primes_upto(math.isqrt(hi - 1)).primes
    out = np.empty(hi - lo, dtype=np.int8)
    for a in range(lo, hi, segment_len):
        b = min(a + segment_len, hi)
        out[a - lo : b - lo] = _omega_segment(a, b, base)
    return out


def mobius_range(lo, hi, segment_len=DEFAULT_SEGMENT):
    """int8 array of mu(n) for n in [lo, hi), segmented."""
    lo, hi = int(lo), int(hi)
    if not 1 <= lo < hi:
        raise ValueError("need 1 <= lo < hi")
    if hi - lo > SPAN_BUDGET:
        raise BudgetError("span %d exceeds budget %d" % (hi - lo, SPAN_BUDGET))
    base = primes_upto(math.isqrt(hi - 1)).primes
    out = np.empty(hi - lo, dtype=np.int8)
    for a in range(lo, hi, segment_len):
        b = min(a + segment_len, hi)
        _, _, _, m = _factor_segment(a, b, base)
        out[a - lo : b - lo] = m
    return out


def von_mangoldt_minus_one_range(lo, hi):
    """float64 array of Lambda(n) - 1 for n in [lo, hi); Lambda = log p
    exactly at prime powers p^k, zero elsewhere."""
    lo, hi = int(lo), int(hi)
    out = np.full(hi - lo, -1.0)
    flags = primality_range(lo, hi)
    idx = np.flatnonzero(flags)
    out[idx] += np.log((idx + lo).astype(np.float64))
    for p in primes_upto(math.isqrt(hi - 1)).primes:
        p = int(p)
        pk = p * p
        while pk < hi:
            if pk >= lo:
                out[pk - lo] = math.log(p) - 1.0
            pk *= p
    if lo <= 1 < hi:
        out[1 - lo] = -1.0
    return out


def primality_range(lo, hi, segment_len=DEFAULT_SEGMENT):
    """Boolean primality for n in [lo, hi), segmented."""
    lo, hi = int(lo), int(hi)
    if not 1 <= lo < hi:
        raise ValueError("need 1 <= lo < hi")
    if hi - lo > SPAN_BUDGET:
        raise BudgetError("span %d exceeds budget %d" % (hi - lo, SPAN_BUDGET))
    base = primes_upto(math.isqrt(hi - 1)).primes
    out = np.ones(hi - lo, dtype=bool)
    if lo <= 1:
        out[: 2 - lo] = False
    for a in range(lo, hi, segment_len):
        b = min(a + segment_len, hi)
        seg = out[a - lo : b - lo]
        for p in base:
            p = int(p)
            if p * p >= b:
                break
            first = max(p * p, ((a + p - 1) // p) * p)
            seg[first - a :: p] = False
    return out


def summatory_lambda(x, segment_len=DEFAULT_SEGMENT):
    """Exact integer value of sum_{n <= x} lambda(n)."""
    x = int(x)
    if x < 1:
        return 0
    base = primes_upto(math.isqrt(x)).primes
    total = 0
    for a in range(1, x + 1, segment_len):
        b = min(a + segment_len, x + 1)
        total += int(_omega_segment(a, b, base).astype(np.int64).sum())
    return total


def chebyshev_psi(x):
    """sum of log p over prime powers p^k <= x, with Lambda = log p exact."""
    x = int(x)
    if x < 2:
        return 0.0
    plist = primes_upto(x).primes
    logs = np.log(plist.astype(np.float64))
    total = fsum(logs)
    extra = []
    for p in plist[plist <= math.isqrt(x)]:
        p = int(p)
        pk = p * p
        while pk <= x:
            extra.append(math.log(p))
            pk *= p
    return total + math.fsum(extra)


def prime_reciprocal_sum(x):
    """sum of 1/p over primes p <= x, exactly rounded accumulation."""
    plist = primes_upto(int(x)).primes
    if len(plist) == 0:
        return 0.0
    return fsum(1.0 / plist.astype(np.float64))


def count_excluding_prime_band(x, p_lo, p_hi, segment_len=DEFAULT_SEGMENT):
    """#{1 <= n < x : no prime factor of n lies in [p_lo, p_hi]}."""
    x, p_lo, p_hi = int(x), int(p_lo), int(p_hi)
    if x < 2:
        return 0
    if p_lo > p_hi:
        return x - 1
    band = primes_upto(min(p_hi, x - 1)).primes
    band = band[band >= p_lo]
    total = 0
    for a in range(1, x, segment_len):
        b = min(a + segment_len, x)
        keep = np.ones(b - a, dtype=bool)
        for p in band:
            p = int(p)
            start = (-a) % p
            keep[start :: p] = False
        total += int(keep.sum())
    return total


def prime_pair_count(X, k):
    """#{p <= X : p and p + k both prime}."""
    X, k = int(X), int(k)
    if X < 2:
        return 0
    flags = primality_range(1, X + k + 1)
    # flags[i] answers for n = 1 + i
    p_ok = flags[:X]
    shifted = flags[k : X + k]
    return int(np.count_nonzero(p_ok & shifted))


def squarefree_count(x, segment_len=DEFAULT_SEGMENT):
    """#{n <= x : n squarefree}, via mu(d) floor(x/d^2) over d <= sqrt(x)."""
    x = int(x)
    if x < 1:
        return 0
    d_max = math.isqrt(x)
    if d_max < 2:
        return x
    table = build_sieve(1, d_max + 1)
    total = 0
    for d in range(1, d_max + 1):
        m = int(table.mu[d - 1])
        if m:
            total += m * (x // (d * d))
    return total
