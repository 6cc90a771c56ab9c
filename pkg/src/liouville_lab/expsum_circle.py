"""Exponential sums over integers and primes, rational approximation and
arc classification, Dirichlet characters with the additive-to-multiplicative
bridge, autocorrelation tables, and ternary convolution sums.
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import arith_core
from .util import BudgetError, fsum, fsum_complex

TWO_PI = 2.0 * math.pi


def e_of(x):
    """e(x) = exp(2 pi i x)."""
    return cmath.exp(2j * math.pi * x)


def dist_to_z(x):
    """Distance from x to the nearest integer."""
    return abs(x - round(x))


# ------------------------------------------------------ rational approx

@dataclass
class RationalApprox:
    a: int
    q: int
    err: float  # |alpha - a/q|


def _convergents(frac):
    a = []
    x = Fraction(frac)
    while True:
        ai = x.numerator // x.denominator
        a.append(ai)
        rem = x - ai
        if rem == 0:
            break
        x = 1 / rem
    out = []
    p0, q0, p1, q1 = 1, 0, a[0], 1
    out.append((p1, q1))
    for ai in a[1:]:
        p0, q0, p1, q1 = p1, q1, ai * p1 + p0, ai * q1 + q0
        out.append((p1, q1))
    return out


def dirichlet_approx(alpha, Q):
    """Convergent a/q of alpha with the smallest q <= Q satisfying
    |alpha - a/q| <= 1/(qQ). Exact integer arithmetic on the binary
    rational that represents alpha."""
    Q = int(Q)
    if Q < 1:
        raise ValueError("Q must be positive")
    exact = Fraction(alpha)
    for a, q in _convergents(exact):
        if q > Q:
            break
        if abs(exact - Fraction(a, q)) * q * Q <= 1:
            return RationalApprox(a, q, float(abs(exact - Fraction(a, q))))
    raise ArithmeticError("no convergent found; should not happen for Q >= 1")


@dataclass
class ArcLabel:
    a: int
    q: int
    major: bool


def classify_arc(alpha, Q, R):
    """Label alpha by its approximation at level Q; major iff q <= R."""
    ra = dirichlet_approx(alpha, Q)
    return ArcLabel(ra.a, ra.q, ra.q <= R)


# ------------------------------------------------------ geometric sums

def geometric_sum_check(beta, m0, m1, integral_tol=1e-15):
    """(sum of e(beta m) for m0 <= m <= m1, envelope (2/pi)/d(beta, Z)).

    A beta within integral_tol of an integer is treated as the integral
    case: the sum is the interval length and the envelope is infinite.
    """
    m0, m1 = int(m0), int(m1)
    if m1 < m0:
        raise ValueError("need m1 >= m0")
    count = m1 - m0 + 1
    d = dist_to_z(beta)
    if d <= integral_tol:
        return complex(count), float("inf")
    # closed form keeps the check exact for long ranges
    ratio = e_of(beta)
    value = e_of(beta * m0) * (e_of(beta * count) - 1.0) / (ratio - 1.0)
    if count <= 4096:
        ms = np.arange(m0, m1 + 1, dtype=np.float64)
        value = fsum_complex(np.exp(2j * np.pi * beta * ms))
    return value, (2.0 / math.pi) / d


@dataclass
class VinogradovResult:
    value: float
    bound: float
    a: int
    q: int


def vinogradov_sum(alpha, N, Xcap, C=4.0):
    """sum over |n| <= N of min(Xcap, 1/d(n alpha, Z)) with its envelope
    C (N/q + 1)(Xcap + q log q), q taken from the convergent of alpha that
    minimizes the envelope (every convergent satisfies |alpha - a/q| <= 1/q^2).
    """
    N = int(N)
    if N < 0 or Xcap <= 0:
        raise ValueError("need N >= 0 and Xcap > 0")
    ns = np.arange(-N, N + 1, dtype=np.float64)
    frac = ns * float(alpha)
    d = np.abs(frac - np.round(frac))
    with np.errstate(divide="ignore"):
        inv = np.where(d > 0, 1.0 / np.where(d > 0, d, 1.0), np.inf)
    value = fsum(np.minimum(float(Xcap), inv))
    best = None
    for a, q in _convergents(Fraction(alpha)):
        if q > max(2 * N, 1):
            break
        b = C * (N / q + 1.0) * (Xcap + q * math.log(q))
        if best is None or b < best[0]:
            best = (b, a, q)
    return VinogradovResult(value, best[0], best[1], best[2])


# ------------------------------------------------------ prime exponential sums

def prime_exp_sum(h, alpha):
    """sum of e(alpha p) over primes p <= h."""
    plist = arith_core.primes_upto(int(h)).primes.astype(np.float64)
    if len(plist) == 0:
        return 0j
    return fsum_complex(np.exp(2j * np.pi * float(alpha) * plist))


def exp_sum_avg(X, h, alpha):
    """(1/(hX)) sum over x in (X, 2X] of |sum_{x<n<=x+h} lambda(n) e(alpha n)|."""
    X, h = int(X), int(h)
    lam = arith_core.liouville_range(X + 1, 2 * X + h + 1).astype(np.float64)
    n = np.arange(X + 1, 2 * X + h + 1, dtype=np.float64)
    c = lam * np.exp(2j * np.pi * float(alpha) * n)
    prefix = np.concatenate(([0j], np.cumsum(c)))
    idx = np.arange(1, X + 1)  # x = X + idx
    sums = prefix[idx + h] - prefix[idx]
    return fsum(np.abs(sums)) / (h * X)


def fourth_moment_primes(h):
    """sum over all j of r(j)^2 where r(j) counts prime pairs p, q <= h
    with q - p = j. Pure pair counting, no quadrature."""
    plist = arith_core.primes_upto(int(h)).primes
    k = len(plist)
    if k == 0:
        return 0
    counts = np.zeros(int(h) + 1, dtype=np.int64)
    chunk = max(1, (1 << 24) // max(k, 1))
    for a in range(0, k, chunk):
        b = min(a + chunk, k)
        diffs = plist[a:b, None] - plist[None, :]
        pos = diffs[diffs > 0]
        if len(pos):
            counts += np.bincount(pos, minlength=int(h) + 1)
    r0 = k  # j = 0 pairs
    total = r0 * r0 + 2 * int(np.dot(counts, counts))
    return total


def major_arc_measure(h, epsilon, grid_points):
    """Grid measure of {alpha in [0,1) : |sum_{p<=h} e(alpha p)| > eps h/log h}.

    Cells of width 1/grid_points; a cell joins when either endpoint or the
    midpoint exceeds the threshold (conservative over-cover).
    """
    h = int(h)
    G = int(grid_points)
    if G < 10**3:
        raise ValueError("grid_points must be at least 1e3")
    threshold = epsilon * h / math.log(h)
    plist = arith_core.primes_upto(h).primes
    M = 2 * G
    if M > len(plist) and M > h:
        vec = np.zeros(M, dtype=np.float64)
        vec[plist[plist < M]] = 1.0
        mod = np.abs(np.fft.fft(vec))
    else:
        mod = np.empty(M)
        js = np.arange(M)
        chunk = max(1, (1 << 22) // max(len(plist), 1))
        for a in range(0, M, chunk):
            b = min(a + chunk, M)
            phases = np.exp(-2j * np.pi * np.multiply.outer(js[a:b] / M, plist.astype(np.float64)))
            mod[a:b] = np.abs(phases.sum(axis=1))
    exceed = mod > threshold
    nxt = np.roll(exceed, -1)
    nxt2 = np.roll(exceed, -2)
    cell_hit = exceed[0::2] | nxt[0::2] | nxt2[0::2]
    return float(np.count_nonzero(cell_hit)) / G


# ------------------------------------------------------ characters

def _factorize(q):
    out = []
    m = q
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def _primitive_root(pe, p, e):
    """Primitive root mod p^e for odd p."""
    phi = pe // p * (p - 1)
    fac = [f for f, _ in _factorize(phi)]
    g = 2
    while True:
        if math.gcd(g, pe) == 1 and all(pow(g, phi // f, pe) != 1 for f in fac):
            return g
        g += 1


def _factor_group(p, e):
    """Generators [(g, order)] and dlog table for units mod p^e."""
    pe = p**e
    if pe == 2:
        return pe, [], {1: ()}
    if pe == 4:
        return pe, [(3, 2)], {1: (0,), 3: (1,)}
    if p == 2:
        half = 2 ** (e - 2)
        gens = [(pe - 1, 2), (5, half)]
        dlog = {}
        for a in range(2):
            for b in range(half):
                r = (pow(pe - 1, a, pe) * pow(5, b, pe)) % pe
                dlog[r] = (a, b)
        return pe, gens, dlog
    phi = pe // p * (p - 1)
    g = _primitive_root(pe, p, e)
    dlog = {}
    x = 1
    for k in range(phi):
        dlog[x] = (k,)
        x = (x * g) % pe
    return pe, [(g, phi)], dlog


MAX_DENSE_Q = 1024


@dataclass
class CharacterTable:
    """All Dirichlet characters mod q, indexed with the principal first.

    Characters are enumerated by mixed-radix exponent tuples over the
    cyclic decomposition of the unit group; values come from exact
    discrete logarithms, one root of unity per factor.
    """

    q: int
    orders: list          # cyclic factor orders, flattened
    _moduli: list = field(repr=False)
    _dlogs: list = field(repr=False)
    _rows: dict = field(default_factory=dict, repr=False)

    @property
    def n_chars(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    def exponents(self, index):
        k = []
        for d in self.orders:
            k.append(index % d)
            index //= d
        return k

    def value(self, index, n):
        """chi_index(n) as complex; 0 off the unit group."""
        n = int(n) % self.q if self.q > 1 else 0
        if self.q == 1:
            return 1.0 + 0j
        if math.gcd(n, self.q) != 1:
            return 0j
        ks = self.exponents(index)
        pos = 0
        phase = 0.0
        for (pe, dlog), dcount in zip(zip(self._moduli, self._dlogs), self._gen_counts()):
            exps = dlog[n % pe]
            for j in range(dcount):
                d = self.orders[pos + j]
                phase += ((ks[pos + j] * exps[j]) % d) / d
            pos += dcount
        return cmath.exp(2j * math.pi * phase)

    def _gen_counts(self):
        counts = []
        for dlog in self._dlogs:
            sample = next(iter(dlog.values()))
            counts.append(len(sample))
        return counts

    def row(self, index):
        """Dense value vector over residues 0..q-1 (cached)."""
        if index in self._rows:
            return self._rows[index]
        out = np.zeros(self.q, dtype=np.complex128)
        if self.q == 1:
            out[0] = 1.0
        else:
            for r in range(self.q):
                if math.gcd(r, self.q) == 1:
                    out[r] = self.value(index, r)
        self._rows[index] = out
        return out

    @property
    def values(self):
        if self.q > MAX_DENSE_Q:
            raise BudgetError("dense table for q=%d exceeds budget" % self.q)
        return np.vstack([self.row(i) for i in range(self.n_chars)])


def characters_mod(q):
    """CharacterTable for modulus q (q = 1 gives the trivial table)."""
    q = int(q)
    if not 1 <= q <= 10**4:
        raise ValueError("q must lie in 1..1e4")
    if q == 1:
        return CharacterTable(1, [], [], [])
    orders = []
    moduli = []
    dlogs = []
    for p, e in _factorize(q):
        pe, gens, dlog = _factor_group(p, e)
        moduli.append(pe)
        dlogs.append(dlog)
        orders.extend(d for _, d in gens)
    return CharacterTable(q, orders, moduli, dlogs)


def euler_phi(q):
    phi = 1
    for p, e in _factorize(q):
        phi *= p ** (e - 1) * (p - 1)
    return phi


@dataclass
class AdditiveDecomposition:
    a: int
    q: int
    terms: list  # (d, modulus q/d, chi index, coefficient)
    tables: dict = field(repr=False)


def additive_to_multiplicative(a, q):
    """Expand n -> e(an/q) over divisors d of q and characters mod q/d.

    Coefficients are unit-averaged twisted sums, each of modulus <= 1;
    reconstruct() resums them."""
    a, q = int(a), int(q)
    if q < 1:
        raise ValueError("q must be positive")
    terms = []
    tables = {}
    for d in range(1, q + 1):
        if q % d:
            continue
        M = q // d
        table = tables.get(M)
        if table is None:
            table = characters_mod(M)
            tables[M] = table
        units = [m for m in range(1, M + 1) if math.gcd(m, M) == 1] if M > 1 else [0]
        phi = len(units)
        fvals = {m: e_of(a * m * d / q) for m in units}
        for idx in range(table.n_chars):
            coeff = sum(fvals[m] * np.conj(table.value(idx, m)) for m in units) / phi
            terms.append((d, M, idx, complex(coeff)))
    return AdditiveDecomposition(a, q, terms, tables)


def reconstruct_additive(decomp, n):
    """Resum the divisor/character expansion at integer n."""
    n = int(n)
    total = 0j
    for d, M, idx, coeff in decomp.terms:
        if n % d == 0:
            total += coeff * decomp.tables[M].value(idx, n // d)
    return total


# ------------------------------------------------------ correlations

@dataclass
class CorrelationTable:
    X: int
    h: int
    c: np.ndarray  # c[j] for j = 1..h at index j-1, exact int64


def chowla_avg(X, h, method="fast"):
    """Autocorrelation table c_j = sum_{X<n, n+j<=2X} lambda(n) lambda(n+j)
    for 1 <= j <= h, plus the statistic (1/(h X^2)) sum_{j<=h/2} c_j^2.

    method 'fast' uses vectorized exact integer dot products; 'naive' is
    the direct double loop. Both produce identical integers.
    """
    X, h = int(X), int(h)
    if h >= X:
        raise ValueError("need h < X")
    lam = arith_core.liouville_range(X + 1, 2 * X + 1)
    c = np.zeros(h, dtype=np.int64)
    if method == "fast":
        lam64 = lam.astype(np.int64)
        for j in range(1, h + 1):
            c[j - 1] = np.dot(lam64[: X - j], lam64[j:X])
    elif method == "naive":
        for j in range(1, h + 1):
            total = 0
            for i in range(0, X - j):
                total += int(lam[i]) * int(lam[i + j])
            c[j - 1] = total
    else:
        raise ValueError("method must be 'fast' or 'naive'")
    js = np.arange(1, h // 2 + 1)
    stat = float(np.dot(c[js - 1].astype(np.float64), c[js - 1].astype(np.float64)))
    stat /= h * float(X) ** 2
    return CorrelationTable(X, h, c), stat


def prime_shift_correlation(X, h):
    """(exact sum over p <= h of sum_{X<n<=2X} lambda(n) lambda(n+p),
    normalized value * log h / (h X))."""
    X, h = int(X), int(h)
    lam = arith_core.liouville_range(X + 1, 2 * X + h + 1).astype(np.int64)
    plist = arith_core.primes_upto(h).primes
    total = 0
    for p in plist:
        total += int(np.dot(lam[:X], lam[int(p) : int(p) + X]))
    return total, total * math.log(h) / (h * X)


def cauchy_short_check(fname, gname, X, H):
    """Short-shift correlation average against its autocorrelation root.

    lhs = (1/(H X^2)) sum_{1<=h<=H} |sum_{n<=X} f(n+h) conj(g(n))|^2,
    rhs = sqrt((1/(H X^2)) sum_{|h|<=H} |sum_{n<=X} f(n+h) conj(f(n))|^2).
    """
    X, H = int(X), int(H)

    def vals(name, hi):
        if name == "unit":
            return np.ones(hi, dtype=np.float64)
        if name == "liouville":
            return arith_core.liouville_range(1, hi + 1).astype(np.float64)
        raise ValueError("fname must be 'unit' or 'liouville'")

    f = vals(fname, X + H)
    g = vals(gname, X)
    lhs_terms = []
    for h in range(1, H + 1):
        s = np.dot(f[h : h + X], np.conj(g))
        lhs_terms.append(abs(s) ** 2)
    lhs = math.fsum(lhs_terms) / (H * float(X) ** 2)
    auto_terms = []
    for h in range(-H, H + 1):
        if h >= 0:
            s = np.dot(f[h : h + X], np.conj(f[:X]))
        else:
            s = np.dot(f[: X + h], np.conj(f[-h : X]))
        auto_terms.append(abs(s) ** 2)
    rhs = math.sqrt(math.fsum(auto_terms) / (H * float(X) ** 2))
    return lhs, rhs


def ternary_sum(N, weight="unit"):
    """Exact sum of w(a) w(b) w(c) over positive a+b+c = N.

    FFT convolution with integer rounding; coefficients are bounded by N
    so the rounding margin is exact. N <= 1e5.
    """
    N = int(N)
    if N > 10**5:
        raise BudgetError("N capped at 1e5")
    if N < 3:
        return 0
    if weight == "unit":
        v = np.ones(N - 2, dtype=np.float64)
    elif weight == "liouville":
        v = arith_core.liouville_range(1, N - 1).astype(np.float64)
    else:
        raise ValueError("weight must be 'unit' or 'liouville'")
    size = 1
    while size < 2 * (N - 2):
        size *= 2
    fv = np.fft.rfft(v, size)
    conv = np.fft.irfft(fv * fv, size)[: 2 * (N - 2) - 1]
    c2 = np.rint(conv).astype(np.int64)  # c2[k] = sum_{a+b = k+2}
    drift = float(np.max(np.abs(conv - c2)))
    if drift >= 0.49:
        raise ArithmeticError("convolution rounding margin lost: %g" % drift)
    # contract against w(c), c = N - m for m = 2..N-1
    wvals = v.astype(np.int64)
    return int(np.dot(c2[: N - 2], wvals[::-1]))


def parseval_torus_check(coeffs):
    """Mean of |sum a_j e(j theta)|^2 over 2J+2 equispaced theta against
    sum |a_j|^2; the two agree to rounding for degree-J data."""
    a = np.asarray(coeffs, dtype=np.complex128)
    J = len(a) - 1
    M = 2 * J + 2
    samples = np.fft.fft(np.conj(a), M)  # sum conj(a_j) e(-2pi i jk/M)
    mean = fsum(np.abs(samples) ** 2) / M
    return mean, fsum(np.abs(a) ** 2)
