"""Log-weighted sign statistics: joint sign/residue distributions, entropy
and mutual information in nats, tail and concentration checks, the pair
functional F with its independent-average reduction, and logarithmically
weighted consecutive-sign sums with their envelopes.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import arith_core
from .util import BudgetError, EnvelopeFailure, PreconditionError, fsum

KEY_BUDGET = 2**62
E_CUBE = math.exp(math.e)  # h must exceed this for log log log h > 0


# ------------------------------------------------------ model and joints

@dataclass
class LogWeightedModel:
    """Random integer N on (x/w, x] with mass proportional to 1/n."""

    x: int
    w: float
    lo: int = field(init=False)
    L: float = field(init=False)

    def __post_init__(self):
        self.x = int(self.x)
        if not 1 <= self.w <= self.x:
            raise ValueError("need 1 <= w <= x")
        if float(self.w).is_integer():
            self.lo = self.x // int(self.w) + 1
        else:
            self.lo = math.floor(self.x / self.w) + 1
        if self.lo > self.x:
            self.L = 0.0
        else:
            ns = np.arange(self.lo, self.x + 1, dtype=np.float64)
            self.L = fsum(1.0 / ns)

    @property
    def n_count(self):
        return max(0, self.x - self.lo + 1)


def band_primes(H, epsilon):
    """Primes in (epsilon H / 2, epsilon H]."""
    k1 = math.floor(epsilon * H)
    k0 = epsilon * H / 2.0
    if k1 < 2:
        return np.zeros(0, dtype=np.int64)
    plist = arith_core.primes_upto(k1).primes
    return plist[plist > k0]


@dataclass
class JointDistribution:
    """Sparse joint law of (sign pattern, residue pattern).

    Keys pack the sign bits above a mixed-radix residue index; masses are
    renormalized compensated sums of 1/n. Marginals are cached.
    """

    H: int
    primes: tuple
    omega: int
    keys: np.ndarray
    masses: np.ndarray
    x: int
    w: float
    _xm: tuple = field(default=None, repr=False)
    _ym: tuple = field(default=None, repr=False)

    def _marginal(self, values):
        uniq, inv = np.unique(values, return_inverse=True)
        m = np.bincount(inv, weights=self.masses)
        return uniq, m

    @property
    def x_marginal(self):
        if self._xm is None:
            self._xm = self._marginal(self.keys // self.omega)
        return self._xm

    @property
    def y_marginal(self):
        if self._ym is None:
            self._ym = self._marginal(self.keys % self.omega)
        return self._ym

    def y_dense(self):
        """Residue-marginal masses as a dense length-omega vector."""
        ys, m = self.y_marginal
        out = np.zeros(self.omega, dtype=np.float64)
        out[ys] = m
        return out

    def y_residues(self, yindex):
        """Decode a mixed-radix residue index to one residue per prime."""
        out = []
        rem = int(yindex)
        for p in self.primes:
            out.append(rem % int(p))
            rem //= int(p)
        return out


def _entropy_of(masses):
    m = np.asarray(masses, dtype=np.float64)
    pos = m[m > 0]
    return -fsum(pos * np.log(pos))


def entropy(dist):
    """-sum p log p in nats, with 0 log 0 = 0.

    Accepts any array-like of masses; they must be nonnegative and sum
    to 1 within 1e-9."""
    m = np.asarray(dist, dtype=np.float64).ravel()
    if np.any(m < 0):
        raise ValueError("negative mass")
    total = fsum(m)
    if abs(total - 1.0) > 1e-9:
        raise ValueError("masses sum to %r, not 1" % total)
    return _entropy_of(m)


def joint_entropy(joint):
    return _entropy_of(joint.masses)


def entropy_x(joint):
    return _entropy_of(joint.x_marginal[1])


def entropy_y(joint):
    return _entropy_of(joint.y_marginal[1])


def conditional_entropy(joint):
    """Entropy of the sign pattern given the residue pattern, summed
    directly as -sum m log(m / P(y)); regrouping it as the joint minus
    the residue marginal is the identity the tests pin down."""
    ys = joint.keys % joint.omega
    yu, ym = joint.y_marginal
    py = ym[np.searchsorted(yu, ys)]
    m = joint.masses
    pos = m > 0
    return -fsum(m[pos] * np.log(m[pos] / py[pos]))


def mutual_information(joint):
    return entropy_x(joint) + entropy_y(joint) - joint_entropy(joint)


def build_joint(model, H, epsilon):
    """Exact joint law of H consecutive signs past N and N's residues at
    the band primes, enumerated over the whole support (no sampling)."""
    H = int(H)
    if H < 1:
        raise ValueError("H must be positive")
    if model.n_count == 0 or model.L == 0.0:
        raise ValueError("model support is empty")
    primes = band_primes(H, epsilon)
    omega = 1
    for p in primes:
        omega *= int(p)
    if float(omega) * float(2**H) > KEY_BUDGET:
        raise BudgetError("2^H * |Omega| = 2^%d * %d exceeds key budget" % (H, omega))
    lo, x = model.lo, model.x
    lam = arith_core.liouville_range(lo + 1, x + H + 1)
    key_parts = []
    wt_parts = []
    chunk = 1 << 21
    for a in range(lo, x + 1, chunk):
        b = min(a + chunk, x + 1)
        ns = np.arange(a, b, dtype=np.int64)
        bits = np.zeros(b - a, dtype=np.int64)
        base = a - (lo + 1)
        for j in range(1, H + 1):
            neg = lam[base + j : base + j + (b - a)] < 0
            bits |= neg.astype(np.int64) << (j - 1)
        y = np.zeros(b - a, dtype=np.int64)
        radix = 1
        for p in primes:
            y += radix * (ns % int(p))
            radix *= int(p)
        keys = bits * omega + y
        uniq, inv = np.unique(keys, return_inverse=True)
        wts = np.bincount(inv, weights=1.0 / ns.astype(np.float64))
        key_parts.append(uniq)
        wt_parts.append(wts)
    keys = np.concatenate(key_parts)
    wts = np.concatenate(wt_parts)
    uniq, inv = np.unique(keys, return_inverse=True)
    masses = np.bincount(inv, weights=wts)
    masses /= fsum(masses)  # total mass exactly 1 to rounding
    return JointDistribution(H, tuple(int(p) for p in primes), omega, uniq, masses,
                             model.x, float(model.w))


def y_uniformity(joint, slack=10.0):
    """(max deviation of the residue marginal from uniform, slack * w / x)."""
    dev = float(np.max(np.abs(joint.y_dense() - 1.0 / joint.omega)))
    return dev, slack * joint.w / joint.x


# ------------------------------------------------------ the F functional

def _residue_lookup(yvec, primes):
    if isinstance(yvec, dict):
        return [int(yvec[int(p)]) for p in primes]
    seq = [int(v) for v in yvec]
    if len(seq) != len(primes):
        raise ValueError("residue vector length %d != band size %d" % (len(seq), len(primes)))
    return seq


def _F_on_primes(xs, res, primes, H):
    out = {}
    for p, r in zip(primes, res):
        p = int(p)
        total = 0
        for j in range(1, H - p + 1):
            if (r + j) % p == 0:
                total += xs[j - 1] * xs[j + p - 1]
        out[p] = total
    return out


def F_components(xvec, yvec, H, epsilon):
    """Per-prime pieces of F; their sum is F itself."""
    xs = [int(v) for v in xvec]
    if len(xs) != H or any(v not in (-1, 1) for v in xs):
        raise ValueError("sign vector must have H entries in {-1, +1}")
    primes = band_primes(H, epsilon)
    res = _residue_lookup(yvec, primes)
    return _F_on_primes(xs, res, primes, H)


def F_value(xvec, yvec, H, epsilon):
    """Sum over band primes p and j <= H-p with p | y_p + j of x_j x_{j+p}."""
    return sum(F_components(xvec, yvec, H, epsilon).values())


def _sign_columns(bits, j):
    return 1 - 2 * ((bits >> (j - 1)) & 1)


def expectation_F(joint):
    """E F(signs, residues) under the joint law, vectorized over keys."""
    bits = joint.keys // joint.omega
    y = joint.keys % joint.omega
    parts = []
    div = 1
    for p in joint.primes:
        yp = (y // div) % p
        div *= p
        for j in range(1, joint.H - p + 1):
            s = (_sign_columns(bits, j) * _sign_columns(bits, j + p)).astype(np.float64)
            mask = yp == (-j) % p
            parts.append(float(np.dot(joint.masses[mask], s[mask])))
    return math.fsum(parts)


def expectation_F_independent(joint, method="g"):
    """E F(signs, residues*) with residues* uniform and independent.

    method 'g' collapses the uniform average in closed form, weighting the
    pair sum at shift p by 1/p; 'uniform' averages over every residue
    pattern explicitly."""
    bits = joint.keys // joint.omega
    if method == "g":
        parts = []
        for p in joint.primes:
            for j in range(1, joint.H - p + 1):
                s = (_sign_columns(bits, j) * _sign_columns(bits, j + p)).astype(np.float64)
                parts.append(float(np.dot(joint.masses, s)) / p)
        return math.fsum(parts)
    if method != "uniform":
        raise ValueError("method must be 'g' or 'uniform'")
    xs, xmass = joint.x_marginal
    if len(xs) * joint.omega > 1 << 22:
        raise BudgetError("explicit uniform average too large")
    parts = []
    for b, m in zip(xs, xmass):
        xvec = [1 - 2 * ((int(b) >> (j - 1)) & 1) for j in range(1, joint.H + 1)]
        acc = 0
        for yidx in range(joint.omega):
            comps = _F_on_primes(xvec, joint.y_residues(yidx), joint.primes, joint.H)
            acc += sum(comps.values())
        parts.append(m * acc / joint.omega)
    return math.fsum(parts)


# ------------------------------------------------------ weighted pair sums

def log_chowla_sum(x, w):
    """Exact sum of lambda(n) lambda(n+1) / n over x/w < n <= x."""
    x = int(x)
    if not 1 <= w <= x:
        raise ValueError("need 1 <= w <= x")
    lo = x // int(w) + 1 if float(w).is_integer() else math.floor(x / w) + 1
    if lo > x:
        return 0.0
    lam = arith_core.liouville_range(lo, x + 2).astype(np.float64)
    ns = np.arange(lo, x + 1, dtype=np.float64)
    return fsum(lam[:-1] * lam[1:] / ns)


def band_divisor_sum(x, w, K0, K1):
    """Sum over primes K0 < p <= K1 and multiples p | n in (x/w, x] of
    lambda(n) lambda(n+p) / n."""
    x = int(x)
    lo = x // int(w) + 1 if float(w).is_integer() else math.floor(x / w) + 1
    k1 = math.floor(K1)
    if k1 < 2 or lo > x:
        return 0.0
    plist = arith_core.primes_upto(k1).primes
    plist = plist[plist > K0]
    if len(plist) == 0:
        return 0.0
    lam = arith_core.liouville_range(lo, x + k1 + 1).astype(np.float64)
    parts = []
    for p in plist:
        p = int(p)
        m0 = ((lo + p - 1) // p) * p
        ns = np.arange(m0, x + 1, p, dtype=np.int64)
        if len(ns) == 0:
            parts.append(0.0)
            continue
        idx = ns - lo
        parts.append(fsum(lam[idx] * lam[idx + p] / ns.astype(np.float64)))
    return math.fsum(parts)


def suma_esperanza_residual(x, w, H, epsilon, C=20.0):
    """|band divisor pair sum - (L/H) E F| with envelope C eps log w / log H.

    The left side is the exact double sum over band primes and their
    multiples in the support; the right side rereads it as an expectation
    of F under the joint law."""
    if H > x / w:
        raise ValueError("need H <= x/w")
    if epsilon < max(1.0 / math.log(w), 1.0 / math.sqrt(H)):
        raise ValueError("epsilon below admissible floor")
    model = LogWeightedModel(x, w)
    lhs = band_divisor_sum(x, w, epsilon * H / 2.0, epsilon * H)
    joint = build_joint(model, H, epsilon)
    rhs = (model.L / H) * expectation_F(joint)
    residual = abs(lhs - rhs)
    envelope = C * epsilon * math.log(w) / math.log(H)
    if residual > envelope:
        raise EnvelopeFailure("residual %g exceeds %g" % (residual, envelope))
    return residual


def divisibility_trick_residual(x, w, K0, K1, C=5.0):
    """|consecutive-pair log sum - (1/l) band divisor pair sum| where
    l is the reciprocal sum of the band primes; envelope C log(K1) / l."""
    plist = arith_core.primes_upto(math.floor(K1)).primes if K1 >= 2 else np.zeros(0)
    plist = plist[plist > K0] if len(plist) else plist
    if len(plist) == 0:
        raise PreconditionError("no prime in (K0, K1]")
    ell = fsum(1.0 / plist.astype(np.float64))
    lhs = log_chowla_sum(x, w)
    rhs = band_divisor_sum(x, w, K0, K1) / ell
    residual = abs(lhs - rhs)
    envelope = C * math.log(K1) / ell
    if residual > envelope:
        raise EnvelopeFailure("residual %g exceeds %g" % (residual, envelope))
    return residual


# ------------------------------------------------------ tail and concentration

def hoeffding_tail_check(n, C, s, trials, seed=0):
    """(empirical P(|S| >= s) for S a sum of n uniform[-C, C] draws,
    closed-form tail envelope 2 exp(-s^2 / (2 C^2 n))).

    Sampling is chunked with per-chunk child seeds; the chunk rule is a
    fixed function of n, so a given (n, trials, seed) always reproduces."""
    n, trials = int(n), int(trials)
    if trials < 10**3:
        raise ValueError("trials must be at least 1e3")
    bound = 2.0 * math.exp(-(s * s) / (2.0 * C * C * n))
    chunk = max(1, (1 << 24) // n)
    hits = 0
    done = 0
    idx = 0
    while done < trials:
        take = min(chunk, trials - done)
        rng = np.random.default_rng([int(seed), idx])
        draws = rng.uniform(-C, C, size=(take, n))
        S = draws.sum(axis=1)
        hits += int(np.count_nonzero(np.abs(S) >= s))
        done += take
        idx += 1
    empirical = hits / trials
    slack = 3.0 * math.sqrt(bound / trials)
    if empirical > bound + slack:
        raise EnvelopeFailure("tail %g exceeds %g + %g" % (empirical, bound, slack))
    return empirical, bound


def concentration_check(dist, E, M, delta=None):
    """True iff P(E) <= 2/M for a high-entropy distribution.

    Requires entropy >= (1 - delta) log k with delta >= 1/log k, and
    |E| <= k^(1 - M delta); violations of these hypotheses raise
    PreconditionError. A False return is a genuine counterexample."""
    m = np.asarray(dist, dtype=np.float64)
    k = len(m)
    if k < 2:
        raise PreconditionError("need at least 2 outcomes")
    if M <= 0:
        raise PreconditionError("M must be positive")
    Hd = entropy(m)
    logk = math.log(k)
    if delta is None:
        delta = max(1.0 - Hd / logk, 1.0 / logk)
    if delta < 1.0 / logk - 1e-15:
        raise PreconditionError("delta below 1/log k")
    if Hd < (1.0 - delta) * logk - 1e-12:
        raise PreconditionError("entropy below (1 - delta) log k")
    Eidx = np.unique(np.asarray(E, dtype=np.int64))
    if len(Eidx) and (Eidx[0] < 0 or Eidx[-1] >= k):
        raise PreconditionError("event indices out of range")
    if len(Eidx) > k ** (1.0 - M * delta):
        raise PreconditionError("event too large for the stated size cap")
    pE = fsum(m[Eidx]) if len(Eidx) else 0.0
    return pE <= 2.0 / M + 1e-12


# ------------------------------------------------------ decrement trace

def _next_block_length(h):
    """h times floor(4 log h log log log h), clamped below at doubling
    (the multiplier is nonpositive until h is approximately 56)."""
    if h > E_CUBE:
        mult = math.floor(4.0 * math.log(h) * math.log(math.log(math.log(h))))
    else:
        mult = 0
    return max(2, mult) * h


@dataclass
class DecrementTrace:
    steps: list            # (h, entropy rate, information rate)
    witness_step: int      # first step with I/h under 1/(log h log3 h); -1 if none
    exhausted: bool        # stopped early on the state budget


def decrement_trace(x, w, epsilon, H0, max_steps):
    """Entropy and information rates along the blowup sequence of block
    lengths, with exact joints at every step; stops early (flagged) when
    the packed state would overflow."""
    model = LogWeightedModel(x, w)
    h = int(H0)
    if h < 2:
        raise ValueError("H0 must be at least 2")
    steps = []
    witness = -1
    exhausted = False
    for j in range(int(max_steps)):
        primes = band_primes(h, epsilon)
        omega = 1
        for p in primes:
            omega *= int(p)
        if h > 32 or float(omega) * float(2**h) > KEY_BUDGET:
            exhausted = True
            break
        joint = build_joint(model, h, epsilon)
        Hx = entropy_x(joint)
        info = mutual_information(joint)
        steps.append((h, Hx / h, info / h))
        if witness < 0 and h > E_CUBE:
            threshold = 1.0 / (math.log(h) * math.log(math.log(math.log(h))))
            if info / h <= threshold:
                witness = j
        h = _next_block_length(h)
    return DecrementTrace(steps, witness, exhausted)


def divergence_sequence(h1, target=100.0, max_steps=10**4):
    """(smallest J whose partial sum of 1/(log h_j log3 h_j) reaches the
    target, the partial sums). Terms are counted only where log3 is
    positive; block lengths grow as exact big integers."""
    h = int(h1)
    if h < 15:
        raise ValueError("h1 must be at least 15")
    partial = []
    s = 0.0
    for j in range(1, int(max_steps) + 1):
        logh = math.log(h)
        if h > E_CUBE:
            s += 1.0 / (logh * math.log(math.log(logh)))
        partial.append(s)
        if s >= target:
            J = j
            bound = 10.0 * math.log2(h1) ** 2
            if math.log(J) > bound:
                raise EnvelopeFailure("log J = %g exceeds %g" % (math.log(J), bound))
            return J, partial
        h = _next_block_length(h)
    raise BudgetError("target %g unreached after %d steps" % (target, max_steps))


# ------------------------------------------------------ block-shift and TV

def sign_block_distribution(model, H, offset=0):
    """Dense mass vector over the 2^H sign patterns of the block at
    distance offset past N."""
    H, offset = int(H), int(offset)
    if H > 24:
        raise BudgetError("dense block length capped at 24")
    if model.n_count == 0:
        raise ValueError("model support is empty")
    lo, x = model.lo, model.x
    lam = arith_core.liouville_range(lo + offset + 1, x + offset + H + 1)
    bits = np.zeros(model.n_count, dtype=np.int64)
    for j in range(1, H + 1):
        neg = lam[j - 1 : j - 1 + model.n_count] < 0
        bits |= neg.astype(np.int64) << (j - 1)
    ns = np.arange(lo, x + 1, dtype=np.float64)
    masses = np.bincount(bits, weights=1.0 / ns, minlength=2**H)
    return masses / fsum(masses)


def shift_entropy_report(model, H1, H2):
    """(entropy gap between the offset-H1 block and the leading block of
    the same length, envelope (H1/x0)(H2 log 4 + 2 log x0)), x0 = x/w."""
    a = _entropy_of(sign_block_distribution(model, H2, offset=H1))
    b = _entropy_of(sign_block_distribution(model, H2, offset=0))
    x0 = model.x / model.w
    envelope = (H1 / x0) * (H2 * math.log(4.0) + 2.0 * math.log(x0))
    return abs(a - b), envelope


def total_variation(p, q):
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError("distributions must share a support")
    return 0.5 * fsum(np.abs(p - q))


def binary_entropy(t):
    if t <= 0.0 or t >= 1.0:
        return 0.0
    return -t * math.log(t) - (1.0 - t) * math.log(1.0 - t)


def tv_entropy_bound(p, q):
    """(|entropy gap|, TV log(k-1) + h(TV)): continuity of entropy in
    total variation on a k-point space."""
    k = len(np.asarray(p).ravel())
    t = total_variation(p, q)
    lhs = abs(entropy(p) - entropy(q))
    rhs = t * math.log(max(k - 1, 1)) + binary_entropy(t)
    return lhs, rhs
