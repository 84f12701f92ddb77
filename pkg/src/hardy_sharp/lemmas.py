"""Executable predicates for the auxiliary inequalities behind the certificates.

Each lemma id maps to one inequality with free variables drawn from a subset
of (p, q, alpha, x, y, u, i, n, A, eps, L).  Strict lemmas must hold on every
valid sample; a violation is a build-failing event.  L2_15 is the one
asymptotic identity: its residual is normalized and reported, never asserted.

All finite sums are evaluated exactly, term by term, with extended-precision
accumulation; shared log/index tables keep the O(n) per-sample sweeps at
SIMD speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .core import DomainError, block_sum_compensated
from .roots import solve_alpha_extremal

_LD = np.longdouble
_NMAX = 1_000_000

STRICT = "strict"
DIAGNOSTIC = "diagnostic"

LEMMA_IDS = tuple(f"L2_{j}" for j in range(1, 16))
STRICT_IDS = tuple(f"L2_{j}" for j in range(1, 15))       # L2_14 folds into L2_13
DIAGNOSTIC_IDS = ("L2_15",)

_DESCRIPTIONS = {
    "L2_1": "(1-x)^a <= 1 - a*x + (a*x)^2/2 on x in [0,1], a >= 0",
    "L2_2": "(1+x)^a <= 1 + a*x on x >= -1, 0 <= a <= 1",
    "L2_3": "(1+x)^a <= 1 + a*x + (a*x)^2 on x >= 0, a >= 0, a*x < 1",
    "L2_4": "pointwise cosine-weight bound with c = min{q^2, (pq-1)/2}",
    "L2_5": "pointwise extremal-witness bound for b > b0(eps)",
    "L2_6": "sum k^(-1-1/q) (1 - 1/(p k^(1/q)))^(p/q) <= q (i^(-1/q) - (n+1)^(-1/q))",
    "L2_7": "Euler-summation lower bound for the ln^2-weighted 1/q tail",
    "L2_8": "decreasing-integrand upper bound for the ln^2-weighted 2/q tail",
    "L2_9": "upper bound for the power-difference ln^2-weighted sum",
    "L2_10": "strict positivity of the i >= 2 slack expression",
    "L2_11": "strict positivity of the i = 1 slack expression",
    "L2_12": "lower bound for the shifted-power ln^2-weighted sum, i >= 2",
    "L2_13": "lower bound for the shifted-power ln^2-weighted sum from k = 1",
    "L2_14": "alias of L2_13 (the k = 1 term vanishes identically)",
    "L2_15": "normalized residual of the higher-order binomial tail identity",
}

_lk_table: Optional[np.ndarray] = None
_kf_table: Optional[np.ndarray] = None


def _tables():
    """Shared ln(k) and float(k) tables for k = 1.._NMAX+1 (index by k)."""
    global _lk_table, _kf_table
    if _lk_table is None:
        kf = np.arange(0, _NMAX + 2, dtype=float)
        with np.errstate(divide="ignore"):
            _lk_table = np.log(kf)
        _kf_table = kf
    return _lk_table, _kf_table


def _csum(x: np.ndarray) -> float:
    return block_sum_compensated(x)


@dataclass(frozen=True)
class LemmaCheck:
    id: str
    sample: Dict[str, float]
    holds: bool
    margin: float
    strictness: str


@dataclass(frozen=True)
class HuntSummary:
    id: str
    strictness: str
    count: int
    min_margin: Optional[float]
    worst_sample: Dict[str, float]
    holds_all: bool
    max_normalized_residual: Optional[float] = None


# ----------------------------------------------------------------------
# pointwise margins (vectorized over equally shaped arrays)

def _margin_l2_1(x, a):
    return 1.0 - a * x + 0.5 * (a * x) ** 2 - (1.0 - x) ** a


def _margin_l2_2(x, a):
    return 1.0 + a * x - (1.0 + x) ** a


def _margin_l2_3(x, a):
    return 1.0 + a * x + (a * x) ** 2 - (1.0 + x) ** a


def _margin_l2_4(p, L, u):
    """Cosine-weight bound with alpha = arctan(1/p)/L on u = ln x in [0, L]:

      ((cos + a q sin)/(1+a^2 q^2))^(p-1) <= cos^(p-2) (cos + a p sin)/(1 + c a^2),
      c = min{q^2, (pq-1)/2}.

    This is the proven pointwise form.  The rescaled variant that replaces
    c*a^2 by arctan(1/p)*min{q^2,(pq-1)/2}/L^2 is strictly stronger and has
    numeric counterexamples for every p > 2 (it drops a square on arctan),
    so it is NOT a valid predicate; see the certificate-level tests for the
    bound that the rescaled constant was meant to support.
    """
    q = p / (p - 1.0)
    a = np.arctan(1.0 / p) / L
    c = np.minimum(q * q, (p * q - 1.0) / 2.0)
    cos = np.cos(a * u)
    sin = np.sin(a * u)
    lhs = ((cos + a * q * sin) / (1.0 + (a * q) ** 2)) ** (p - 1.0)
    rhs = cos ** (p - 2.0) * (cos + a * p * sin) / (1.0 + c * a * a)
    return rhs - lhs


def min_log_b0(p: float, eps: float) -> float:
    """ln b0(eps): the witness bound threshold exp(pi/sqrt(min{...} eps)).

    min{q (p-q)^-1 (pq+1)^-2, 4 (pq)^-2}; the first entry tends to +inf as
    p -> 2 (p = q), so at p = 2 the second entry alone applies.
    """
    q = p / (p - 1.0)
    second = 4.0 / (p * q) ** 2
    if p - q <= 1e-12:
        m = second
    else:
        m = min(q / ((p - q) * (p * q + 1.0) ** 2), second)
    return math.pi / math.sqrt(m * eps)


def _margin_l2_5(p, eps, L, u, alpha):
    """(sin(a u))^(p-1) >= h^(p-2) [(1+pq a^2) sin - a(p-q) cos] / (1+(pq+eps) a^2)."""
    q = p / (p - 1.0)
    a = alpha
    sin = np.sin(a * u)
    cos = np.cos(a * u)
    h = a * q * cos + sin
    rhs = h ** (p - 2.0) * ((1.0 + p * q * a * a) * sin - a * (p - q) * cos)
    rhs /= 1.0 + (p * q + eps) * a * a
    return sin ** (p - 1.0) - rhs


# ----------------------------------------------------------------------
# finite-sum margins (scalar sample, vectorized over k)

def _margin_l2_6(p, i, n):
    q = p / (p - 1.0)
    lk, kf = _tables()
    sl = slice(i, n + 1)
    e = np.exp(lk[sl] / (-q))                       # k^(-1/q)
    w = np.exp((p - 1.0) * np.log1p(-e / p))        # (1 - 1/(p k^(1/q)))^(p/q)
    lhs = _csum(e / kf[sl] * w)
    rhs = q * (math.exp(-math.log(i) / q) - math.exp(-math.log(n + 1.0) / q))
    return rhs - lhs


def _poly(lk, q):
    # ln^2 k - 2 q ln k + 2 q^2 == (ln k - q)^2 + q^2  (positive, cancellation-free)
    d = lk - q
    return d * d + q * q


def _margin_l2_7(p, i, n):
    q = p / (p - 1.0)
    lk, kf = _tables()
    sl = slice(i, n + 1)
    e = np.exp(lk[sl] / (-q))
    lhs = _csum(e / kf[sl] * _poly(lk[sl], q))
    li, ln_ = math.log(i), math.log(n)
    rhs = (q * (li * li + 2 * q * q) / i ** (1 / q)
           + _poly(np.float64(li), q) / (2.0 * i ** (1 + 1 / q))
           - q * (ln_ * ln_ + 2 * q * q) / n ** (1 / q))
    return lhs - float(rhs)


def _margin_l2_8(p, i, n):
    q = p / (p - 1.0)
    lk, kf = _tables()
    sl = slice(i, n + 1)
    e2 = np.exp(lk[sl] * (-2.0 / q))
    lhs = _csum(e2 / kf[sl] * _poly(lk[sl], q))
    li = math.log(i)
    rhs = (float(_poly(np.float64(li), q)) / i ** (1 + 2 / q)
           + q * (li * li - q * li + 1.5 * q * q) / (2.0 * i ** (2 / q)))
    return rhs - lhs


def _margin_l2_9(p, i, n):
    q = p / (p - 1.0)
    lk, kf = _tables()
    sl = slice(i, n + 1)
    lks = lk[sl]
    e = np.exp(lks / (-q))                              # k^(-1/q)
    base = np.exp(((p - 2.0) / q - p) * lks)            # k^(-p) (k^(1/q))^(p-2)
    w = -np.expm1((p - 2.0) * np.log1p(-e / p))         # 1 - (1 - 1/(p k^(1/q)))^(p-2)
    bracket = _poly(lks, q) / e - 2.0 * q * q           # k^(1/q) poly - 2 q^2
    lhs = _csum(base * w * bracket)
    li = math.log(i)
    rhs = (float(_poly(np.float64(li), q)) / (q * i ** (1 + 2 / q))
           + (li * li - q * li + 1.5 * q * q) / (2.0 * i ** (2 / q))
           - 2.0 * q * q / (3.0 * i ** (3 / q))
           + 2.0 * q * q / (3.0 * n ** (3 / q)))
    return rhs - lhs


def _margin_l2_10(p, i):
    q = p / (p - 1.0)
    li = math.log(i)
    return (2.0 * q * q - 0.75
            + 2.0 * q / (3.0 * i ** (2 / q))
            - 2.0 * q / i ** (1 + 1 / q)
            - q * q / i ** (1 / q)
            - (li * li - q * li + 1.5 * q * q) / (2.0 * q * i ** (1 / q)))


def _margin_l2_11(p, n):
    q = p / (p - 1.0)
    lk, kf = _tables()
    ln2 = math.log(2.0)
    tail = 0.0
    if n >= 2:
        sl = slice(2, n + 1)
        tail = _csum(np.exp(lk[sl] * (-2.0 / q)) / kf[sl])
    return ((ln2 * ln2 + 2 * q * q) / 2 ** (1 / q)
            + (2.0 / 3.0) * q / 2 ** (3 / q)
            - ln2 * ln2
            - 2.0 * q * tail
            - (ln2 * ln2 - q * ln2 + 1.5 * q * q) / (q * 2 ** (1 + 2 / q)))


def _shifted_power_terms(p, i, n):
    """(S, T): S = sum_{k=i}^n k^-p (k^(1/q)-1/p)^(p/q-1) [k^(1/q) poly(k) - 2q^2],
    T = sum_{k=i}^n k^(-1-2/q).  One shared k^(-1/q) pass serves both."""
    q = p / (p - 1.0)
    lk, kf = _tables()
    sl = slice(i, n + 1)
    lks = lk[sl]
    e = np.exp(lks / (-q))                              # k^(-1/q)
    base = np.exp(((p - 2.0) / q - p) * lks)
    w = np.exp((p - 2.0) * np.log1p(-e / p))            # (1 - 1/(p k^(1/q)))^(p-2)
    bracket = _poly(lks, q) / e - 2.0 * q * q
    return _csum(base * w * bracket), _csum(e * e / kf[sl])


def _tail_2q(p, i, n):
    q = p / (p - 1.0)
    lk, kf = _tables()
    sl = slice(i, n + 1)
    return _csum(np.exp(lk[sl] * (-2.0 / q)) / kf[sl])


def _margin_l2_12(p, i, n):
    q = p / (p - 1.0)
    li, ln_ = math.log(i), math.log(n)
    lhs, tail = _shifted_power_terms(p, i, n)
    rhs = (q * (li * li + 2 * q * q) / i ** (1 / q)
           - q * (ln_ * ln_ + 2 * q * q) / n ** (1 / q)
           - 2.0 * q * q * tail
           - (li * li - q * li + 1.5 * q * q) / (2.0 * i ** (2 / q))
           + 2.0 * q * q / (3.0 * i ** (3 / q))
           - 2.0 * q * q / (3.0 * n ** (3 / q)))
    return lhs - rhs


def _margin_l2_13(p, n):
    q = p / (p - 1.0)
    ln2, ln_ = math.log(2.0), math.log(n)
    # The k = 1 term of the sum vanishes identically, so start at k = 2 and
    # share the k^(-1/q) pass with the k >= 2 power tail.
    lhs, tail = _shifted_power_terms(p, 2, n) if n >= 2 else (0.0, 0.0)
    rhs = (q * (ln2 * ln2 + 2 * q * q) / 2 ** (1 / q)
           - q * (ln_ * ln_ + 2 * q * q) / n ** (1 / q)
           - 2.0 * q * q * tail
           - (ln2 * ln2 - q * ln2 + 1.5 * q * q) / 2 ** (1 + 2 / q)
           + (2.0 / 3.0) * q * q / 2 ** (3 / q)
           - 2.0 * q * q / (3.0 * n ** (3 / q)))
    return lhs - rhs


def l2_15_normalized_residual(p: float, i: int, n: int, A: float) -> float:
    """|double sum - main term| / (1/(A^2 ln^2(n+1) i^(1/q)) + 1/(A^2 n^(1/q))).

    Identity: sum_{j>=2} (-1)^j C(p/q, j) A^-j ln^(-2j)(n+1)
                 sum_{k=i}^n (ln^(2j) k - 2qj ln^(2j-1) k) / k^(1+1/q)
              = (q / i^(1/q)) sum_{j>=2} (-1)^j C(p/q, j) (ln^2 i / (A ln^2(n+1)))^j
                + O(normalizer).
    The k = 1 term of the inner sum vanishes, so summation starts at max(i, 2).
    The j-series is truncated once the geometric envelope (1/A)^j falls below
    1e-22 relative; A > 1 guarantees geometric decay since ln k / ln(n+1) <= 1.
    """
    if A <= 1.0:
        raise DomainError("the tail identity requires A > 1")
    q = p / (p - 1.0)
    x = p / q                                  # = p - 1
    lk, kf = _tables()
    ln1 = math.log(n + 1.0)
    start = max(i, 2)
    lhs = 0.0
    if start <= n:
        sl = slice(start, n + 1)
        lks = lk[sl]
        w0 = np.exp(lks * (-1.0 / q)) / kf[sl]     # k^(-1-1/q)
        w1 = w0 / lks
        r2 = (lks / ln1) ** 2
        rj = r2 * r2                               # r^(2j) at j = 2
        binom = x * (x - 1.0) / 2.0                # C(x, 2)
        scale = abs(_csum(w0)) + 1.0
        j = 2
        while True:
            s0 = _csum(rj * w0)
            s1 = _csum(rj * w1)
            term = ((-1.0) ** j) * binom * (A ** -j) * (s0 - 2.0 * q * j * s1)
            lhs += term
            j += 1
            binom *= (x - j + 1.0) / j
            if j > 400 or (abs(binom) + 1.0) * A ** -j * scale * (j + 1) ** 2 < 1e-22:
                break
            rj = rj * r2
    # main term on the right
    ri2 = (math.log(i) / ln1) ** 2
    rhs = 0.0
    binom = x * (x - 1.0) / 2.0
    z = ri2 / A
    zj = z * z
    j = 2
    while True:
        rhs += ((-1.0) ** j) * binom * zj
        j += 1
        binom *= (x - j + 1.0) / j
        zj *= z
        if j > 400 or abs(binom * zj) < 1e-25:
            break
    rhs *= q / i ** (1.0 / q)
    normalizer = 1.0 / (A * A * ln1 * ln1 * i ** (1.0 / q)) + 1.0 / (A * A * n ** (1.0 / q))
    return abs(lhs - rhs) / normalizer


# ----------------------------------------------------------------------
# domains, scalar checks, hunts

def _as_int(v, name):
    iv = int(v)
    if iv != v:
        raise DomainError(f"{name} must be an integer, got {v!r}")
    return iv


def check_lemma(lemma_id: str, sample: Dict[str, float]) -> LemmaCheck:
    """Evaluate one lemma predicate on one sample.

    Out-of-domain samples raise DomainError (they are not counterexamples).
    For L2_5 the sample may give either L or b; alpha is solved internally.
    """
    lid = "L2_13" if lemma_id == "L2_14" else lemma_id
    if lid not in LEMMA_IDS:
        raise DomainError(f"unknown lemma id {lemma_id!r}")
    s = dict(sample)
    strictness = DIAGNOSTIC if lid == "L2_15" else STRICT

    if lid in ("L2_1", "L2_2", "L2_3"):
        x, a = float(s["x"]), float(s["alpha"])
        if lid == "L2_1" and not (0.0 <= x <= 1.0 and a >= 0.0):
            raise DomainError("L2_1 requires x in [0,1], alpha >= 0")
        if lid == "L2_2" and not (x >= -1.0 and 0.0 <= a <= 1.0):
            raise DomainError("L2_2 requires x >= -1, alpha in [0,1]")
        if lid == "L2_3" and not (x >= 0.0 and a >= 0.0 and a * x < 1.0):
            raise DomainError("L2_3 requires x >= 0, alpha >= 0, alpha*x < 1")
        fn = {"L2_1": _margin_l2_1, "L2_2": _margin_l2_2, "L2_3": _margin_l2_3}[lid]
        margin = float(fn(np.float64(x), np.float64(a)))
    elif lid == "L2_4":
        p, L, u = float(s["p"]), float(s["L"]), float(s["u"])
        if not (p >= 2.0 and L > 0.0 and 0.0 <= u <= L):
            raise DomainError("L2_4 requires p >= 2, L > 0, u in [0, L]")
        margin = float(_margin_l2_4(np.float64(p), np.float64(L), np.float64(u)))
    elif lid == "L2_5":
        p, eps, L, u = float(s["p"]), float(s["eps"]), float(s["L"]), float(s["u"])
        if not (p >= 2.0 and 0.0 < eps < 1.0):
            raise DomainError("L2_5 requires p >= 2 and eps in (0,1)")
        if L <= min_log_b0(p, eps):
            raise DomainError("L2_5 requires b > b0(eps)")
        if not (0.0 <= u <= L):
            raise DomainError("L2_5 requires u in [0, L]")
        alpha = solve_alpha_extremal(L, p / (p - 1.0)).alpha
        margin = float(_margin_l2_5(np.float64(p), eps, L, np.float64(u), alpha))
    elif lid == "L2_10":
        p, i = float(s["p"]), _as_int(s["i"], "i")
        if not (p >= 2.0 and i >= 2):
            raise DomainError("L2_10 requires p >= 2 and i >= 2")
        margin = _margin_l2_10(p, i)
    elif lid in ("L2_11", "L2_13"):
        p, n = float(s["p"]), _as_int(s["n"], "n")
        if not (p >= 2.0 and 1 <= n <= _NMAX):
            raise DomainError(f"{lid} requires p >= 2 and 1 <= n <= {_NMAX}")
        margin = (_margin_l2_11 if lid == "L2_11" else _margin_l2_13)(p, n)
    elif lid == "L2_15":
        p, i, n, A = float(s["p"]), _as_int(s["i"], "i"), _as_int(s["n"], "n"), float(s["A"])
        if not (p >= 2.0 and 1 <= i <= n <= _NMAX and A > 1.0):
            raise DomainError("L2_15 requires p >= 2, 1 <= i <= n, A > 1")
        resid = l2_15_normalized_residual(p, i, n, A)
        return LemmaCheck(id=lemma_id, sample=s, holds=True, margin=resid,
                          strictness=DIAGNOSTIC)
    else:
        p, i, n = float(s["p"]), _as_int(s["i"], "i"), _as_int(s["n"], "n")
        i_min = 2 if lid == "L2_12" else 1
        if not (p >= 2.0 and i_min <= i <= n <= _NMAX):
            raise DomainError(f"{lid} requires p >= 2 and {i_min} <= i <= n <= {_NMAX}")
        fn = {"L2_6": _margin_l2_6, "L2_7": _margin_l2_7, "L2_8": _margin_l2_8,
              "L2_9": _margin_l2_9, "L2_12": _margin_l2_12}[lid]
        margin = fn(p, i, n)

    return LemmaCheck(id=lemma_id, sample=s, holds=bool(margin >= 0.0),
                      margin=float(margin), strictness=strictness)


def _log_uniform_int(rng, lo, hi, size):
    u = rng.uniform(math.log(lo), math.log(hi + 1.0), size=size)
    return np.minimum(np.floor(np.exp(u)).astype(np.int64), hi)


def _log_uniform_int_upto(rng, lo, hi_arr):
    """Per-sample log-uniform integers on [lo, hi_arr[m]]."""
    lo_l = math.log(lo)
    hi_l = np.log(hi_arr + 1.0)
    u = lo_l + rng.uniform(0.0, 1.0, size=hi_arr.size) * (hi_l - lo_l)
    return np.minimum(np.floor(np.exp(u)).astype(np.int64), hi_arr)


def hunt(lemma_id: str, samples: int, seed: int) -> HuntSummary:
    """Draw `samples` points from the lemma's domain and track the worst margin.

    Integer variables i, n are log-uniform up to 1e6; continuous variables are
    uniform on their (documented) boxes; p is uniform on [2, 16].  Fully
    deterministic for a fixed seed; results do not depend on chunking.
    """
    lid = "L2_13" if lemma_id == "L2_14" else lemma_id
    if lid not in LEMMA_IDS:
        raise DomainError(f"unknown lemma id {lemma_id!r}")
    if samples < 1:
        raise DomainError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    strictness = DIAGNOSTIC if lid == "L2_15" else STRICT

    if lid in ("L2_1", "L2_2", "L2_3"):
        if lid == "L2_1":
            a = rng.uniform(0.0, 16.0, samples)
            x = rng.uniform(0.0, 1.0, samples)
            margins = _margin_l2_1(x, a)
        elif lid == "L2_2":
            a = rng.uniform(0.0, 1.0, samples)
            x = -1.0 + 10.0 ** rng.uniform(-6.0, 6.0, samples)   # skewed box [-1, ~1e6]
            margins = _margin_l2_2(x, a)
        else:
            a = rng.uniform(0.0, 16.0, samples)
            s = rng.uniform(0.0, 1.0, samples)
            x = np.where(a > 1e-9, s / np.maximum(a, 1e-300), 10.0 ** (12.0 * s - 6.0))
            margins = _margin_l2_3(x, a)
        j = int(np.argmin(margins))
        worst = {"x": float(x[j]), "alpha": float(a[j])}
        mn = float(margins[j])
        return HuntSummary(lemma_id, strictness, samples, mn, worst, bool(mn >= 0.0))

    if lid == "L2_4":
        p = rng.uniform(2.0, 16.0, samples)
        L = 10.0 ** rng.uniform(-2.0, math.log10(200.0), samples)
        u = rng.uniform(0.0, 1.0, samples) * L
        margins = _margin_l2_4(p, L, u)
        j = int(np.argmin(margins))
        worst = {"p": float(p[j]), "L": float(L[j]), "u": float(u[j])}
        mn = float(margins[j])
        return HuntSummary(lemma_id, strictness, samples, mn, worst, bool(mn >= 0.0))

    if lid == "L2_5":
        p = rng.uniform(2.0, 16.0, samples)
        eps = rng.uniform(0.1, 1.0, samples)
        stretch = np.exp(rng.uniform(math.log(1.01), math.log(4.0), samples))
        frac = rng.uniform(0.0, 1.0, samples)
        margins = np.empty(samples)
        L_arr = np.empty(samples)
        u_arr = np.empty(samples)
        for m in range(samples):
            L = min_log_b0(float(p[m]), float(eps[m])) * float(stretch[m])
            alpha = solve_alpha_extremal(L, p[m] / (p[m] - 1.0)).alpha
            u = frac[m] * L
            L_arr[m], u_arr[m] = L, u
            margins[m] = _margin_l2_5(np.float64(p[m]), float(eps[m]), L,
                                      np.float64(u), alpha)
        j = int(np.argmin(margins))
        worst = {"p": float(p[j]), "eps": float(eps[j]), "L": float(L_arr[j]),
                 "u": float(u_arr[j])}
        mn = float(margins[j])
        return HuntSummary(lemma_id, strictness, samples, mn, worst, bool(mn >= 0.0))

    if lid == "L2_10":
        p = rng.uniform(2.0, 16.0, samples)
        i = _log_uniform_int(rng, 2, _NMAX, samples)
        margins = np.array([_margin_l2_10(float(p[m]), int(i[m])) for m in range(samples)])
        j = int(np.argmin(margins))
        return HuntSummary(lemma_id, strictness, samples, float(margins[j]),
                           {"p": float(p[j]), "i": int(i[j])}, bool(margins[j] >= 0.0))

    if lid in ("L2_11", "L2_13"):
        p = rng.uniform(2.0, 16.0, samples)
        n = _log_uniform_int(rng, 1, _NMAX, samples)
        fn = _margin_l2_11 if lid == "L2_11" else _margin_l2_13
        mn, worst = math.inf, {}
        for m in range(samples):
            v = fn(float(p[m]), int(n[m]))
            if v < mn:
                mn, worst = v, {"p": float(p[m]), "n": int(n[m])}
        return HuntSummary(lemma_id, strictness, samples, float(mn), worst, bool(mn >= 0.0))

    if lid == "L2_15":
        p = rng.uniform(2.0, 16.0, samples)
        n = _log_uniform_int(rng, 2, _NMAX, samples)
        i = _log_uniform_int_upto(rng, 1, n)
        A = np.exp(rng.uniform(math.log(2.0), math.log(64.0), samples))
        mx, worst = -math.inf, {}
        for m in range(samples):
            v = l2_15_normalized_residual(float(p[m]), int(i[m]), int(n[m]), float(A[m]))
            if v > mx:
                mx, worst = v, {"p": float(p[m]), "i": int(i[m]), "n": int(n[m]),
                                "A": float(A[m])}
        return HuntSummary(lemma_id, DIAGNOSTIC, samples, None, worst, True,
                           max_normalized_residual=float(mx))

    # remaining sum lemmas: L2_6..L2_9, L2_12
    i_min = 2 if lid == "L2_12" else 1
    p = rng.uniform(2.0, 16.0, samples)
    n = _log_uniform_int(rng, i_min, _NMAX, samples)
    i = _log_uniform_int_upto(rng, i_min, n)
    fn = {"L2_6": _margin_l2_6, "L2_7": _margin_l2_7, "L2_8": _margin_l2_8,
          "L2_9": _margin_l2_9, "L2_12": _margin_l2_12}[lid]
    mn, worst = math.inf, {}
    for m in range(samples):
        v = fn(float(p[m]), int(i[m]), int(n[m]))
        if v < mn:
            mn, worst = v, {"p": float(p[m]), "i": int(i[m]), "n": int(n[m])}
    return HuntSummary(lemma_id, strictness, samples, float(mn), worst, bool(mn >= 0.0))


def describe(lemma_id: str) -> str:
    if lemma_id not in LEMMA_IDS and lemma_id != "L2_14":
        raise DomainError(f"unknown lemma id {lemma_id!r}")
    return _DESCRIPTIONS[lemma_id]
