"""Sharp-constant machinery for the finite-interval Hardy inequality.

For 0 < a < b the constant of interest is

    d(a,b) = sup_f  [ integral_a^b ((1/x) integral_a^x f)^p dx ]
                    / [ integral_a^b f^p dx ],

which depends on (a,b) only through L = ln(b/a); everything here first
rescales to (1, e^L) and then substitutes u = ln x, where all integrands
become smooth trig-exponential products:

  * exact p=2 constant 4/(1+4*alpha^2), alpha the root of tan(alpha*L)+2*alpha=0;
  * the almost-extremal witness f*(x) = x^(-1/p)(alpha*q*cos(alpha*ln x)+sin(alpha*ln x))
    with closed-form prefix integral q*x^(1/q)*sin(alpha*ln x);
  * lower certificate  d >= min_t M(t),  M(t) = f*(t)^(-p/q) * integral_t^b (prefix)^(p/q) x^-p dx;
  * upper certificate  d <= max_t M(g,t) for the weight
    g(x) = x^(-1/(pq)) cos(alpha*ln x)^(1/q), alpha = arctan(1/p)/L;
  * the classical two-sided B-bound for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .core import DomainError, Exponent, Interval, WitnessInvalidError
from .quadrature import adaptive_simpson, cumulative_tail_simpson
from .roots import AlphaRoot, alpha_upper_weight, solve_alpha_extremal, solve_alpha_p2

# Witness kinds
FSTAR = "fstar"
F_AB_P2 = "f_ab_p2"
WEIGHT_G = "weight_g"

_TGRID_CLIP = 1e-6     # M(t) is evaluated for ln t <= L*(1 - clip); the limit at b is 0/0
_COARSE_GRID = 2048
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CertificateResult:
    """A one-sided bound on a sharp constant produced by an explicit witness."""

    value: float
    side: str                 # "lower" | "upper"
    witness: str
    error_budget: float
    extremizer_location: float   # arg-min/arg-max position (t for continuous, i for discrete)


@dataclass(frozen=True)
class ExtremalFunction:
    """A witness on (1, e^L), stored through its frequency and exponent pair.

    kinds:
      fstar    -- x^(-1/p) (alpha*q cos(alpha ln x) + sin(alpha ln x)), alpha extremal root
      f_ab_p2  -- the p=2 specialization (the exact extremizer)
      weight_g -- x^(-1/(pq)) cos(alpha ln x)^(1/q), alpha = arctan(1/p)/L
    """

    kind: str
    exp: Exponent
    alpha: float
    L: float
    root: AlphaRoot | None = None

    def value_log(self, u):
        """Witness value at x = e^u, vectorized over u."""
        u = np.asarray(u, dtype=float)
        a, p, q = self.alpha, self.exp.p, self.exp.q
        if self.kind in (FSTAR, F_AB_P2):
            return np.exp(-u / p) * (a * q * np.cos(a * u) + np.sin(a * u))
        if self.kind == WEIGHT_G:
            return np.exp(-u / (p * q)) * np.cos(a * u) ** (1.0 / q)
        raise ValueError(f"unknown witness kind {self.kind!r}")

    def oscillation_log(self, u):
        """The trigonometric factor h(u) = alpha*q*cos(alpha*u) + sin(alpha*u)."""
        u = np.asarray(u, dtype=float)
        a, q = self.alpha, self.exp.q
        return a * q * np.cos(a * u) + np.sin(a * u)


def fstar_witness(interval: Interval, exp: Exponent) -> ExtremalFunction:
    root = solve_alpha_extremal(interval.L, exp.q)
    return ExtremalFunction(kind=FSTAR, exp=exp, alpha=root.alpha, L=interval.L, root=root)


def extremizer_p2(interval: Interval) -> ExtremalFunction:
    root = solve_alpha_p2(interval.L)
    return ExtremalFunction(kind=F_AB_P2, exp=Exponent(2.0), alpha=root.alpha,
                            L=interval.L, root=root)


def upper_weight_witness(interval: Interval, exp: Exponent) -> ExtremalFunction:
    a = alpha_upper_weight(interval.L, exp.p)
    return ExtremalFunction(kind=WEIGHT_G, exp=exp, alpha=a, L=interval.L)


def prefix_fstar(x: float, alpha: AlphaRoot, exp: Exponent) -> float:
    """Closed form of integral_1^x f*(t) dt = q * x^(1/q) * sin(alpha * ln x)."""
    b = math.exp(alpha.L)
    if not (1.0 <= x <= b * (1.0 + 1e-12)):
        raise DomainError(f"prefix_fstar requires x in [1, b]={1.0, b}, got {x!r}")
    return exp.q * x ** (1.0 / exp.q) * math.sin(alpha.alpha * math.log(x))


def exact_constant_p2(interval: Interval) -> float:
    """The exact p=2 constant 4/(1+4*alpha^2) on (a, b); increasing in L, tends to 4."""
    alpha = solve_alpha_p2(interval.L).alpha
    return 4.0 / (1.0 + 4.0 * alpha * alpha)


def _check_tol(tol: float) -> None:
    if not (1e-12 <= tol <= 1e-4):
        raise DomainError(f"quadrature tolerance must lie in [1e-12, 1e-4], got {tol!r}")


def _positivity_scan(values: np.ndarray, what: str) -> None:
    if np.any(values <= 0.0) or not np.all(np.isfinite(values)):
        raise WitnessInvalidError(f"witness {what} is nonpositive at a quadrature node")


def ratio_continuous(f: Union[ExtremalFunction, Callable], interval: Interval,
                     exp: Exponent | None = None, tol: float = 1e-9) -> float:
    """Hardy ratio of a positive witness on (a, b); a lower bound for d(a,b).

    For the fstar / f_ab_p2 kinds the prefix integral telescopes in closed
    form and in u = ln x the ratio reduces to two 1-d smooth integrals:

        q^p * integral_0^L sin(alpha u)^p du  /  integral_0^L h(u)^p du,

    h(u) = alpha*q*cos(alpha*u) + sin(alpha*u).  A generic positive callable
    f(x) (vectorized) is handled by a fixed-grid composite-Simpson path.
    """
    _check_tol(tol)
    L = interval.L
    if isinstance(f, ExtremalFunction):
        if exp is None:
            exp = f.exp
        if abs(f.L - L) > 1e-12 * max(1.0, L):
            raise DomainError("witness was built for a different log-length than the interval")
        if f.kind in (FSTAR, F_AB_P2):
            a, p = f.alpha, exp.p
            probe = np.linspace(0.0, L, 1025)[:-1]
            _positivity_scan(f.oscillation_log(probe), f.kind)
            num, nerr = adaptive_simpson(lambda u: np.sin(a * u) ** p, 0.0, L, tol)
            den, derr = adaptive_simpson(lambda u: f.oscillation_log(u) ** p, 0.0, L, tol)
            return exp.qp * num / den
        # weight_g has no closed prefix; fall through to the generic path.
        fn = lambda x: f.value_log(np.log(x))
    else:
        fn = f
        if exp is None:
            raise DomainError("an Exponent is required for a generic witness callable")
    return _ratio_generic(fn, L, exp)


def _ratio_generic(fn: Callable, L: float, exp: Exponent, panels: int = 8192) -> float:
    """Fixed-grid Hardy ratio for an arbitrary positive vectorized f(x).

    Composite Simpson with midpoint-corrected cumulative prefix; diagnostic
    accuracy (~1e-10 relative for smooth f), not tolerance-driven.
    """
    p = exp.p
    if panels % 2:
        panels += 1
    u = np.linspace(0.0, L, panels + 1)
    h = u[1] - u[0]
    mids = u[:-1] + 0.5 * h
    w_nodes = np.asarray(fn(np.exp(u)), dtype=float)
    w_mids = np.asarray(fn(np.exp(mids)), dtype=float)
    _positivity_scan(w_nodes, "f")
    _positivity_scan(w_mids, "f")
    # prefix(u_j) = integral_1^{e^{u_j}} f dx = integral_0^{u_j} f(e^v) e^v dv
    g_nodes = w_nodes * np.exp(u)
    g_mids = w_mids * np.exp(mids)
    seg = h / 6.0 * (g_nodes[:-1] + 4.0 * g_mids + g_nodes[1:])
    prefix = np.concatenate([[0.0], np.cumsum(seg.astype(np.longdouble))]).astype(float)
    num_int = prefix ** p * np.exp((1.0 - p) * u)
    den_int = w_nodes ** p * np.exp(u)

    def simpson_nodes(vals: np.ndarray) -> float:
        return float(h / 3.0 * (vals[0] + vals[-1]
                                + 4.0 * np.sum(vals[1:-1:2], dtype=np.longdouble)
                                + 2.0 * np.sum(vals[2:-1:2], dtype=np.longdouble)))

    return simpson_nodes(num_int) / simpson_nodes(den_int)


def _log_inner_prefix_upper(u: np.ndarray, alpha: float, q: float) -> np.ndarray:
    """ln of P(u) = integral_1^{e^u} g^q = q/(1+a^2 q^2) [e^{u/q}(cos(au)+aq sin(au)) - 1].

    Stable for u near 0 (expm1 form) and for large u (log-shift form);
    P is positive for u > 0.
    """
    u = np.asarray(u, dtype=float)
    aq = alpha * q
    c = np.cos(alpha * u) + aq * np.sin(alpha * u)
    out = np.empty_like(u)
    big = u / q >= 1.0
    ub, cb = u[big], c[big]
    out[big] = ub / q + np.log(cb - np.exp(-ub / q))
    us, cs = u[~big], c[~big]
    sin_half = np.sin(alpha * us / 2.0)
    inner = np.expm1(us / q) * cs + (aq * np.sin(alpha * us) - 2.0 * sin_half * sin_half)
    out[~big] = np.log(inner)
    return out + math.log(q / (1.0 + aq * aq))


class _MFunctional:
    """Position-indexed certificate functional M(t) evaluated in the log domain.

    side="lower" uses the extremal witness f*; side="upper" uses the weight g.
    Both reduce to  M(u) = exp(pref(u)) * integral_u^L W(v) dv  with smooth W,
    computed via a shared tail table on a coarse grid plus adaptive local
    refinement for single points.
    """

    def __init__(self, exp: Exponent, L: float, side: str):
        self.exp, self.L, self.side = exp, L, side
        p, q = exp.p, exp.q
        if side == "lower":
            self.root = solve_alpha_extremal(L, q)
            self.alpha = self.root.alpha
        else:
            self.alpha = alpha_upper_weight(L, p)
        a = self.alpha

        if side == "lower":
            def integrand(v):
                v = np.asarray(v, dtype=float)
                return np.exp(-v / q) * np.sin(a * v) ** (p - 1.0)

            def log_prefactor(u):
                u = np.asarray(u, dtype=float)
                hval = a * q * np.cos(a * u) + np.sin(a * u)
                if np.any(hval <= 0.0):
                    raise WitnessInvalidError("extremal witness nonpositive on the t-grid")
                return (p - 1.0) * math.log(q) + u / q + (1.0 - p) * np.log(hval)
        else:
            def integrand(v):
                v = np.asarray(v, dtype=float)
                out = np.zeros_like(v)
                pos = v > 0.0
                lp = _log_inner_prefix_upper(v[pos], a, q)
                out[pos] = np.exp((p - 1.0) * (lp - v[pos]))
                return out

            def log_prefactor(u):
                u = np.asarray(u, dtype=float)
                return u / q - (p - 1.0) * np.log(np.cos(a * u))

        self.integrand = integrand
        self.log_prefactor = log_prefactor

    def tail_table(self, grid: np.ndarray):
        full = np.concatenate([grid, [self.L]]) if grid[-1] < self.L else grid
        tails, errs = cumulative_tail_simpson(self.integrand, full, subpanels=8)
        return tails[: grid.size], errs[: grid.size]

    def at(self, u: float, anchor_u: float, anchor_tail: float, tol: float,
           anchor_err: float = 0.0):
        """(M, error) at a single point, reusing the nearest tabulated tail.

        Only the short increment integral between u and the anchor is computed
        adaptively; the returned error combines the achieved increment error
        and the tabulated tail error, both propagated through the prefactor.
        """
        # The increment spans at most a grid cell; scale its absolute goal to
        # the magnitude of the local tail so huge prefactors stay harmless.
        tol_inc = tol * max(anchor_tail, 1e-300) * max(abs(u - anchor_u) / self.L, 1e-6)
        if u <= anchor_u:
            inc, inc_err = adaptive_simpson(self.integrand, u, anchor_u, tol_inc,
                                            initial_panels=4)
            tail = anchor_tail + inc
        else:
            inc, inc_err = adaptive_simpson(self.integrand, anchor_u, u, tol_inc,
                                            initial_panels=4)
            tail = anchor_tail - inc
        if tail <= 0.0:
            val = 0.0 if self.side == "upper" else math.inf
            return val, math.inf
        prefac = math.exp(float(self.log_prefactor(u)))
        return prefac * tail, prefac * (inc_err + anchor_err)


def _golden_refine(fn, lo: float, hi: float, maximize: bool, iters: int = 60):
    """Golden-section extremum search; returns (u, value, bracket_spread)."""
    sgn = -1.0 if maximize else 1.0
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = sgn * fn(x1), sgn * fn(x2)
    for _ in range(iters):
        if hi - lo < 1e-12 * max(1.0, abs(hi)):
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = sgn * fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = sgn * fn(x2)
    if f1 <= f2:
        return x1, sgn * f1, abs(f2 - f1)
    return x2, sgn * f2, abs(f2 - f1)


def _certificate(interval: Interval, exp: Exponent, tol: float, side: str) -> CertificateResult:
    _check_tol(tol)
    L = interval.L
    m = _MFunctional(exp, L, side)
    u_max = L * (1.0 - _TGRID_CLIP)
    grid = np.linspace(0.0, u_max, _COARSE_GRID)
    tails, tail_errs = m.tail_table(grid)
    with np.errstate(divide="ignore"):
        logM = m.log_prefactor(grid) + np.log(tails)
    maximize = side == "upper"
    order = np.argsort(logM)[::-1] if maximize else np.argsort(logM)
    # Refine around the 3 best, well-separated coarse grid points (the
    # functional is smooth but not provably unimodal).
    chosen: list[int] = []
    for j in order:
        if all(abs(int(j) - c) > 2 for c in chosen):
            chosen.append(int(j))
        if len(chosen) == 3:
            break
    best_u = grid[chosen[0]]
    best_v = -math.inf if maximize else math.inf
    spread = 0.0
    best_anchor = chosen[0]
    for j in chosen:
        lo = grid[max(j - 1, 0)]
        hi = grid[min(j + 1, grid.size - 1)]
        anchor = grid[j]
        fn = lambda u: m.at(u, anchor, float(tails[j]), tol)[0]
        u_loc, v_loc, sp = _golden_refine(fn, lo, hi, maximize=maximize)
        if (maximize and v_loc > best_v) or (not maximize and v_loc < best_v):
            best_u, best_v, spread, best_anchor = u_loc, v_loc, sp, j
    # Error at the extremizer: achieved increment error plus tabulated tail
    # error (both propagated through the prefactor) plus the golden bracket
    # spread.
    _, at_err = m.at(best_u, grid[best_anchor], float(tails[best_anchor]), tol,
                     anchor_err=float(tail_errs[best_anchor]))
    budget = at_err + spread + 1e-13 * abs(best_v)
    alpha = m.alpha
    witness = (
        f"{'weight g' if side == 'upper' else 'extremal f*'}"
        f"(p={exp.p:g}, L={L:.12g}, alpha={alpha:.12g}); "
        f"t-grid {_COARSE_GRID} pts in ln t over [0, L*(1-{_TGRID_CLIP:g})], golden-refined"
    )
    return CertificateResult(value=best_v, side=side, witness=witness,
                             error_budget=budget,
                             extremizer_location=interval.a * math.exp(best_u))


def lower_certificate_continuous(interval: Interval, exp: Exponent,
                                 tol: float = 1e-9) -> CertificateResult:
    """d(a,b) >= min_t M(t) via the extremal witness f*.

    At p=2 the functional M(t) is exactly constant equal to 4/(1+4 alpha^2),
    so the certificate reproduces the exact constant up to quadrature error.
    """
    return _certificate(interval, exp, tol, side="lower")


def upper_certificate_continuous(interval: Interval, exp: Exponent,
                                 tol: float = 1e-9) -> CertificateResult:
    """d(a,b) <= max_t M(g,t) via the cosine-tapered weight g; requires p >= 2."""
    return _certificate(interval, exp, tol, side="upper")


def b_bound_classical(interval: Interval, exp: Exponent) -> tuple[float, float]:
    """Classical two-sided bound (B/(p-1), q^p * B) from the sup-functional

        B = sup_{a<x<b} (x-a)^(p-1) * (x^(1-p) - b^(1-p)).

    The sup is located with a 1000-point log-spaced grid and golden-section
    refinement (phi vanishes at both endpoints and is smooth inside).
    """
    a, b, p = interval.a, interval.b, exp.p

    def phi(x):
        x = np.asarray(x, dtype=float)
        return (x - a) ** (p - 1.0) * (x ** (1.0 - p) - b ** (1.0 - p))

    grid = a * np.exp(np.linspace(0.0, interval.L, 1002)[1:-1])
    vals = phi(grid)
    j = int(np.argmax(vals))
    lo = grid[max(j - 1, 0)]
    hi = grid[min(j + 1, grid.size - 1)]
    _, big, _ = _golden_refine(lambda x: float(phi(x)), lo, hi, maximize=True)
    big = max(big, float(vals[j]))
    return big / (p - 1.0), exp.qp * big
