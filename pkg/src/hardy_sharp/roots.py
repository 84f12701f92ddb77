"""Transcendental frequency equations parameterizing the extremal witnesses.

The frequency alpha of every witness solves tan(alpha*L) + alpha*q = 0 in the
open interval (pi/(2L), pi/L).  tan has a pole at the left endpoint, so the
solver works with the pole-free surrogate

    h(alpha) = sin(alpha*L) + alpha*q*cos(alpha*L),

which is smooth on the bracket, has h > 0 at the left end and h < 0 at the
right end, and is the numerator of the extremal function evaluated at x = b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DomainError

_RESIDUAL_TOL = 1e-13
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class AlphaRoot:
    """A solved frequency with its bracket and residual.

    residual = |sin(alpha*L) + alpha*q*cos(alpha*L)| <= 1e-13.
    """

    alpha: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    L: float
    q: float


def _surrogate(alpha: float, L: float, q: float) -> float:
    return math.sin(alpha * L) + alpha * q * math.cos(alpha * L)


def solve_alpha_extremal(L: float, q: float) -> AlphaRoot:
    """Unique root of tan(alpha*L) + alpha*q = 0 in (pi/(2L), pi/L).

    Bracketed bisection on the surrogate h (guaranteed convergence) followed
    by a secant polish.  The search bracket is shrunk by 1e-12 of its width on
    both sides to respect the open-interval statement.
    """
    if not (L > 0.0) or not math.isfinite(L):
        raise DomainError("L must be positive")
    if not (q > 1.0):
        raise DomainError(f"conjugate exponent must exceed 1, got {q!r}")

    blo = math.pi / (2.0 * L)
    bhi = math.pi / L
    width = bhi - blo
    lo = blo + 1e-12 * width
    hi = bhi - 1e-12 * width
    flo = _surrogate(lo, L, q)
    fhi = _surrogate(hi, L, q)
    # h(pi/(2L)) = 1 and h(pi/L) = -pi*q/L < 0; this cannot fail for valid input.
    assert flo > 0.0 > fhi, (L, q, flo, fhi)

    a, fa = lo, flo
    b, fb = hi, fhi
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:  # bracket width below 1 ulp
            break
        fm = _surrogate(mid, L, q)
        if abs(fm) <= _RESIDUAL_TOL:
            a = b = mid
            fa = fb = fm
            break
        if (fm > 0.0) == (fa > 0.0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm

    root = 0.5 * (a + b)
    # Secant polish (kept inside the bracket).
    x0, f0 = a, fa
    x1, f1 = b, fb
    for _ in range(3):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (blo < x2 < bhi):
            break
        x0, f0 = x1, f1
        x1, f1 = x2, _surrogate(x2, L, q)
    if abs(f1) <= abs(_surrogate(root, L, q)):
        root = x1

    residual = abs(_surrogate(root, L, q))
    assert residual <= _RESIDUAL_TOL, (L, q, root, residual)
    return AlphaRoot(alpha=root, bracket_lo=blo, bracket_hi=bhi,
                     residual=residual, L=L, q=q)


def solve_alpha_p2(L: float) -> AlphaRoot:
    """Root of tan(alpha*L) + 2*alpha = 0; the frequency of the exact p=2 constant."""
    return solve_alpha_extremal(L, 2.0)


def alpha_upper_weight(L: float, p: float) -> float:
    """Frequency arctan(1/p)/L used by the upper-certificate weight.

    Satisfies tan(alpha*L) = 1/p exactly, hence alpha*L < pi/4.
    """
    if not (L > 0.0) or not math.isfinite(L):
        raise DomainError("L must be positive")
    if not (p >= 2.0):
        raise DomainError(f"upper-certificate weight requires p >= 2, got {p!r}")
    return math.atan(1.0 / p) / L
