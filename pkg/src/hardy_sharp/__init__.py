"""Sharp constants for finite Hardy inequalities.

Computes, certifies, and empirically reproduces the best constants d(a,b) and
d_n in

    integral_a^b ((1/x) integral_a^x f)^p dx <= d(a,b) integral_a^b f^p dx
    sum_{k<=n} ((1/k) sum_{j<=k} a_j)^p     <= d_n sum_{k<=n} a_k^p

for p >= 2: the exact p=2 constant 4/(1+4 alpha^2), rigorous lower/upper
certificates from explicit witnesses, a nonlinear power-method solver for
d_n, and the (p/(p-1))^p - C/ln^2 convergence law.
"""

from .core import (DomainError, Exponent, Interval, InvalidWeightError,
                   WitnessInvalidError, compensated_sum, conjugate,
                   hardy_constant, log_weight_antiderivative)
from .roots import AlphaRoot, alpha_upper_weight, solve_alpha_extremal, solve_alpha_p2
from .continuous import (CertificateResult, ExtremalFunction, b_bound_classical,
                         exact_constant_p2, extremizer_p2, fstar_witness,
                         lower_certificate_continuous, prefix_fstar,
                         ratio_continuous, upper_certificate_continuous,
                         upper_weight_witness)
from .discrete import (PowerMethodResult, SweepRecord, WitnessSequence,
                       build_astar, build_mu_weight, default_mu_weight,
                       dn_bounds_report, dn_power_method, hardy_average,
                       hardy_ratio_discrete, lower_certificate_discrete,
                       upper_certificate_discrete)
from .lemmas import (DIAGNOSTIC_IDS, LEMMA_IDS, STRICT_IDS, HuntSummary,
                     LemmaCheck, check_lemma, hunt)
from .quadrature import QuadratureError, adaptive_simpson

__version__ = "0.1.0"
