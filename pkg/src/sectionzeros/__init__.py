"""Zeros of sections of exponential-integral entire functions.

Build the partial-sum polynomials (sections) of functions defined by
F(z) = int_{-a}^{b} phi(t) e^{zt} dt with algebraic endpoint behavior,
find their zeros, compute the explicit limit curves the rescaled zeros
accumulate on, and verify the approach rates and special cases
(Bessel, confluent hypergeometric) quantitatively.
"""

__version__ = "0.1.0"

from .analysis import (AdmissibleIndices, InsufficientDataError, RateFit,
                       StrayCandidate, ZeroRecord, admissible_indices,
                       classify_zeros, maxdist, rate_fit, stray_scan, xi)
from .curves import (LimitCurve, bessel_limit_curve, curve_radius,
                     distance_to_curve, in_region_E, in_region_U, in_region_V,
                     sample_limit_curve, szego_curve)
from .integrand import IntegrandSpec, bessel_spec, hyp1f1_spec, named_spec
from .moments import (MomentValue, SlitProximityError, WatsonCheckRow,
                      WatsonProblem, evaluate_F, F_asymptotic,
                      gauss_jacobi_rule, moment, moment_asymptotic,
                      moment_closed_form, moment_closed_form_mp,
                      tail_asymptotic, tail_integral, watson_check)
from .roots import RootSet, aberth_roots, companion_roots, count_in_sector
from .sections import (BesselSectionPair, SectionPolynomial, bessel_section,
                       build_section, eval_section, exp_section, gn_exact,
                       gn_szego, hyp1f1_section, rho_n, szego_epsilon)
from .specfun import (ErfcZeroResult, NonConvergenceError, PoleError,
                      complex_erfc, complex_gamma, complex_log_gamma,
                      first_erfc_zero_upper, real_power)

__all__ = [
    "__version__",
    "AdmissibleIndices", "BesselSectionPair", "ErfcZeroResult",
    "InsufficientDataError", "IntegrandSpec", "LimitCurve", "MomentValue",
    "NonConvergenceError", "PoleError", "RateFit", "RootSet",
    "SectionPolynomial", "SlitProximityError", "StrayCandidate",
    "WatsonCheckRow", "WatsonProblem", "ZeroRecord",
    "aberth_roots", "admissible_indices", "bessel_limit_curve",
    "bessel_section", "bessel_spec", "build_section", "classify_zeros",
    "companion_roots", "complex_erfc", "complex_gamma", "complex_log_gamma",
    "count_in_sector", "curve_radius", "distance_to_curve", "eval_section",
    "evaluate_F", "exp_section", "F_asymptotic", "first_erfc_zero_upper",
    "gauss_jacobi_rule", "gn_exact", "gn_szego", "hyp1f1_section",
    "hyp1f1_spec", "in_region_E", "in_region_U", "in_region_V", "maxdist",
    "moment", "moment_asymptotic", "moment_closed_form",
    "moment_closed_form_mp", "named_spec", "rate_fit", "real_power", "rho_n",
    "sample_limit_curve", "stray_scan", "szego_curve", "szego_epsilon",
    "tail_asymptotic", "tail_integral", "watson_check", "xi",
]
