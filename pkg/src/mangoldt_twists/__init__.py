"""Exponential sums of the von Mangoldt function twisted by e(k alpha n^theta).

Direct evaluation, the zero-sum approximation built from zeta zeros, and the
bound envelopes that such sums are compared against.
"""
from .bounds import (BoundConstants, BoundEnvelope, DensityExponent, EnvelopeName,
                     admissible_k_max, all_envelopes, envelope, sigma0, sup_over_sigma)
from .errors import (CoverageError, DomainError, PreconditionError, QuadratureError,
                     ResourceError, TwistError, ZeroTableError)
from .explicit import ComparisonReport, ExplicitApprox, approximate_sum, compare, error_scale
from .oscillatory import (BoundCertificate, OscIntegralSpec, Regime, derivative_test_bound,
                          main_term_integral, pair_term_integrals, zero_term_integral)
from .phase_sum import SumParams, direct_sum
from .sieve import chebyshev_psi, lambda_single, psi_mass, sieve_lambda
from .zeros import ZeroTable, count_up_to, load_fixture, load_zeros, parse_zeros, rvm_estimate

__all__ = [
    "BoundCertificate", "BoundConstants", "BoundEnvelope", "ComparisonReport", "CoverageError",
    "DensityExponent", "DomainError", "EnvelopeName", "ExplicitApprox", "OscIntegralSpec",
    "PreconditionError", "QuadratureError", "Regime", "ResourceError", "SumParams", "TwistError",
    "ZeroTable", "ZeroTableError", "admissible_k_max", "all_envelopes", "approximate_sum",
    "chebyshev_psi", "compare", "count_up_to", "derivative_test_bound", "direct_sum", "envelope",
    "error_scale", "lambda_single", "load_fixture", "load_zeros", "main_term_integral",
    "pair_term_integrals", "parse_zeros", "psi_mass", "rvm_estimate", "sieve_lambda", "sigma0",
    "sup_over_sigma", "zero_term_integral",
]
