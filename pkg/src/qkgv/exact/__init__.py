"""Exact arithmetic: rationals, cyclotomic fields, rational functions in q."""

from .arith import (Rational, divisors, euler_phi, factorize, format_rational, lcm, lcm_upto,
                    mobius, parse_rational, row_reduce, solve_linear)
from .cyclotomic import (ConductorMismatchError, CycNumber, RootLabel, cyclotomic_factor,
                         cyclotomic_polynomial, to_field)
from .expansion import (ConductorTooSmallError, LaurentAtRoot, PartialFraction, PoleOrderError,
                        expand_at_zero, laurent_expand, partial_fraction, pi_plus, pi_plus_fake)
from .poly import Poly
from .qrat import NotCyclotomicError, PoleAtZeroError, QRat
from .resummation import cleared_sides, resummation_coefficients, verify_resummation

__all__ = [
    "Rational", "divisors", "euler_phi", "factorize", "format_rational", "lcm", "lcm_upto",
    "mobius", "parse_rational", "row_reduce", "solve_linear",
    "ConductorMismatchError", "CycNumber", "RootLabel", "cyclotomic_factor",
    "cyclotomic_polynomial", "to_field",
    "ConductorTooSmallError", "LaurentAtRoot", "PartialFraction", "PoleOrderError",
    "expand_at_zero", "laurent_expand", "partial_fraction", "pi_plus", "pi_plus_fake",
    "Poly", "NotCyclotomicError", "PoleAtZeroError", "QRat",
    "cleared_sides", "resummation_coefficients", "verify_resummation",
]
