"""Partial fractions of 1/(1-q^r)^p over the r-th roots of unity, p = 1, 2, 3.

Each identity 1/(1-q^r)^p = sum_{zeta^r=1} sum_j c_{p,j}(r)/(1-zeta q)^j is
checked after multiplying through by (1-q^r)^p, using
(1-q^r)/(1-zeta q) = sum_{i<r} zeta^i q^i, so both sides become polynomials
in q over Q(zeta_r).
"""

from fractions import Fraction

from ..report import Report
from .cyclotomic import CycNumber
from .poly import Poly


def resummation_coefficients(p, r):
    """[c_{p,1}, ..., c_{p,p}]: coefficient of 1/(1-zeta q)^j for j = 1..p."""
    r = Fraction(r)
    if p == 1:
        return [1 / r]
    if p == 2:
        return [(r - 1) / r ** 2, 1 / r ** 2]
    if p == 3:
        return [(2 * r * r - 3 * r + 1) / (2 * r ** 3), 3 * (r - 1) / (2 * r ** 3), 1 / r ** 3]
    raise ValueError("only p = 1, 2, 3 are tabulated")


def _geometric(r, m):
    """sum_{i<r} zeta_r^{m i} q^i as a polynomial over Q(zeta_r)."""
    return Poly([CycNumber.zeta_power(r, m * i) for i in range(r)])


def cleared_sides(p, r, coefficients=resummation_coefficients):
    """(lhs, rhs) polynomials; the identity holds iff they are equal."""
    one = CycNumber.one(r)
    base = Poly([one] + [CycNumber.zero(r)] * (r - 1) + [-one])      # 1 - q^r
    coeffs = coefficients(p, r)
    total = Poly([CycNumber.zero(r)])
    for m in range(r):
        S = _geometric(r, m)
        for j, c in enumerate(coeffs, start=1):
            if c:
                total = total + (S ** j) * (base ** (p - j)) * Poly.const(CycNumber.rational(r, c))
    return Poly([one]), total


def verify_resummation(r_max=8, powers=(1, 2, 3), coefficients=resummation_coefficients):
    rep = Report("verify resummation", {"r_max": r_max})
    for p in powers:
        for r in range(1, r_max + 1):
            lhs, rhs = cleared_sides(p, r, coefficients)
            diff = rhs - lhs
            witness = {} if diff.is_zero() else {"difference": str(diff)}
            rep.add("resummation", [p, r], diff.is_zero(), witness)
    return rep
