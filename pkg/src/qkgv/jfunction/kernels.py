"""Multiple-cover kernels a, b, c, d as exact rational functions of q.

The kernels c and d depend on the class pairing x through polynomials in x
and the truncated exponential e^x; they are stored as a small set of fixed
rational functions of q (one per r) times t-polynomials built from x.
"""

from fractions import Fraction
from functools import lru_cache

from ..exact import QRat
from ..series import TPoly, t_exp


def _inv(r, e):
    return QRat.inv_one_minus_q_power(r, e)


@lru_cache(maxsize=None)
def kernel_a(r):
    """a(r, q^r) = (r-1)/(1-q^r) + 1/(1-q^r)^2."""
    _check_r(r)
    return _inv(r, 1) * (r - 1) + _inv(r, 2)


@lru_cache(maxsize=None)
def kernel_b(r):
    """b(r, q^r) = (r^2-1)/(1-q^r) + 3/(1-q^r)^2 - 2/(1-q^r)^3."""
    _check_r(r)
    return _inv(r, 1) * (r * r - 1) + _inv(r, 2) * 3 - _inv(r, 3) * 2


def _check_r(r):
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"cover degree must be a positive integer, got {r!r}")


@lru_cache(maxsize=None)
def c_pieces(r):
    """(C1, C2) with c = x C1 + (e^x - 1 - x) C2."""
    _check_r(r)
    w1 = _inv(1, 1)
    c1 = w1 * _inv(r, 1) * Fraction(1, r)
    c2 = _inv(1, 2) * Fraction(1, r * r)
    return c1, c2


@lru_cache(maxsize=None)
def d_pieces(r):
    """(D1, D2, D3, D4) with
    d = x D1 + x^2 D2 + (e^x - 1 - x - x^2/2) D3 + x (e^x - 1 - x) D4."""
    _check_r(r)
    qr = QRat.q(r)
    d1 = _inv(1, 1) * (QRat.one_minus_q_power(r) * r - qr) * _inv(r, 2) * Fraction(1, r)
    d2 = _inv(1, 2) * Fraction(1, 2 * r * r)
    d3 = QRat.poly([1, -3]) * _inv(1, 3) * Fraction(1, r ** 3)
    d4 = QRat.q() * _inv(1, 3) * Fraction(1, r ** 3)
    return d1, d2, d3, d4


def exp_pieces(x):
    """Truncated x, e^x - 1 - x, x^2 and e^x - 1 - x - x^2/2 as TPolys."""
    ex = t_exp(x)
    one = TPoly.const(x.nvars, x.degree, Fraction(1))
    e1 = ex - one - x
    x2 = x * x
    e2 = e1 - x2 * Fraction(1, 2)
    return x, e1, x2, e2


def _combine(pairs):
    out = None
    for poly, rat in pairs:
        term = TPoly(poly.nvars, poly.degree, {e: c * rat for e, c in poly.terms.items()})
        out = term if out is None else out + term
    return out


def kernel_c(r, x):
    """c(r, q, x) = x/(r(1-q)(1-q^r)) + (e^x - 1 - x)/(r^2 (1-q)^2), as a TPoly of QRat."""
    c1, c2 = c_pieces(r)
    x, e1, _, _ = exp_pieces(x)
    return _combine([(x, c1), (e1, c2)])


def kernel_d(r, x):
    """d(r, q, x) as a TPoly of QRat (see d_pieces)."""
    d1, d2, d3, d4 = d_pieces(r)
    x, e1, x2, e2 = exp_pieces(x)
    return _combine([(x, d1), (x2, d2), (e2, d3), (x * e1, d4)])
