"""Construction of the J-function from GV data.

The coefficient of Q^gamma (gamma != 0) sums, over factorizations
gamma = r beta with GV_beta != 0, the r-fold cover contribution

    (1-q) GV_beta [ sum_j Phi^{1j} beta_j (a(r,q^r) + c(r,q,x))
                    + Phi^{01} (b(r,q^r) + d(r,q,x)) ],

where beta_j is the divisor degree of beta and x = sum_j t_j gamma_j is
the pairing of t with the whole class gamma = r beta.
"""

from fractions import Fraction

from ..exact import QRat
from ..geometry import beta_t, f_cubic, ind
from ..series import (PHI_01, UNIT, KVector, NovikovSeries, TPoly, class_degree,
                      enumerate_classes, phi_lo, phi_up, zero_class)
from .kernels import c_pieces, d_pieces, exp_pieces, kernel_a, kernel_b

ONE_MINUS_Q = QRat.poly([1, -1])


def _scaled(poly, rat):
    return TPoly(poly.nvars, poly.degree, {e: c * rat for e, c in poly.terms.items()})


def _add(a, b):
    return b if a is None else a + b


def cover_contribution(geom, gamma, r, t_degree):
    """KVector of TPoly[QRat]: one r-fold cover of gamma / r, with GV weight 1."""
    gamma = tuple(gamma)
    if any(x % r for x in gamma):
        raise ValueError(f"{r} does not divide the class {gamma}")
    beta = tuple(x // r for x in gamma)
    degs = geom.degrees(beta)
    x = beta_t(geom, gamma, t_degree)
    xs, e1, x2, e2 = exp_pieces(x)
    one = TPoly.const(geom.n1, t_degree, Fraction(1))
    c1, c2 = c_pieces(r)
    d1, d2, d3, d4 = d_pieces(r)
    a_part = _scaled(one, ONE_MINUS_Q * kernel_a(r))
    for poly, rat in ((xs, c1), (e1, c2)):
        a_part = a_part + _scaled(poly, ONE_MINUS_Q * rat)
    b_part = _scaled(one, ONE_MINUS_Q * kernel_b(r))
    for poly, rat in ((xs, d1), (x2, d2), (e2, d3), (xs * e1, d4)):
        b_part = b_part + _scaled(poly, ONE_MINUS_Q * rat)
    comps = {PHI_01: b_part}
    for j, bj in enumerate(degs):
        if bj:
            comps[phi_up(j)] = a_part * bj
    return KVector(comps)


def structural_block(geom, t_degree):
    """(1-q) + t + sum_j Phi^{1j} dF/dt_j/(1-q) + q Phi^{01} F/(1-q)^2."""
    n = geom.n1
    F, grad = f_cubic(geom, t_degree)
    comps = {UNIT: TPoly.const(n, t_degree, ONE_MINUS_Q)}
    for j in range(n):
        comps[phi_lo(j)] = TPoly.var(n, t_degree, j, QRat.const(1))
    inv1 = QRat.inv_one_minus_q_power(1, 1)
    for j, g in enumerate(grad):
        comps[phi_up(j)] = _scaled(g, inv1)
    comps[PHI_01] = _scaled(F, QRat.q() * QRat.inv_one_minus_q_power(1, 2))
    return KVector({k: v for k, v in comps.items() if not v.is_zero()})


class JFunction:
    """Truncated J-function: Novikov series of K-vectors of TPoly[QRat]."""

    def __init__(self, geom, cutoff, t_degree, series, q_order=10):
        self.geom = geom
        self.cutoff = cutoff
        self.t_degree = t_degree
        self.series = series
        self.q_order = q_order
        self._zero_cache = {}

    @property
    def rank(self):
        return self.geom.h2rank

    def coefficient(self, beta):
        c = self.series.coefficient(tuple(beta))
        return c if isinstance(c, KVector) else KVector()

    def value(self, beta, comp, mono=None):
        """The QRat at class beta, component comp, t-monomial mono."""
        if mono is None:
            mono = (0,) * self.geom.n1
        poly = self.coefficient(beta).component(comp)
        if not isinstance(poly, TPoly):
            return QRat()
        c = poly.coefficient(tuple(mono))
        return c if isinstance(c, QRat) else QRat.const(c)

    def entries(self):
        """Sorted (beta, comp, mono, QRat) over all nonzero entries."""
        for beta, vec in self.series.items():
            for comp, poly in vec.items():
                for mono, rat in poly.items():
                    yield beta, comp, mono, rat

    def instanton_entries(self):
        zero = zero_class(self.rank)
        return ((b, c, m, f) for b, c, m, f in self.entries() if b != zero)

    def replace_series(self, series):
        return JFunction(self.geom, self.cutoff, self.t_degree, series, self.q_order)

    def __repr__(self):
        return (f"JFunction(rank={self.rank}, n1={self.geom.n1}, cutoff={self.cutoff}, "
                f"t_degree={self.t_degree}, classes={len(self.series.terms)})")


def build_jtilde(geom, gv, cutoff, t_degree=3, q_order=10):
    """Assemble the J-function of the GV table through class degree ``cutoff``."""
    if gv.rank != geom.h2rank:
        raise ValueError(f"GV table rank {gv.rank} does not match geometry rank {geom.h2rank}")
    if cutoff < 0 or t_degree < 0:
        raise ValueError("cutoffs must be non-negative")
    terms = {zero_class(geom.h2rank): structural_block(geom, t_degree)}
    for gamma in enumerate_classes(geom.h2rank, cutoff):
        total = None
        k = ind(gamma)
        for r in range(1, k + 1):
            if k % r:
                continue
            g = gv.value(tuple(x // r for x in gamma))
            if not g:
                continue
            contrib = cover_contribution(geom, gamma, r, t_degree) * g
            total = _add(total, contrib)
        if total is not None and not total.is_zero():
            terms[gamma] = total
    series = NovikovSeries(geom.h2rank, cutoff, terms)
    return JFunction(geom, cutoff, t_degree, series, q_order)


def gv_support_degree(gv):
    return max((class_degree(b) for b in gv.entries), default=0)
