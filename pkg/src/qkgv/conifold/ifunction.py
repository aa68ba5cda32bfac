"""Small I-function of the compactified conifold along the zero-section curve class."""

from ..exact import QRat
from .kring import KRing, ring_invert_unit

ONE_MINUS_Q = QRat.poly([1, -1])


def _shifted(ring, base, m):
    """1 - base * q^m for base in {P, PT}, as a ring element with QRat scalars."""
    qm = QRat.q(m)
    return ring.one() * QRat.const(1) - base * qm


class IFunctionTerm:
    """Q^r coefficient of the I-function, in product and collapsed forms."""

    def __init__(self, r, value, collapsed, toric):
        self.r = r
        self.value = value
        self.collapsed = collapsed
        self.toric = toric

    def __repr__(self):
        return f"IFunctionTerm(r={self.r})"


def i_small(r, ring=None):
    """The Q^r coefficient (including the overall factor 1 - q).

    value:     (1-q) (1-PT)^2 prod_{m<r} (1-PTq^m)^2 / ((PT)^{2r} q^{r(r-1)} prod_{m<=r} (1-Pq^m)^2)
    collapsed: (1-q) (1-PT)^2 / ((PT)^{2r} q^{r(r-1)} (1-Pq^r)^2)
    toric:     (1-q) prod_{-r<m<=0} (1-P^{-1}T^{-1}q^m)^2 / prod_{m<=r} (1-Pq^m)^2
    For r = 0 all three equal 1 - q.
    """
    ring = KRing() if ring is None else ring
    if r < 0:
        raise ValueError("degree must be non-negative")
    one = ring.one() * QRat.const(1)
    if r == 0:
        return IFunctionTerm(0, one * ONE_MINUS_Q, one * ONE_MINUS_Q, one * ONE_MINUS_Q)
    P, T = ring.P(), ring.T()
    PT = P * T
    w = ring.w()
    PT_inv = ring_invert_unit(PT)
    prefactor = w * w * (PT_inv ** (2 * r)) * QRat.q(-r * (r - 1)) * ONE_MINUS_Q
    num = one
    for m in range(1, r):
        f = _shifted(ring, PT, m)
        num = num * f * f
    den = one
    for m in range(1, r + 1):
        f = _shifted(ring, P, m)
        den = den * f * f
    value = prefactor * num * ring_invert_unit(den)
    last = ring_invert_unit(_shifted(ring, P, r))
    collapsed = prefactor * last * last
    toric_num = one
    for m in range(-r + 1, 1):
        f = one - PT_inv * QRat.q(m)
        toric_num = toric_num * f * f
    toric = toric_num * ring_invert_unit(den) * ONE_MINUS_Q
    return IFunctionTerm(r, value, collapsed, toric)
