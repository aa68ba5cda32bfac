"""Local expansions of QRat values: at roots of unity, at q = 0, and the
polarization projections pi_plus (Laurent polynomial part) and
pi_plus_fake (non-negative part of a series at q = 1)."""

from fractions import Fraction
from functools import lru_cache
from math import comb

from .arith import lcm
from .cyclotomic import ConductorMismatchError, CycNumber, RootLabel, cyclotomic_factor
from .poly import Poly
from .qrat import PoleAtZeroError, QRat, _phihat_power


class PoleOrderError(ValueError):
    """A pole exceeds the declared maximal order."""


class ConductorTooSmallError(ValueError):
    """A pole sits at a root of unity outside the working cyclotomic field."""


def _embed(x, N):
    if N == 1:
        if isinstance(x, CycNumber):
            return x.to_rational()
        return Fraction(x)
    if isinstance(x, CycNumber):
        return x.promote(N)
    return CycNumber.rational(N, x)


def _inv(x):
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


# ----- truncated power series helpers (lists of field elements) -----------

def _series_mul(a, b, L):
    out = [0] * L
    for i, x in enumerate(a[:L]):
        if x == 0:
            continue
        for j in range(min(len(b), L - i)):
            y = b[j]
            if y != 0:
                out[i + j] = out[i + j] + x * y
    return out


def _series_inverse(a, L):
    a0inv = _inv(a[0])
    out = [a0inv]
    for k in range(1, L):
        acc = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j] != 0:
                acc = acc + a[j] * out[k - j]
        out.append(-acc * a0inv)
    return out


def _series_pow(a, e, L):
    out = [1] + [0] * (L - 1)
    for _ in range(e):
        out = _series_mul(out, a, L)
    return out


def _compose_at_root(poly, root, N, L):
    """Coefficients of poly(zeta^{-1} (1 - w)) in w, up to w^(L-1)."""
    coeffs = poly.c
    if not coeffs:
        return [_embed(0, N)] * L
    if N == 1:
        scaled = [Fraction(x) if not isinstance(x, CycNumber) else x.to_rational() for x in coeffs]
    else:
        base = root.inverse().power_exponent(N)
        scaled = [_embed(x, N) * CycNumber.zeta_power(N, base * i) for i, x in enumerate(coeffs)]
    zero = _embed(0, N)
    out = []
    for k in range(L):
        acc = zero
        for i in range(k, len(scaled)):
            acc = acc + scaled[i] * comb(i, k)
        out.append(acc if k % 2 == 0 else -acc)
    return out


@lru_cache(maxsize=None)
def _phihat_at_root(n, e, root, N, L):
    return tuple(_compose_at_root(_phihat_power(n, e), root, N, L))


@lru_cache(maxsize=None)
def _local_unit_at_root(n, e, root, N, L):
    """Series of (Phihat_n(q) / (1 - zeta q))^e at w = 1 - zeta q."""
    full = _compose_at_root(cyclotomic_factor(n), root, N, L + 1)
    return tuple(_series_pow(full[1:], e, L))


class LaurentAtRoot:
    """Truncated Laurent series sum_k c_k w^k in w = 1 - zeta q.

    Coefficients are exact for every exponent up to and including
    ``order``; nothing is claimed beyond it.
    """

    __slots__ = ("root", "order", "conductor", "coeffs")

    def __init__(self, root, order, coeffs=None, conductor=None):
        self.root = root
        self.order = order
        self.conductor = root.order if conductor is None else conductor
        if self.conductor % root.order:
            raise ConductorMismatchError("conductor must be a multiple of the root order")
        clean = {}
        for k, v in (coeffs or {}).items():
            if k <= order and v != 0:
                clean[k] = _embed(v, self.conductor)
        self.coeffs = clean

    def coefficient(self, k):
        if k > self.order:
            raise ValueError(f"coefficient w^{k} lies beyond the truncation order {self.order}")
        return self.coeffs.get(k, _embed(0, self.conductor))

    def valuation(self):
        return min(self.coeffs) if self.coeffs else self.order + 1

    def low_exponent(self):
        return min(self.coeffs, default=0)

    def is_zero(self):
        return not self.coeffs

    def principal_part(self):
        return {k: v for k, v in sorted(self.coeffs.items()) if k < 0}

    def regular_part(self):
        """Drop strictly negative powers of w."""
        return LaurentAtRoot(self.root, self.order,
                             {k: v for k, v in self.coeffs.items() if k >= 0}, self.conductor)

    def truncate(self, order):
        return LaurentAtRoot(self.root, min(order, self.order), self.coeffs, self.conductor)

    def promote(self, N):
        return LaurentAtRoot(self.root, self.order,
                             {k: _embed(v, N) for k, v in self.coeffs.items()}, N)

    def _check(self, other):
        if not isinstance(other, LaurentAtRoot):
            return False
        if other.root != self.root:
            raise ValueError(f"cannot combine expansions at {self.root} and {other.root}")
        if other.conductor != self.conductor:
            raise ConductorMismatchError("expansions live in different cyclotomic fields")
        return True

    def __add__(self, other):
        if not self._check(other):
            other = LaurentAtRoot(self.root, self.order, {0: other}, self.conductor)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return LaurentAtRoot(self.root, order, out, self.conductor)

    __radd__ = __add__

    def __neg__(self):
        return LaurentAtRoot(self.root, self.order, {k: -v for k, v in self.coeffs.items()},
                             self.conductor)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentAtRoot):
            return LaurentAtRoot(self.root, self.order,
                                 {k: v * other for k, v in self.coeffs.items()}, self.conductor)
        self._check(other)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        out = {}
        for i, x in self.coeffs.items():
            for j, y in other.coeffs.items():
                if i + j <= order:
                    out[i + j] = out[i + j] + x * y if i + j in out else x * y
        return LaurentAtRoot(self.root, order, out, self.conductor)

    __rmul__ = __mul__

    def equals_through(self, other, order=None):
        """Compare coefficients through min(orders) (or the given order)."""
        self._check(other)
        top = min(self.order, other.order) if order is None else order
        keys = {k for k in set(self.coeffs) | set(other.coeffs) if k <= top}
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    def __eq__(self, other):
        if not isinstance(other, LaurentAtRoot):
            return NotImplemented
        return self.equals_through(other)

    __hash__ = None

    def items(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"LaurentAtRoot({self.root}, order={self.order}, {{{body}}})"


def laurent_expand(f, root=None, order=5, conductor=None, max_pole_order=None):
    """Expand f at q = zeta^{-1} in w = 1 - zeta q through w^order."""
    if root is None:
        root = RootLabel.one()
    if not isinstance(f, QRat):
        f = QRat.const(f)
    N = lcm(root.order, f.conductor) if conductor is None else conductor
    if N % root.order or N % f.conductor:
        raise ConductorTooSmallError(f"Q(zeta_{N}) cannot hold the expansion at {root}")
    dens = dict(f.den)
    m = dens.get(root.order, 0)
    if max_pole_order is not None and m > max_pole_order:
        raise PoleOrderError(f"pole of order {m} at {root} exceeds the cap {max_pole_order}")
    if f.is_zero():
        return LaurentAtRoot(root, order, {}, N)
    L = order + m + 1
    if L <= 0:
        return LaurentAtRoot(root, order, {}, N)
    num = _compose_at_root(f.num, root, N, L)
    den = [_embed(1, N)] + [_embed(0, N)] * (L - 1)
    for n, e in f.den:
        piece = _local_unit_at_root(n, e, root, N, L) if n == root.order else _phihat_at_root(n, e, root, N, L)
        den = _series_mul(den, piece, L)
    if f.qpow:
        den = _series_mul(den, _compose_at_root(Poly.monomial(f.qpow), root, N, L), L)
    ser = _series_mul(num, _series_inverse(den, L), L)
    return LaurentAtRoot(root, order, {k - m: v for k, v in enumerate(ser)}, N)


def pi_plus_fake(s):
    """Non-negative part of a Laurent series at q = 1."""
    if s.root != RootLabel.one():
        raise ValueError("pi_plus_fake acts on expansions at q = 1")
    return s.regular_part()


def expand_at_zero(f, order):
    """Coefficients of the Laurent expansion of f at q = 0, through q^order.

    Returns a dict exponent -> coefficient (zeros omitted).
    """
    if not isinstance(f, QRat):
        f = QRat.const(f)
    if f.is_zero():
        return {}
    s = f.qpow
    L = order + s + 1
    if L <= 0:
        return {}
    den = Poly.const(1)
    for n, e in f.den:
        den = den * _phihat_power(n, e)
    num = list(f.num.c[:L]) + [0] * max(0, L - len(f.num.c))
    inv = _series_inverse([Fraction(x) if isinstance(x, int) else x for x in den.c] + [0] * L, L)
    ser = _series_mul(num, inv, L)
    return {k - s: v for k, v in enumerate(ser) if v != 0}


def pi_plus(f):
    """Laurent-polynomial part P of f: f - P is finite at 0 and vanishes at infinity."""
    if not isinstance(f, QRat):
        f = QRat.const(f)
    if f.qpow and not f.allow_pole_at_zero:
        raise PoleAtZeroError("pole at q = 0 without the allows-pole-at-zero flag")
    if f.is_zero():
        return QRat()
    den = Poly.const(1)
    for n, e in f.den:
        den = den * _phihat_power(n, e)
    quot, rem = f.num.divmod(den)
    s = f.qpow
    low = []
    if s and not rem.is_zero():
        inv = _series_inverse([Fraction(x) if isinstance(x, int) else x for x in den.c] + [0] * s, s)
        low = _series_mul(list(rem.c[:s]) + [0] * max(0, s - len(rem.c)), inv, s)
    num = quot.shift(0) + Poly(low)
    return QRat(num, None, s, allow_pole_at_zero=bool(s))


class PartialFraction:
    """Polynomial part plus sum of c / (1 - zeta q)^k over roots zeta."""

    __slots__ = ("poly_part", "terms", "conductor")

    def __init__(self, poly_part, terms, conductor):
        self.poly_part = poly_part
        self.conductor = conductor
        self.terms = {key: _embed(v, conductor) for key, v in sorted(terms.items()) if v != 0}

    def coefficient(self, root, k):
        return self.terms.get((root, k), _embed(0, self.conductor))

    def roots(self):
        return sorted({root for root, _ in self.terms})

    def recombine(self):
        """Rebuild the rational function exactly."""
        N = self.conductor
        out = self.poly_part
        for (root, k), c in self.terms.items():
            fac = cyclotomic_factor(root.order)
            zeta = root.value(N) if N > 1 else Fraction(1)
            lin = Poly([_embed(1, N), -zeta])
            cofactor = Poly([_embed(x, N) for x in fac.c]).exact_div(lin)
            out = out + QRat(cofactor ** k * c, {root.order: k})
        return out

    def __eq__(self, other):
        if not isinstance(other, PartialFraction):
            return NotImplemented
        if self.conductor != other.conductor:
            raise ConductorMismatchError("partial fractions over different fields")
        return self.poly_part == other.poly_part and self.terms.keys() == other.terms.keys() and all(
            self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"({r}, {k}): {v}" for (r, k), v in self.terms.items())
        return f"PartialFraction(poly={self.poly_part!r}, {{{body}}})"


def partial_fraction(f, conductor=None, max_pole_order=None):
    """Decompose f into pi_plus(f) plus principal parts at each root of unity."""
    if not isinstance(f, QRat):
        f = QRat.const(f)
    N = lcm(f.conductor, *[n for n, _ in f.den]) if conductor is None else conductor
    if N % f.conductor:
        raise ConductorTooSmallError(f"coefficients need Q(zeta_{f.conductor})")
    terms = {}
    for n, e in f.den:
        if N % n:
            raise ConductorTooSmallError(f"pole at a primitive {n}-th root is outside Q(zeta_{N})")
        if max_pole_order is not None and e > max_pole_order:
            raise PoleOrderError(f"pole of order {e} at {n}-th roots exceeds the cap {max_pole_order}")
        for root in RootLabel.primitive(n):
            local = lcm(n, f.conductor)
            ser = laurent_expand(f, root, -1, conductor=local)
            for k, v in ser.principal_part().items():
                terms[(root, -k)] = _embed(v, N)
    return PartialFraction(pi_plus(f), terms, N)
