"""Rational functions in q whose poles sit at roots of unity (and optionally 0).

A QRat is stored as num(q) / (q^s * prod_n Phihat_n(q)^e_n), where
Phihat_n(q) = prod over primitive n-th roots zeta of (1 - zeta q).
The factored denominator makes pole bookkeeping exact and cheap.
"""

from fractions import Fraction
from functools import lru_cache

from .arith import lcm
from .cyclotomic import CycNumber, cyclotomic_factor
from .poly import Poly, is_zero


class PoleAtZeroError(ValueError):
    """A q-power denominator appeared without the allows-pole-at-zero flag."""


class NotCyclotomicError(ValueError):
    """A denominator does not factor into cyclotomic pieces and powers of q."""


@lru_cache(maxsize=None)
def _phihat_power(n, e):
    return cyclotomic_factor(n) ** e


def _phi_bound(deg):
    # phi(n) >= sqrt(n / 2) for all n, so phi(n) <= deg forces n <= 2 deg^2
    return max(2, 2 * deg * deg)


def _coeff_conductor(x):
    return x.conductor if isinstance(x, CycNumber) else 1


class QRat:
    """Exact rational function in q with cyclotomic (and flagged q-power) poles."""

    __slots__ = ("num", "den", "qpow", "allow_pole_at_zero")

    def __init__(self, num=0, den=None, qpow=0, allow_pole_at_zero=False):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        exps = {}
        for n, e in (den.items() if isinstance(den, dict) else (den or ())):
            if e < 0:
                raise ValueError("negative cyclotomic exponent in denominator")
            if e:
                exps[n] = exps.get(n, 0) + e
        if qpow < 0:
            num = num.shift(-qpow)
            qpow = 0
        self.allow_pole_at_zero = allow_pole_at_zero
        self._normalize(num, exps, qpow)

    def _normalize(self, num, exps, qpow):
        if num.is_zero():
            self.num, self.den, self.qpow = Poly(), (), 0
            return
        if qpow:
            v = num.low_order()
            k = min(v, qpow)
            if k:
                num = Poly(num.c[k:])
                qpow -= k
        if qpow and not self.allow_pole_at_zero:
            raise PoleAtZeroError("pole at q = 0 requires allow_pole_at_zero")
        for n in sorted(exps):
            e = exps[n]
            fac = cyclotomic_factor(n)
            while e:
                quot, rem = num.divmod(fac)
                if not rem.is_zero():
                    break
                num = quot
                e -= 1
            exps[n] = e
        self.num = num
        self.den = tuple(sorted((n, e) for n, e in exps.items() if e))
        self.qpow = qpow

    @classmethod
    def _raw(cls, num, den, qpow, flag):
        obj = object.__new__(cls)
        obj.num, obj.den, obj.qpow, obj.allow_pole_at_zero = num, den, qpow, flag
        return obj

    # ----- constructors -------------------------------------------------
    @classmethod
    def const(cls, x):
        return cls(Poly.const(x))

    @classmethod
    def poly(cls, coeffs):
        return cls(Poly(coeffs))

    @classmethod
    def q(cls, k=1):
        """q^k; negative k produces a flagged pole at zero."""
        if k >= 0:
            return cls(Poly.monomial(k))
        return cls(Poly.const(1), qpow=-k, allow_pole_at_zero=True)

    @classmethod
    def inv_one_minus_q_power(cls, r, e=1):
        """1 / (1 - q^r)^e."""
        from .arith import divisors
        return cls(Poly.const(1), {d: e for d in divisors(r)})

    @classmethod
    def one_minus_q_power(cls, r, scale=1):
        """1 - scale*q^r as a polynomial QRat."""
        return cls(Poly([1] + [0] * (r - 1) + [-scale]))

    @classmethod
    def from_polys(cls, num, den, allow_pole_at_zero=False):
        """Build num/den, recognising cyclotomic factors of den.

        Raises NotCyclotomicError if den has a root that is neither 0 nor a
        root of unity.
        """
        if not isinstance(num, Poly):
            num = Poly(num)
        if not isinstance(den, Poly):
            den = Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        qpow = den.low_order()
        rest = Poly(den.c[qpow:])
        exps = {}
        n = 1
        while rest.degree > 0 and n <= _phi_bound(rest.degree):
            fac = cyclotomic_factor(n)
            while rest.degree >= fac.degree:
                quot, rem = rest.divmod(fac)
                if not rem.is_zero():
                    break
                rest = quot
                exps[n] = exps.get(n, 0) + 1
            n += 1
        if rest.degree > 0:
            raise NotCyclotomicError("denominator has poles away from roots of unity")
        c = rest.c[0]
        inv = Fraction(1, c) if isinstance(c, int) else 1 / c
        return cls(num * inv, exps, qpow, allow_pole_at_zero)

    # ----- queries --------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_laurent_polynomial(self):
        return not self.den

    @property
    def conductor(self):
        out = 1
        for x in self.num.c:
            out = lcm(out, _coeff_conductor(x))
        return out

    def pole_orders(self):
        """Dict n -> order of the pole at each primitive n-th root of unity."""
        return dict(self.den)

    def max_pole_order(self):
        return max((e for _, e in self.den), default=0)

    def denominator_poly(self):
        out = Poly.const(1)
        for n, e in self.den:
            out = out * _phihat_power(n, e)
        return out.shift(self.qpow)

    def numerator_poly(self):
        return self.num

    def evaluate(self, x):
        d = self.denominator_poly()(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        n = self.num(x)
        if isinstance(d, int):
            d = Fraction(d)
        return n / d

    # ----- arithmetic ------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, QRat):
            return other
        if isinstance(other, (int, Fraction, CycNumber)) and not isinstance(other, bool):
            return QRat._raw(Poly.const(other), (), 0, False)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        da, db = dict(self.den), dict(other.den)
        na, nb = self.num, other.num
        common = {}
        for n in set(da) | set(db):
            ea, eb = da.get(n, 0), db.get(n, 0)
            common[n] = max(ea, eb)
            if ea < eb:
                na = na * _phihat_power(n, eb - ea)
            elif eb < ea:
                nb = nb * _phihat_power(n, ea - eb)
        s = max(self.qpow, other.qpow)
        na = na.shift(s - self.qpow)
        nb = nb.shift(s - other.qpow)
        flag = self.allow_pole_at_zero or other.allow_pole_at_zero
        return QRat(na + nb, common, s, flag)

    __radd__ = __add__

    def __neg__(self):
        return QRat._raw(-self.num, self.den, self.qpow, self.allow_pole_at_zero)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)) and not isinstance(other, bool):
            if other == 0:
                return QRat()
            return QRat._raw(self.num * other, self.den, self.qpow, self.allow_pole_at_zero)
        if not isinstance(other, QRat):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return QRat()
        exps = dict(self.den)
        for n, e in other.den:
            exps[n] = exps.get(n, 0) + e
        flag = self.allow_pole_at_zero or other.allow_pole_at_zero
        return QRat(self.num * other.num, exps, self.qpow + other.qpow, flag)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = QRat.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        """1/f, allowed when the numerator is cyclotomic times a power of q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        flip = QRat.from_polys(Poly.const(1), self.num, allow_pole_at_zero=True)
        out = flip * QRat(self.denominator_poly())
        if out.qpow and not self.allow_pole_at_zero:
            raise PoleAtZeroError("inverse introduces a pole at q = 0")
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            inv = Fraction(1, other) if isinstance(other, int) else 1 / other
            return self * inv
        if not isinstance(other, QRat):
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map_coeffs(self, fn):
        return QRat(self.num.map(fn), self.den, self.qpow, self.allow_pole_at_zero)

    def with_pole_at_zero(self):
        return QRat._raw(self.num, self.den, self.qpow, True)

    def __str__(self):
        """Readable form, e.g. ``(1 + q)/((1-q)^2*Phi_3)``; Phi_n is the n-th cyclotomic polynomial."""
        num = str(self.num)
        if not self.den and not self.qpow:
            return num
        factors = []
        for n, e in self.den:
            base = "(1-q)" if n == 1 else f"Phi_{n}"
            factors.append(base if e == 1 else f"{base}^{e}")
        if self.qpow:
            factors.append("q" if self.qpow == 1 else f"q^{self.qpow}")
        if len(self.num.c) > 1 and any(not is_zero(x) for x in self.num.c[1:]):
            num = f"({num})"
        return f"{num}/" + ("*".join(factors) if len(factors) == 1 else "(" + "*".join(factors) + ")")

    def __repr__(self):
        den = " * ".join(f"Phihat_{n}^{e}" for n, e in self.den) or "1"
        if self.qpow:
            den += f" * q^{self.qpow}"
        return f"QRat({self.num!r} / ({den}))"
