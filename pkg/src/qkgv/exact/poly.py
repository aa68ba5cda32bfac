"""Dense univariate polynomials with exact coefficients (low degree first)."""

from fractions import Fraction


def is_zero(c):
    return c == 0


class Poly:
    """Polynomial in q; coefficients are ints, Fractions or CycNumbers."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and is_zero(c[-1]):
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, x):
        return cls((x,))

    @classmethod
    def monomial(cls, k, x=1):
        return cls([0] * k + [x])

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1]

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def low_order(self):
        """Exponent of the lowest nonzero coefficient (q-adic valuation)."""
        for i, x in enumerate(self.c):
            if not is_zero(x):
                return i
        raise ValueError("zero polynomial has no valuation")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if is_zero(other):
                return Poly()
            return Poly([x * other for x in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if len(self.c) != len(other.c):
            return False
        return all(is_zero(x - y) for x, y in zip(self.c, other.c))

    __hash__ = None

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def shift(self, k):
        """Multiply by q^k (k >= 0)."""
        if not self.c:
            return self
        return Poly([0] * k + list(self.c))

    def map(self, fn):
        return Poly([fn(x) for x in self.c])

    def compose_power(self, r):
        """p(q^r)."""
        if not self.c:
            return self
        out = [0] * (r * self.degree + 1)
        for i, x in enumerate(self.c):
            out[r * i] = x
        return Poly(out)

    def divmod(self, other):
        """Euclidean division over a field: self = quot*other + rem."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = other.degree
        inv = 1 / Fraction(other.lead()) if isinstance(other.lead(), int) else 1 / other.lead()
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            x = rem[i]
            if is_zero(x):
                continue
            f = x * inv
            quot[i - dq] = f
            for j, y in enumerate(other.c):
                rem[i - dq + j] = rem[i - dq + j] - f * y
        return Poly(quot), Poly(rem[:dq])

    def exact_div(self, other):
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return quot

    def divides(self, other):
        """True when self divides other."""
        return other.divmod(self)[1].is_zero()

    def __str__(self):
        """Human-readable form such as ``3 - 2*q + q^3``."""
        out = ""
        for i, x in enumerate(self.c):
            if is_zero(x):
                continue
            text = str(x)
            simple = isinstance(x, (int, Fraction))
            neg = simple and x < 0
            mag = str(-x) if neg else text
            if not simple and i:
                mag = f"({mag})"
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            body = mag if not mono else (mono if mag == "1" else f"{mag}*{mono}")
            if not out:
                out = f"-{body}" if neg else body
            else:
                out += f" - {body}" if neg else f" + {body}"
        return out or "0"

    def __repr__(self):
        if not self.c:
            return "Poly(0)"
        terms = []
        for i, x in enumerate(self.c):
            if is_zero(x):
                continue
            terms.append(f"({x})" if i == 0 else f"({x})*q^{i}")
        return "Poly(" + " + ".join(terms) + ")"
