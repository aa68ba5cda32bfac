"""Cyclotomic polynomials, exact arithmetic in Q(zeta_N), root-of-unity labels."""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import divisors, euler_phi, solve_linear
from .poly import Poly


class ConductorMismatchError(ValueError):
    """Raised when values from different cyclotomic fields are mixed."""


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(n):
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    num = Poly([-1] + [0] * (n - 1) + [1])
    for d in divisors(n)[:-1]:
        num = num.exact_div(Poly(_cyclotomic_coeffs(d)))
    return tuple(int(x) for x in num.c)


def cyclotomic_polynomial(n):
    """Phi_n(q) as a Poly with integer coefficients."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic index must be a positive integer, got {n!r}")
    return Poly(_cyclotomic_coeffs(n))


def cyclotomic_factor(n):
    """The factor prod over primitive n-th roots zeta of (1 - zeta q).

    Equals 1 - q for n = 1 and Phi_n(q) for n >= 2 (Phi_n is palindromic
    with constant term 1 there).
    """
    if n == 1:
        return Poly([1, -1])
    return cyclotomic_polynomial(n)


@lru_cache(maxsize=None)
def _power_table(N):
    """Coefficient vectors (ints) of zeta_N^m for m = 0..N-1."""
    f = euler_phi(N)
    phi = _cyclotomic_coeffs(N)
    vec = [1] + [0] * (f - 1)
    table = []
    for _ in range(N):
        table.append(tuple(vec))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * p for v, p in zip(vec, phi[:f])]
    return tuple(table)


_ZERO = Fraction(0)


class CycNumber:
    """Element of Q(zeta_N) stored as coefficients of 1, zeta, ..., zeta^(phi(N)-1)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs):
        f = euler_phi(conductor)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != f:
            raise ValueError(f"Q(zeta_{conductor}) needs {f} coefficients, got {len(coeffs)}")
        self.conductor = conductor
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, conductor, coeffs):
        obj = object.__new__(cls)
        obj.conductor = conductor
        obj.coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, conductor, x):
        f = euler_phi(conductor)
        return cls._raw(conductor, (Fraction(x),) + (_ZERO,) * (f - 1))

    @classmethod
    def zero(cls, conductor):
        return cls.rational(conductor, 0)

    @classmethod
    def one(cls, conductor):
        return cls.rational(conductor, 1)

    @classmethod
    def zeta_power(cls, conductor, m):
        vec = _power_table(conductor)[m % conductor]
        return cls._raw(conductor, tuple(Fraction(v) for v in vec))

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.conductor != self.conductor:
                raise ConductorMismatchError(
                    f"cannot mix Q(zeta_{self.conductor}) and Q(zeta_{other.conductor}); promote explicitly")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycNumber.rational(self.conductor, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNumber._raw(self.conductor, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._raw(self.conductor, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNumber._raw(self.conductor, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycNumber._raw(self.conductor, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        N = self.conductor
        f = len(self.coeffs)
        if f == 1:
            return CycNumber._raw(N, (self.coeffs[0] * other.coeffs[0],))
        prod = [_ZERO] * (2 * f - 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                if y:
                    prod[i + j] += x * y
        out = prod[:f]
        table = _power_table(N)
        for m in range(f, 2 * f - 1):
            c = prod[m]
            if c:
                for i, v in enumerate(table[m % N]):
                    if v:
                        out[i] += c * v
        return CycNumber._raw(N, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        N = self.conductor
        f = len(self.coeffs)
        if f == 1:
            return CycNumber._raw(N, (1 / self.coeffs[0],))
        cols = [(self * CycNumber.zeta_power(N, i)).coeffs for i in range(f)]
        matrix = [[cols[j][i] for j in range(f)] for i in range(f)]
        rhs = [Fraction(1)] + [_ZERO] * (f - 1)
        return CycNumber._raw(N, tuple(solve_linear(matrix, rhs)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycNumber.one(self.conductor)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    __hash__ = None

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def promote(self, M):
        """Embed into Q(zeta_M); requires N | M."""
        N = self.conductor
        if M % N:
            raise ConductorMismatchError(f"cannot embed Q(zeta_{N}) into Q(zeta_{M})")
        if M == N:
            return self
        step = M // N
        table = _power_table(M)
        out = [_ZERO] * euler_phi(M)
        for i, c in enumerate(self.coeffs):
            if c:
                for k, v in enumerate(table[(i * step) % M]):
                    if v:
                        out[k] += c * v
        return CycNumber._raw(M, tuple(out))

    def __str__(self):
        from .arith import format_rational
        if self.is_rational():
            return format_rational(self.coeffs[0])
        z = f"z{self.conductor}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (z if i == 1 else f"{z}^{i}")
            cs = format_rational(c)
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"CycNumber({self.conductor}, {str(self)!r})"


def to_field(x, conductor):
    """Coerce an int, Fraction or CycNumber into Q(zeta_conductor)."""
    if isinstance(x, CycNumber):
        return x.promote(conductor)
    return CycNumber.rational(conductor, x)


class RootLabel(tuple):
    """Root of unity exp(2 pi i j / k) with gcd(j, k) = 1, 0 <= j < k."""

    __slots__ = ()

    def __new__(cls, order, index=None):
        if index is None:
            index = 0 if order == 1 else 1
        if order < 1:
            raise ValueError("root order must be positive")
        index %= order
        if gcd(index, order) != 1:
            raise ValueError(f"e({index}/{order}) is not a primitive {order}-th root")
        return tuple.__new__(cls, (order, index))

    @property
    def order(self):
        return self[0]

    @property
    def index(self):
        return self[1]

    @classmethod
    def one(cls):
        return cls(1, 0)

    @classmethod
    def primitive(cls, k):
        """All primitive k-th roots, in increasing index order."""
        if k == 1:
            return [cls(1, 0)]
        return [cls(k, j) for j in range(1, k) if gcd(j, k) == 1]

    def inverse(self):
        return RootLabel(self.order, -self.index)

    def value(self, conductor=None):
        """The root as a CycNumber in Q(zeta_conductor)."""
        N = self.order if conductor is None else conductor
        if N % self.order:
            raise ConductorMismatchError(
                f"a primitive {self.order}-th root does not live in Q(zeta_{N})")
        return CycNumber.zeta_power(N, self.index * (N // self.order))

    def power_exponent(self, conductor):
        return self.index * (conductor // self.order)

    def __repr__(self):
        return f"RootLabel({self.order}, {self.index})"

    def __str__(self):
        return "1" if self.order == 1 else f"e({self.index}/{self.order})"
