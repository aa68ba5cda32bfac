"""Integer and rational helpers: Moebius function, divisors, linear algebra."""

from fractions import Fraction
from functools import lru_cache
from math import gcd

Rational = Fraction


def _check_positive(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"expected a positive integer, got {n!r}")


@lru_cache(maxsize=None)
def factorize(n):
    """Prime factorization of n as a tuple of (prime, exponent) pairs."""
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def mobius(k):
    """Return the Moebius function mu(k) for k >= 1."""
    _check_positive(k)
    fac = factorize(k)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n):
    _check_positive(n)
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


@lru_cache(maxsize=None)
def divisors(n):
    """Sorted tuple of the positive divisors of n."""
    _check_positive(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def lcm(*args):
    out = 1
    for a in args:
        out = out * a // gcd(out, a)
    return out


def lcm_upto(n):
    return lcm(*range(1, n + 1)) if n >= 1 else 1


def parse_rational(text):
    """Parse "num/den" or an integer string into a Fraction."""
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a 'num/den' string, got {text!r}")
    s = text.strip()
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def format_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def row_reduce(rows, ncols):
    """Reduced row echelon form over a field; returns (rows, pivot columns).

    Entries may be Fractions or any exact field elements supporting the
    usual operators and an ``is_zero``-compatible ``== 0`` test.
    """
    rows = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def solve_linear(matrix, rhs):
    """Solve matrix * x = rhs exactly for a square nonsingular system."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, piv = row_reduce(aug, n + 1)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular linear system")
    return [red[i][n] for i in range(n)]
