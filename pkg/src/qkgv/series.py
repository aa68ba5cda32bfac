"""Truncated series: Novikov variables Q^beta, divisor parameters t_j, K-vectors.

Coefficients are generic; anything with +, -, * and a ``== 0`` test works
(Fractions, QRat, KRingElem, or nested series).
"""

from fractions import Fraction
from itertools import product
from math import factorial


def _is_zero(x):
    return x == 0


def class_degree(beta):
    return sum(beta)


def zero_class(rank):
    return (0,) * rank


def enumerate_classes(rank, cutoff, include_zero=False):
    """All non-negative integer vectors of total degree <= cutoff, lex order."""
    out = [c for c in product(range(cutoff + 1), repeat=rank) if sum(c) <= cutoff]
    if not include_zero:
        out = [c for c in out if any(c)]
    return sorted(out)


def monomials(nvars, degree):
    """Exponent vectors with total degree <= degree, sorted by degree then lex."""
    out = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) <= degree]
    return sorted(out, key=lambda e: (sum(e), e))


def monomial_factorial(exps):
    out = 1
    for e in exps:
        out *= factorial(e)
    return out


class TPoly:
    """Polynomial in t_1..t_n truncated at total degree ``degree``."""

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars, degree, terms=None):
        if degree < 0:
            raise ValueError("t-degree bound must be non-negative")
        self.nvars = nvars
        self.degree = degree
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent vector has the wrong length")
            if sum(e) <= degree and not _is_zero(c):
                clean[e] = c
        self.terms = clean

    @classmethod
    def const(cls, nvars, degree, c):
        return cls(nvars, degree, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, degree, i, c=1):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, degree, {tuple(e): c})

    @classmethod
    def linear(cls, degree, coeffs):
        """sum_j coeffs[j] t_j."""
        n = len(coeffs)
        terms = {}
        for j, c in enumerate(coeffs):
            e = [0] * n
            e[j] = 1
            terms[tuple(e)] = c
        return cls(n, degree, terms)

    def _like(self, terms):
        return TPoly(self.nvars, self.degree, terms)

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError("t-polynomials in different numbers of variables")

    def zero(self):
        return self._like({})

    def is_zero(self):
        return not self.terms

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __add__(self, other):
        if not isinstance(other, TPoly):
            other = TPoly.const(self.nvars, self.degree, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return TPoly(self.nvars, min(self.degree, other.degree), out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TPoly):
            if _is_zero(other):
                return self.zero()
            return self._like({e: c * other for e, c in self.terms.items()})
        self._check(other)
        deg = min(self.degree, other.degree)
        out = {}
        for e1, c1 in self.terms.items():
            s1 = sum(e1)
            for e2, c2 in other.terms.items():
                if s1 + sum(e2) > deg:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return TPoly(self.nvars, deg, out)

    def __rmul__(self, other):
        if _is_zero(other):
            return self.zero()
        return self._like({e: other * c for e, c in self.terms.items()})

    def __pow__(self, n):
        out = TPoly.const(self.nvars, self.degree, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            other = TPoly.const(self.nvars, self.degree, other)
        keys = set(self.terms) | set(other.terms)
        return all(_is_zero(self.coefficient(e) - other.coefficient(e)) for e in keys)

    __hash__ = None

    def map(self, fn):
        return self._like({e: fn(c) for e, c in self.terms.items()})

    def homogeneous_part(self, k):
        return self._like({e: c for e, c in self.terms.items() if sum(e) == k})

    def with_degree(self, degree):
        return TPoly(self.nvars, degree, self.terms)

    def __repr__(self):
        body = ", ".join(f"{e}: {c}" for e, c in self.items())
        return f"TPoly({{{body}}}, deg<={self.degree})"


def t_exp(p):
    """exp(p) truncated at the t-degree bound; p must have no constant term."""
    if not _is_zero(p.constant_term()):
        raise ValueError("t_exp needs a constant-free argument")
    out = TPoly.const(p.nvars, p.degree, Fraction(1))
    power = TPoly.const(p.nvars, p.degree, Fraction(1))
    for k in range(1, p.degree + 1):
        power = power * p
        if power.is_zero():
            break
        out = out + power * Fraction(1, factorial(k))
    return out


class NovikovSeries:
    """Sum of coefficients times Q^beta for classes beta of total degree <= cutoff."""

    __slots__ = ("rank", "cutoff", "terms")

    def __init__(self, rank, cutoff, terms=None):
        self.rank = rank
        self.cutoff = cutoff
        clean = {}
        for beta, c in (terms or {}).items():
            beta = tuple(beta)
            if len(beta) != rank:
                raise ValueError(f"class {beta} does not have rank {rank}")
            if any(b < 0 for b in beta):
                raise ValueError(f"class {beta} has negative coordinates")
            if sum(beta) <= cutoff and not _is_zero(c):
                clean[beta] = c
        self.terms = clean

    @classmethod
    def monomial(cls, rank, cutoff, beta, c=1):
        return cls(rank, cutoff, {tuple(beta): c})

    def _like(self, terms):
        return NovikovSeries(self.rank, self.cutoff, terms)

    def _check(self, other):
        if not isinstance(other, NovikovSeries):
            raise TypeError("expected a NovikovSeries")
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def coefficient(self, beta):
        return self.terms.get(tuple(beta), 0)

    def classes(self):
        return sorted(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out[b] + c if b in out else c
        return NovikovSeries(self.rank, min(self.cutoff, other.cutoff), out)

    def __neg__(self):
        return self._like({b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, NovikovSeries):
            return self._like({b: c * other for b, c in self.terms.items()})
        self._check(other)
        cut = min(self.cutoff, other.cutoff)
        out = {}
        for b1, c1 in self.terms.items():
            for b2, c2 in other.terms.items():
                b = tuple(x + y for x, y in zip(b1, b2))
                if sum(b) > cut:
                    continue
                p = c1 * c2
                out[b] = out[b] + p if b in out else p
        return NovikovSeries(self.rank, cut, out)

    def __rmul__(self, other):
        return self._like({b: other * c for b, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(_is_zero(self.coefficient(b) - other.coefficient(b)) for b in keys)

    __hash__ = None

    def map(self, fn):
        return self._like({b: fn(c) for b, c in self.terms.items()})

    def map_with_class(self, fn):
        return self._like({b: fn(b, c) for b, c in self.terms.items()})

    def adams(self, r):
        """Q^beta -> Q^{r beta}; terms pushed past the cutoff are dropped."""
        if r < 1:
            raise ValueError("Adams index must be positive")
        return self._like({tuple(r * x for x in b): c for b, c in self.terms.items()})

    def exp(self, one=1):
        """exp of a series without Q^0 term, truncated at the cutoff."""
        if zero_class(self.rank) in self.terms:
            raise ValueError("exp needs a series without Q^0 term")
        out = NovikovSeries.monomial(self.rank, self.cutoff, zero_class(self.rank), one)
        power = out
        for k in range(1, self.cutoff + 1):
            power = power * self
            if power.is_zero():
                break
            out = out + power * Fraction(1, factorial(k))
        return out

    def __repr__(self):
        body = ", ".join(f"{b}: {c!r}" for b, c in self.items())
        return f"NovikovSeries({{{body}}}, cutoff={self.cutoff})"


def nov_mul(a, b):
    return a * b


def adams_novikov(s, r):
    return s.adams(r)


# ----- K-basis vectors --------------------------------------------------------

UNIT = ("lo", 0, 0)
PHI_01 = ("up", 0, 1)


def phi_lo(j):
    """Phi_{1j}: the divisor-type basis element paired with t_j."""
    return ("lo", 1, j)


def phi_up(j):
    """Phi^{1j}: the dual element with Chern character in H^4."""
    return ("up", 1, j)


def component_name(comp):
    """Display name; divisor indices are shown 1-based (Phi^{11} pairs with t_1)."""
    kind, i, j = comp
    if comp == UNIT:
        return "1"
    shown = j + 1 if i == 1 else j
    body = f"{i}{shown}" if shown < 10 else f"{i},{shown}"
    return f"Phi_{{{body}}}" if kind == "lo" else f"Phi^{{{body}}}"


def parse_component(text):
    """Inverse of component_name; also accepts "i,j" bodies."""
    s = text.strip()
    if s == "1":
        return UNIT
    for kind, mark in (("up", "Phi^{"), ("lo", "Phi_{")):
        if s.startswith(mark) and s.endswith("}"):
            body = s[len(mark):-1]
            if "," in body:
                i, j = body.split(",")
            elif len(body) >= 2:
                i, j = body[0], body[1:]
            else:
                break
            return component_from_indices(kind, int(i), int(j))
    raise ValueError(f"unknown K-basis component {text!r}")


def component_from_indices(kind, i, j):
    """Component from displayed indices (i, j); j is 1-based when i = 1."""
    if kind == "up" and (i, j) == (0, 1):
        return PHI_01
    if kind == "lo" and (i, j) == (0, 0):
        return UNIT
    if i == 1 and j >= 1:
        return (kind, 1, j - 1)
    raise ValueError(f"no K-basis component {kind} ({i},{j})")


def _component_key(comp):
    kind, i, j = comp
    return (0 if kind == "lo" else 1, i, j)


class KVector:
    """Finite linear combination of K-basis components."""

    __slots__ = ("comps",)

    def __init__(self, comps=None):
        self.comps = {k: v for k, v in (comps or {}).items() if not _is_zero(v)}

    def component(self, comp):
        return self.comps.get(comp, 0)

    def items(self):
        return sorted(self.comps.items(), key=lambda kv: _component_key(kv[0]))

    def keys(self):
        return [k for k, _ in self.items()]

    def is_zero(self):
        return not self.comps

    def __add__(self, other):
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out[k] + v if k in out else v
        return KVector(out)

    def __neg__(self):
        return KVector({k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return KVector({k: v * scalar for k, v in self.comps.items()})

    def __rmul__(self, scalar):
        return KVector({k: scalar * v for k, v in self.comps.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, KVector):
            return NotImplemented
        keys = set(self.comps) | set(other.comps)
        return all(_is_zero(self.component(k) - other.component(k)) for k in keys)

    __hash__ = None

    def map(self, fn):
        return KVector({k: fn(v) for k, v in self.comps.items()})

    def __repr__(self):
        body = ", ".join(f"{component_name(k)}: {v!r}" for k, v in self.items())
        return f"KVector({{{body}}})"
