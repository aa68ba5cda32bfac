"""Topological data of a Calabi-Yau threefold and genus-zero GV/GW tables."""

from fractions import Fraction
from itertools import permutations
from math import gcd

from .exact.arith import divisors, format_rational, mobius
from .series import TPoly, class_degree, enumerate_classes


def ind(beta):
    """Divisibility index of a nonzero class: gcd of its coordinates."""
    beta = tuple(beta)
    if not any(beta):
        raise ValueError("ind is undefined for the zero class")
    out = 0
    for x in beta:
        out = gcd(out, x)
    return out


def primitive_part(beta):
    """(beta / ind(beta), ind(beta))."""
    k = ind(beta)
    return tuple(x // k for x in beta), k


class CY3Data:
    """Divisor basis size n1, curve-class rank, pairing matrix and kappa_{ijk}.

    ``pairing[g][j]`` is the degree of divisor j on the g-th effective
    generator; ``kappa`` maps index triples (0-based) to rationals and is
    symmetrized on construction.
    """

    def __init__(self, n1, h2rank, pairing, kappa=None):
        if n1 < 1 or h2rank < 1:
            raise ValueError("n1 and h2 rank must be positive")
        rows = [list(r) for r in pairing]
        if len(rows) != h2rank or any(len(r) != n1 for r in rows):
            raise ValueError(f"pairing must be a {h2rank} x {n1} matrix")
        for r in rows:
            for x in r:
                if isinstance(x, bool) or Fraction(x).denominator != 1:
                    raise ValueError("pairing entries must be integers")
        self.n1 = n1
        self.h2rank = h2rank
        self.pairing = tuple(tuple(int(x) for x in r) for r in rows)
        sym = {}
        for ijk, value in (kappa or {}).items():
            ijk = tuple(ijk)
            if len(ijk) != 3 or any(not 0 <= i < n1 for i in ijk):
                raise ValueError(f"bad triple intersection index {ijk}")
            value = Fraction(value)
            key = tuple(sorted(ijk))
            if key in sym and sym[key] != value:
                raise ValueError(f"conflicting values for kappa{key}")
            sym[key] = value
        self.kappa_sorted = {k: v for k, v in sorted(sym.items()) if v != 0}

    def kappa(self, i, j, k):
        return self.kappa_sorted.get(tuple(sorted((i, j, k))), Fraction(0))

    def degrees(self, beta):
        """(beta_1, ..., beta_{n1}) for a class in the generator basis."""
        beta = tuple(beta)
        if len(beta) != self.h2rank:
            raise ValueError(f"class {beta} does not have rank {self.h2rank}")
        return tuple(sum(b * self.pairing[g][j] for g, b in enumerate(beta))
                     for j in range(self.n1))

    def __eq__(self, other):
        return (isinstance(other, CY3Data) and self.n1 == other.n1 and self.h2rank == other.h2rank
                and self.pairing == other.pairing and self.kappa_sorted == other.kappa_sorted)

    __hash__ = None

    def __repr__(self):
        return f"CY3Data(n1={self.n1}, h2rank={self.h2rank}, pairing={self.pairing})"


def beta_t(geom, beta, t_degree=3):
    """The linear form sum_j beta_j t_j as a TPoly."""
    return TPoly.linear(t_degree, [Fraction(x) for x in geom.degrees(beta)])


def f_cubic(geom, t_degree=3):
    """F(t) = (1/6) sum over ordered triples of kappa_{ijk} t_i t_j t_k, and its gradient."""
    n = geom.n1
    terms = {}
    for key, value in geom.kappa_sorted.items():
        mult = len(set(permutations(key)))
        e = [0] * n
        for i in key:
            e[i] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + value * mult / 6
    F = TPoly(n, t_degree, terms)
    grad = []
    for j in range(n):
        g = {}
        for e, c in terms.items():
            if e[j]:
                e2 = list(e)
                e2[j] -= 1
                g[tuple(e2)] = g.get(tuple(e2), 0) + c * e[j]
        grad.append(TPoly(n, t_degree, g))
    return F, grad


def adams_dual_basis(i, r):
    """Adams scaling r^(3-i) of a dual basis element with ch in H^{2(3-i)}."""
    if i not in (0, 1, 2, 3):
        raise ValueError(f"cohomological index must be in 0..3, got {i}")
    if r < 1:
        raise ValueError("Adams index must be positive")
    return r ** (3 - i)


class InvariantTable:
    """Map from nonzero curve classes to rational invariants (genus zero)."""

    kind = "table"

    def __init__(self, rank, entries=None):
        self.rank = rank
        clean = {}
        for beta, value in (entries or {}).items():
            beta = tuple(int(x) for x in beta)
            if len(beta) != rank:
                raise ValueError(f"class {beta} does not have rank {rank}")
            if not any(beta) or any(x < 0 for x in beta):
                raise ValueError(f"class {beta} is not a nonzero effective class")
            value = Fraction(value)
            if value:
                clean[beta] = value
        self.entries = dict(sorted(clean.items()))
        self.warnings = []

    def value(self, beta):
        return self.entries.get(tuple(beta), Fraction(0))

    __getitem__ = value

    def classes(self):
        return list(self.entries)

    def items(self):
        return list(self.entries.items())

    def max_degree(self):
        return max((class_degree(b) for b in self.entries), default=0)

    def restricted(self, cutoff):
        return type(self)(self.rank, {b: v for b, v in self.entries.items()
                                      if class_degree(b) <= cutoff})

    def non_integral(self):
        return [b for b, v in self.entries.items() if v.denominator != 1]

    def is_integral(self):
        return not self.non_integral()

    def __eq__(self, other):
        return isinstance(other, InvariantTable) and self.rank == other.rank \
            and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{b}: {format_rational(v)}" for b, v in self.entries.items())
        return f"{type(self).__name__}(rank={self.rank}, {{{body}}})"


class GVTable(InvariantTable):
    kind = "GV"


class GWTable(InvariantTable):
    kind = "GW"


def gw_from_gv(gv, cutoff):
    """GW_beta = sum over k | ind(beta) of GV_{beta/k} / k^3."""
    out = {}
    for beta in enumerate_classes(gv.rank, cutoff):
        total = Fraction(0)
        for k in divisors(ind(beta)):
            v = gv.value(tuple(x // k for x in beta))
            if v:
                total += v / k ** 3
        out[beta] = total
    return GWTable(gv.rank, out)


def gv_from_gw(gw, cutoff):
    """Moebius inversion GV_beta = sum mu(k)/k^3 GW_{beta/k}; flags non-integers."""
    out = {}
    for beta in enumerate_classes(gw.rank, cutoff):
        total = Fraction(0)
        for k in divisors(ind(beta)):
            mu = mobius(k)
            if mu:
                v = gw.value(tuple(x // k for x in beta))
                if v:
                    total += mu * v / k ** 3
        out[beta] = total
    table = GVTable(gw.rank, out)
    table.warnings = [f"non-integer GV at class {list(b)}: {format_rational(v)}"
                      for b, v in table.entries.items() if v.denominator != 1]
    return table


def gv_power_sum(gv, beta, d, gamma):
    """GV^{(gamma)}_{d beta} = sum over k | d of k^gamma GV_{k beta}, beta primitive."""
    beta = tuple(beta)
    if ind(beta) != 1:
        raise ValueError(f"class {beta} is not primitive")
    if d < 1:
        raise ValueError("d must be positive")
    total = Fraction(0)
    for k in divisors(d):
        v = gv.value(tuple(k * x for x in beta))
        if v:
            total += Fraction(k) ** gamma * v
    return total
