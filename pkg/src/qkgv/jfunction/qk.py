"""Quantum K-invariants from the J-function, and recovery of GV invariants.

The q^k coefficient (expanded at q = 0) of the t-monomial t^m in component
Phi^alpha of Q^beta, multiplied by prod_i m_i!, is the invariant
<Phi_alpha L^k, Phi_{1,j_1}, ..., Phi_{1,j_n}>_{0,n+1,beta}.
"""

from fractions import Fraction

from ..exact import expand_at_zero
from ..geometry import GVTable, ind
from ..series import (PHI_01, class_degree, component_name, enumerate_classes, monomial_factorial,
                      monomials, phi_up, zero_class)
from .build import cover_contribution


class PivotError(ValueError):
    """No usable equation determines the GV invariant of a class."""


class QKConsistencyError(ValueError):
    """Redundant QK data disagree with the recovered GV invariants."""

    def __init__(self, mismatches):
        self.mismatches = mismatches
        lines = "; ".join(f"class {list(b)} {component_name(a)} k={k} m={list(m)}: "
                          f"expected {e}, table has {v}" for (a, k, b, m), e, v in mismatches[:5])
        super().__init__(f"{len(mismatches)} inconsistent QK entries: {lines}")


def _allowed_components(J):
    return [PHI_01] + [phi_up(j) for j in range(J.geom.n1)]


def _check_slot(J, alpha, beta):
    if not any(beta):
        raise ValueError("degree-zero slots carry the classical block, not QK invariants")
    if alpha[0] != "up" or alpha[1] not in (0, 1):
        return False
    return True


def _expansion(J, beta, alpha, mono, order):
    key = (beta, alpha, mono)
    cached = J._zero_cache.get(key)
    if cached is None or cached[0] < order:
        cached = (order, expand_at_zero(J.value(beta, alpha, mono), order))
        J._zero_cache[key] = cached
    return cached[1]


def extract_qk(J, alpha, k, beta, m=None):
    """The invariant <Phi_alpha L^k, t-insertions m> in class beta."""
    beta = tuple(beta)
    if k < 0:
        raise ValueError("q-power must be non-negative")
    if m is None:
        m = (0,) * J.geom.n1
    m = tuple(m)
    if len(m) != J.geom.n1:
        raise ValueError("t-exponent vector has the wrong length")
    if not _check_slot(J, alpha, beta):
        return Fraction(0)
    if sum(m) > J.t_degree:
        raise ValueError(f"t-degree {sum(m)} exceeds the J-function truncation {J.t_degree}")
    if class_degree(beta) > J.cutoff:
        raise ValueError(f"class {beta} lies beyond the Novikov cutoff {J.cutoff}")
    coeff = _expansion(J, beta, alpha, m, max(k, J.q_order)).get(k, Fraction(0))
    return Fraction(coeff) * monomial_factorial(m)


class QKTable:
    """Map (alpha, k, beta, m) -> invariant value."""

    def __init__(self, rank, n1, entries=None):
        self.rank = rank
        self.n1 = n1
        self.entries = {}
        for key, v in (entries or {}).items():
            self.set(*key, v)

    def set(self, alpha, k, beta, m, value):
        self.entries[(tuple(alpha), int(k), tuple(beta), tuple(m))] = Fraction(value)

    def get(self, alpha, k, beta, m=None):
        m = (0,) * self.n1 if m is None else tuple(m)
        return self.entries.get((tuple(alpha), k, tuple(beta), m))

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1], kv[0][3]))

    def classes(self):
        return sorted({key[2] for key in self.entries})

    def non_integral(self):
        return [key for key, v in self.entries.items() if v.denominator != 1]

    def __len__(self):
        return len(self.entries)


def extract_qk_table(J, alphas=None, k_max=None, t_degree=None, classes=None):
    """All invariants for the given components, q-powers and t-monomials."""
    k_max = J.q_order if k_max is None else k_max
    t_degree = J.t_degree if t_degree is None else min(t_degree, J.t_degree)
    alphas = _allowed_components(J) if alphas is None else list(alphas)
    if classes is None:
        classes = enumerate_classes(J.rank, J.cutoff)
    table = QKTable(J.rank, J.geom.n1)
    for beta in classes:
        for alpha in alphas:
            for m in monomials(J.geom.n1, t_degree):
                for k in range(k_max + 1):
                    table.set(alpha, k, beta, m, extract_qk(J, alpha, k, beta, m))
    return table


class _Weights:
    """Contribution of GV_{gamma/r} = 1 to a QK entry at class gamma."""

    def __init__(self, geom, t_degree):
        self.geom = geom
        self.t_degree = t_degree
        self.vectors = {}
        self.series = {}

    def __call__(self, gamma, r, key):
        alpha, k, _, m = key
        if (gamma, r) not in self.vectors:
            self.vectors[(gamma, r)] = cover_contribution(self.geom, gamma, r, self.t_degree)
        sk = (gamma, r, alpha, m)
        ser = self.series.get(sk)
        if ser is None or ser[0] < k:
            poly = self.vectors[(gamma, r)].component(alpha)
            rat = poly.coefficient(m) if poly != 0 else 0
            order = max(k, 10)
            ser = (order, expand_at_zero(rat, order) if rat != 0 else {})
            self.series[sk] = ser
        return Fraction(ser[1].get(k, 0)) * monomial_factorial(m)


def _preferred_keys(geom, gamma, keys):
    """Pivot order: Phi^{1j} with gamma_j != 0, then Phi^{01}, then the rest."""
    zero_m = (0,) * geom.n1
    degs = geom.degrees(gamma)
    order = []
    for j, dj in enumerate(degs):
        if dj:
            order.append((phi_up(j), 0, gamma, zero_m))
    order.append((PHI_01, 0, gamma, zero_m))
    rest = sorted(k for k in keys if k not in order)
    return [k for k in order if k in keys] + rest


def gv_from_qk(qk, geom, cutoff):
    """Recover GV invariants class by class from extracted QK data.

    Every entry gives one linear equation in the GV invariants of the
    classes gamma/r; classes are solved in increasing total degree, the
    pivot being the r = 1 term. All other entries are checked afterwards.
    """
    if qk.rank != geom.h2rank or qk.n1 != geom.n1:
        raise ValueError("QK table does not match the geometry")
    by_class = {}
    t_degree = 0
    for key, v in qk.entries.items():
        alpha, k, beta, m = key
        if class_degree(beta) <= cutoff and any(beta):
            by_class.setdefault(beta, {})[key] = v
            t_degree = max(t_degree, sum(m))
    weight = _Weights(geom, t_degree)
    gv = {}
    mismatches = []
    for gamma in sorted(enumerate_classes(geom.h2rank, cutoff), key=lambda b: (sum(b), b)):
        eqs = by_class.get(gamma, {})
        if not eqs:
            raise PivotError(f"no QK data for class {list(gamma)}")
        n = ind(gamma)
        residuals = {}
        for key, v in eqs.items():
            res = v
            for r in range(2, n + 1):
                if n % r == 0:
                    g = gv.get(tuple(x // r for x in gamma), Fraction(0))
                    if g:
                        res -= g * weight(gamma, r, key)
            residuals[key] = res
        value = None
        for key in _preferred_keys(geom, gamma, eqs):
            w = weight(gamma, 1, key)
            if w:
                value = residuals[key] / w
                break
        if value is None:
            raise PivotError(f"every supplied entry for class {list(gamma)} has zero leading coefficient")
        gv[gamma] = value
        for key, res in residuals.items():
            expect = value * weight(gamma, 1, key)
            if expect != res:
                mismatches.append((key, eqs[key] - res + expect, eqs[key]))
    if mismatches:
        raise QKConsistencyError(mismatches)
    out = GVTable(geom.h2rank, gv)
    out.warnings = [f"non-integer GV at class {list(b)}" for b in out.non_integral()]
    return out
