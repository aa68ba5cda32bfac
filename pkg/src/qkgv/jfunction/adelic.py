"""Local data of the J-function at roots of unity: arm, leg, tail, delta,
the fake J-function in closed form, and the identity relating them at q = 1.

All series here are LocalExpansion objects: maps (class, component,
t-monomial) -> LaurentAtRoot at a fixed root, sharing one truncation order.
"""

from fractions import Fraction

from ..exact import (CycNumber, LaurentAtRoot, Poly, QRat, RootLabel, laurent_expand, pi_plus)
from ..geometry import adams_dual_basis, beta_t, gw_from_gv, gv_power_sum, primitive_part
from ..report import Report
from ..series import (PHI_01, TPoly, class_degree, component_name, monomials, phi_up, t_exp,
                      zero_class)
from .build import build_jtilde, structural_block
from .lemmas import f_triple

MAX_POLE_ORDER = 3


class LocalExpansion:
    """Expansions of many coefficients at one root of unity."""

    def __init__(self, root, order, conductor=None, entries=None):
        self.root = root
        self.order = order
        self.conductor = root.order if conductor is None else conductor
        self.entries = {}
        for key, ser in (entries or {}).items():
            if not ser.is_zero():
                self.entries[key] = ser

    def zero_series(self):
        return LaurentAtRoot(self.root, self.order, {}, self.conductor)

    def get(self, beta, comp, mono):
        return self.entries.get((tuple(beta), comp, tuple(mono)), self.zero_series())

    def keys(self):
        return sorted(self.entries, key=_key_order)

    def items(self):
        return [(k, self.entries[k]) for k in self.keys()]

    def _combine(self, other, sign):
        if other.root != self.root or other.conductor != self.conductor:
            raise ValueError("local expansions at different roots or fields")
        order = min(self.order, other.order)
        out = {}
        for key in set(self.entries) | set(other.entries):
            a = self.entries.get(key, self.zero_series())
            b = other.entries.get(key, other.zero_series())
            out[key] = (a + b if sign > 0 else a - b).truncate(order)
        return LocalExpansion(self.root, order, self.conductor, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def regular_part(self):
        return LocalExpansion(self.root, self.order, self.conductor,
                              {k: s.regular_part() for k, s in self.entries.items()})

    def without_class(self, beta):
        return LocalExpansion(self.root, self.order, self.conductor,
                              {k: s for k, s in self.entries.items() if k[0] != tuple(beta)})

    def at_t_zero(self):
        return LocalExpansion(self.root, self.order, self.conductor,
                              {k: s for k, s in self.entries.items() if not any(k[2])})

    def min_exponent(self):
        return min((s.low_exponent() for s in self.entries.values()), default=0)

    def mismatches(self, other):
        """Sorted list of (key, exponent, self value, other value) through the common order."""
        top = min(self.order, other.order)
        out = []
        for key in sorted(set(self.entries) | set(other.entries), key=_key_order):
            a = self.get(*key)
            b = other.get(*key)
            exps = sorted({k for k in set(a.coeffs) | set(b.coeffs) if k <= top})
            for k in exps:
                va, vb = a.coefficient(k), b.coefficient(k)
                if va != vb:
                    out.append((key, k, va, vb))
        return out


def _key_order(key):
    beta, comp, mono = key
    return (sum(beta), beta, comp[0], comp[1], comp[2], sum(mono), mono)


def expand_j(J, root=None, order=5, conductor=None):
    """Laurent-expand every coefficient of J at q = root^{-1}."""
    root = RootLabel.one() if root is None else root
    N = root.order if conductor is None else conductor
    out = {}
    for beta, comp, mono, f in J.entries():
        out[(beta, comp, mono)] = laurent_expand(f, root, order, N, max_pole_order=MAX_POLE_ORDER)
    return LocalExpansion(root, order, N, out)


def _pi_plus_expansions(J, root, order, N):
    out = {}
    for beta, comp, mono, f in J.entries():
        p = pi_plus(f)
        if not p.is_zero():
            out[(beta, comp, mono)] = laurent_expand(p, root, order, N)
    return LocalExpansion(root, order, N, out)


def arm_tilde(J, order=5):
    """pi_+^fake of the expansion at q = 1 minus the expansion of pi_+(J)."""
    root = RootLabel.one()
    full = expand_j(J, root, order)
    return full.regular_part() - _pi_plus_expansions(J, root, order, 1)


def _compose_q_power(ser, r, order):
    """Substitute q -> q^r in a series in w = 1 - q (regular part only)."""
    if any(k < 0 for k in ser.coeffs):
        raise ValueError("q -> q^r is applied to regular series only")
    # 1 - q^r = 1 - (1 - w)^r as a polynomial in w
    base = {}
    for k in range(1, r + 1):
        c = -((-1) ** k) * _binom(r, k)
        if c:
            base[k] = c
    unit = LaurentAtRoot(ser.root, order, base, ser.conductor)
    out = LaurentAtRoot(ser.root, order, {}, ser.conductor)
    power = LaurentAtRoot(ser.root, order, {0: 1}, ser.conductor)
    for k in range(order + 1):
        c = ser.coeffs.get(k)
        if c is not None:
            out = out + power * c
        power = (power * unit).truncate(order)
    return out.truncate(min(order, ser.order))


def _binom(n, k):
    from math import comb
    return comb(n, k)


def leg_tilde(J, r, order=5, arm=None):
    """Adams operation of degree r applied to arm at t = 0."""
    if r < 1:
        raise ValueError("Adams index must be positive")
    arm = arm_tilde(J, order) if arm is None else arm
    out = {}
    for (beta, comp, mono), ser in arm.at_t_zero().items():
        big = tuple(r * x for x in beta)
        if class_degree(big) > J.cutoff:
            continue
        kind, i, _ = comp
        if kind != "up":
            raise ValueError(f"arm has a component {component_name(comp)} without a fixed degree")
        scale = adams_dual_basis(i, r)
        out[(big, comp, mono)] = _compose_q_power(ser, r, order) * scale
    return LocalExpansion(arm.root, order, arm.conductor, out)


def _substitute_root(p, root, N):
    """p(zeta^{-1} q) for a Laurent polynomial p."""
    base = root.inverse().power_exponent(N)
    coeffs = []
    for k, c in enumerate(p.num.c):
        z = CycNumber.zeta_power(N, base * (k - p.qpow))
        coeffs.append(z * c)
    return QRat(Poly(coeffs), None, p.qpow, allow_pole_at_zero=bool(p.qpow))


def tail_delta(J, root, order=5):
    """(tail at root, delta at root).

    tail: regular part of the expansion at q = root^{-1} minus the expansion
    of pi_+(J) there. delta: pi_+(J)(root^{-1} q) + tail(root^{-1} q), both
    expanded at q = 1; the dilaton shift 1 - q inside pi_+ becomes
    1 - root^{-1} q.
    """
    if root.order == 1:
        raise ValueError("tail_delta needs a root of unity other than 1")
    N = root.order
    full = expand_j(J, root, order, N)
    tail = full.regular_part() - _pi_plus_expansions(J, root, order, N)
    one = RootLabel.one()
    delta = {}
    for beta, comp, mono, f in J.entries():
        p = pi_plus(f)
        key = (beta, comp, mono)
        ser = LaurentAtRoot(one, order, {}, N)
        if not p.is_zero():
            ser = ser + laurent_expand(_substitute_root(p, root, N), one, order, N)
        t = tail.entries.get(key)
        if t is not None:
            ser = ser + LaurentAtRoot(one, order, t.coeffs, N)
        delta[key] = ser
    return tail, LocalExpansion(one, order, N, delta)


def principal_parts(J, root, order=-1):
    """Only the principal parts of the expansions at q = root^{-1}."""
    full = expand_j(J, root, -1, root.order)
    return LocalExpansion(root, -1, root.order,
                          {k: s for k, s in full.entries.items() if s.principal_part()})


def _tpoly_series(root, order, N, by_exponent):
    """Turn {exponent: TPoly} into {mono: LaurentAtRoot}."""
    monos = {}
    for k, poly in by_exponent.items():
        for m, c in poly.terms.items():
            monos.setdefault(m, {})[k] = c
    return {m: LaurentAtRoot(root, order, coeffs, N) for m, coeffs in monos.items()}


def jfake_closed_form(geom, gw, cutoff, t_degree=3, order=5):
    """Fake J-function from GW invariants, expanded at q = 1."""
    one_root = RootLabel.one()
    entries = {}
    zero = zero_class(geom.h2rank)
    for comp, poly in structural_block(geom, t_degree).items():
        for mono, f in poly.items():
            entries[(zero, comp, mono)] = laurent_expand(f, one_root, order, 1)
    for beta, value in gw.items():
        if class_degree(beta) > cutoff:
            continue
        x = beta_t(geom, beta, t_degree)
        ex = t_exp(x)
        one = TPoly.const(geom.n1, t_degree, Fraction(1))
        for j, bj in enumerate(geom.degrees(beta)):
            if bj:
                for m, ser in _tpoly_series(one_root, order, 1, {-1: ex * (value * bj)}).items():
                    entries[(beta, phi_up(j), m)] = ser
        parts = {-1: (one * 3 - x) * ex * value, -2: (x - one * 2) * ex * value}
        for m, ser in _tpoly_series(one_root, order, 1, parts).items():
            entries[(beta, PHI_01, m)] = ser
    return LocalExpansion(one_root, order, 1, entries)


def fake_correction(geom, gv, cutoff, t_degree=3, order=5):
    """Phi^{01} term from the pairing of t with the constant term of arm.

    At class gamma = d beta (beta primitive, x the pairing of t with gamma)
    its coefficient of 1/(1-q) is f1 + 3 G3/d^3 - (3 - x) e^x G3/d^3,
    where the last summand is the matching term of the fake J-function.
    """
    from ..series import enumerate_classes
    one_root = RootLabel.one()
    entries = {}
    for gamma in enumerate_classes(geom.h2rank, cutoff):
        beta, d = primitive_part(gamma)
        x = beta_t(geom, gamma, t_degree)
        g3 = gv_power_sum(gv, beta, d, 3)
        _, f1, _ = f_triple(gv, beta, d, x)
        one = TPoly.const(geom.n1, t_degree, Fraction(1))
        corr = f1 + one * (3 * g3 / d ** 3) - (one * 3 - x) * t_exp(x) * (g3 / d ** 3)
        for m, ser in _tpoly_series(one_root, order, 1, {-1: corr}).items():
            entries[(gamma, PHI_01, m)] = ser
    return LocalExpansion(one_root, order, 1, entries)


def pairing_with_t(geom, arm, t_degree):
    """Phi^{01} <t, arm_0> / (1 - q) from the constant terms of the Phi^{1j} parts."""
    entries = {}
    acc = {}
    for (beta, comp, mono), ser in arm.items():
        if comp[0] != "up" or comp[1] != 1 or 0 not in ser.coeffs:
            continue
        j = comp[2]
        m = list(mono)
        m[j] += 1
        if sum(m) > t_degree:
            continue
        key = (beta, tuple(m))
        acc[key] = acc.get(key, 0) + ser.coeffs[0]
    for (beta, m), c in acc.items():
        entries[(beta, PHI_01, m)] = LaurentAtRoot(arm.root, arm.order, {-1: c}, arm.conductor)
    return LocalExpansion(arm.root, arm.order, arm.conductor, entries)


def _report_mismatches(rep, name, mism, keys):
    by_key = {}
    for key, k, lhs, rhs in mism:
        by_key.setdefault(key, []).append((k, lhs, rhs))
    for key in sorted(set(keys) | set(by_key), key=_key_order):
        beta, comp, mono = key
        loc = [list(beta), component_name(comp), list(mono)]
        bad = by_key.get(key)
        if bad:
            k, lhs, rhs = bad[0]
            rep.add(name, loc + [k], False, {"lhs": lhs, "rhs": rhs, "orders": ",".join(
                str(b[0]) for b in bad)})
        else:
            rep.add(name, loc, True)


def verify_fake_identity(geom, gv, cutoff, t_degree=3, order=5, arm=None):
    """Expansion at q = 1 == fake J(t) + arm + Phi^{01} <t, arm_0>/(1-q)."""
    rep = Report("verify fake", {"cutoff": cutoff, "t_degree": t_degree, "order": order})
    J = build_jtilde(geom, gv, cutoff, t_degree)
    lhs = expand_j(J, RootLabel.one(), order)
    computed_arm = arm_tilde(J, order)
    arm = computed_arm if arm is None else arm
    gw = gw_from_gv(gv, cutoff)
    correction = fake_correction(geom, gv, cutoff, t_degree, order)
    rhs = jfake_closed_form(geom, gw, cutoff, t_degree, order) + arm + correction
    _report_mismatches(rep, "fake-identity", lhs.mismatches(rhs), set(lhs.entries) | set(rhs.entries))
    pairing = pairing_with_t(geom, computed_arm, t_degree)
    _report_mismatches(rep, "poincare-pairing", correction.mismatches(pairing),
                       set(correction.entries) | set(pairing.entries))
    return rep


def arm_constant_closed_form(geom, gv, gamma, t_degree):
    """Constant term of arm at class gamma: {component: TPoly}."""
    beta, d = primitive_part(gamma)
    x = beta_t(geom, gamma, t_degree)
    g = {k: gv_power_sum(gv, beta, d, k) for k in (-1, 1, 2, 3)}
    one = TPoly.const(geom.n1, t_degree, Fraction(1))
    base = one * (g[1] - g[3] / d ** 2) + x * (g[2] / (2 * d) - g[3] / (2 * d * d))
    out = {}
    for j, bj in enumerate(geom.degrees(beta)):
        if bj:
            out[phi_up(j)] = base * bj
    f0, _, _ = f_triple(gv, beta, d, x)
    out[PHI_01] = one * (d * g[-1] - g[3] / d ** 3) + f0
    return out


def leg_constant_closed_form(geom, gv, gamma, r):
    """Constant term of leg_r at class gamma (t = 0); empty unless r | gamma."""
    if any(x % r for x in gamma):
        return {}
    inner = tuple(x // r for x in gamma)
    beta, d = primitive_part(inner)
    g = {k: gv_power_sum(gv, beta, d, k) for k in (-1, 1, 3)}
    out = {}
    for j, bj in enumerate(geom.degrees(beta)):
        if bj:
            out[phi_up(j)] = Fraction(r * r * bj) * (g[1] - g[3] / d ** 2)
    out[PHI_01] = Fraction(r ** 3) * (d * g[-1] - g[3] / d ** 3)
    return out


def verify_adelic_structure(geom, gv, cutoff, t_degree=2, order=3):
    """arm, leg and tail checks: constant terms and degree support."""
    from ..series import enumerate_classes
    rep = Report("verify adelic", {"cutoff": cutoff, "t_degree": t_degree, "order": order})
    J = build_jtilde(geom, gv, cutoff, t_degree)
    arm = arm_tilde(J, order)
    rep.add("arm-no-negative-powers", [], arm.min_exponent() >= 0,
            {"min_exponent": arm.min_exponent()})
    for gamma in enumerate_classes(geom.h2rank, cutoff):
        expect = arm_constant_closed_form(geom, gv, gamma, t_degree)
        for comp in [PHI_01] + [phi_up(j) for j in range(geom.n1)]:
            for mono in monomials(geom.n1, t_degree):
                got = arm.get(gamma, comp, mono).coefficient(0)
                want = expect[comp].coefficient(mono) if comp in expect else 0
                rep.add("arm-constant", [list(gamma), component_name(comp), list(mono)],
                        got == want, {"arm": got, "closed_form": want})
    for r in range(2, cutoff + 1):
        leg = leg_tilde(J, r, order, arm)
        rep.add("leg-no-negative-powers", [r], leg.min_exponent() >= 0, {})
        for gamma in enumerate_classes(geom.h2rank, cutoff):
            expect = leg_constant_closed_form(geom, gv, gamma, r)
            zero_m = (0,) * geom.n1
            for comp in [PHI_01] + [phi_up(j) for j in range(geom.n1)]:
                got = leg.get(gamma, comp, zero_m).coefficient(0)
                want = expect.get(comp, 0)
                rep.add("leg-constant", [r, list(gamma), component_name(comp)], got == want,
                        {"leg": got, "closed_form": want})
        for root in RootLabel.primitive(r):
            tail, _ = tail_delta(J, root, order)
            stray = [k for k in tail.keys() if k[1][0] != "up" or k[1][1] not in (0, 1)]
            rep.add("tail-support", [str(root)], not stray,
                    {"stray": ";".join(f"{list(k[0])}:{component_name(k[1])}" for k in stray)})
    return rep
