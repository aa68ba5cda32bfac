"""Closed-form partial fractions of the four kernel families, and their check.

For a class gamma = M beta' with beta' primitive, every factorization
M = s d contributes poles at the primitive s-th roots of unity whose
coefficients are explicit in the power sums GV^{(k)}_{d beta'}. The
closed forms below are compared against the exact partial fraction of the
directly assembled sum over r-fold covers.

Conventions: x denotes the pairing of t with gamma itself. For the a and
b families the comparison covers every pole coefficient, the polynomial
part, and the constant term of the expansion at q = 1. For the c and d
families the closed forms list pole coefficients at every root plus the
constant term at q = 1 only, so those are compared.
"""

from fractions import Fraction

from ..exact import (CycNumber, QRat, RootLabel, laurent_expand, lcm_upto, partial_fraction)
from ..geometry import beta_t, gv_power_sum, primitive_part
from ..report import Report
from ..series import PHI_01, TPoly, component_name, enumerate_classes, monomials, phi_up, t_exp
from .build import ONE_MINUS_Q
from .kernels import c_pieces, d_pieces, exp_pieces, kernel_a, kernel_b

FAMILIES = ("a", "b", "c", "d")


def f_triple(gv, beta, d, x):
    """(f0, f1, f2) at class d*beta (beta primitive) with pairing x."""
    g0, g1, g2, g3 = (gv_power_sum(gv, beta, d, k) for k in (0, 1, 2, 3))
    ex = t_exp(x)
    one = TPoly.const(x.nvars, x.degree, Fraction(1))
    x2 = x * x
    f0 = x * (g0 / 2 - 5 * g1 / (12 * d) - g3 / (12 * d ** 3))
    f1 = (x * (g1 / d) + x2 * (g2 / (2 * d * d))
          + ((one * 3 - x) * ex - one * 3 - x - x2 * Fraction(1, 2)) * (g3 / d ** 3))
    f2 = (ex * (x - one * 2) + one * 2) * (g3 / d ** 3)
    return f0, f1, f2


def _field(N):
    def val(x):
        return x if isinstance(x, CycNumber) else CycNumber.rational(N, x)
    return val


def _add(store, key, value):
    store[key] = store[key] + value if key in store else value


def closed_form(family, geom, gv, gamma, t_degree, N, mutations=None):
    """Closed-form data for one family at class gamma.

    Returns a dict with keys ("pole", root, k), ("const1",) and, for the a and
    b families, ("poly",); values are TPolys (c, d) or field elements (a, b)
    before multiplication by the divisor degree of the primitive class.
    """
    mut = dict(mutations or {})
    beta, M = primitive_part(gamma)
    x = beta_t(geom, gamma, t_degree)
    one = TPoly.const(geom.n1, t_degree, Fraction(1))
    out = {}
    for s in range(1, M + 1):
        if M % s:
            continue
        d = M // s
        g = {k: gv_power_sum(gv, beta, d, k) for k in (-1, 0, 1, 2, 3)}
        roots = RootLabel.primitive(s)
        if family in ("a", "b"):
            if family == "a":
                A = g[1] - g[3] / (s * s * d * d)
                B = g[3] / (s * s * d * d)
                C = Fraction(0)
            else:
                den = Fraction(s * d) ** 3
                A = s * d * g[-1] - g[3] / den
                B = mut.get("b_double_pole", 3) * g[3] / den
                C = -2 * g[3] / den
            if s == 1:
                out[("const1",)] = CycNumber.rational(N, A)
            for root in roots:
                zi = root.inverse().value(N)
                one_minus = 1 - zi
                _add(out, ("poly",), zi * A)
                for k, v in ((1, one_minus * A + zi * B), (2, one_minus * B + zi * C),
                             (3, one_minus * C)):
                    if v != 0:
                        out[("pole", root, k)] = v
        elif family == "c":
            if s == 1:
                ex = t_exp(x)
                out[("const1",)] = x * (g[2] / (2 * d) - g[3] / (2 * d * d))
                out[("pole", roots[0], 1)] = (ex - one) * (g[3] / (d * d))
            else:
                for root in roots:
                    out[("pole", root, 1)] = x * (g[3] / (s * s * d * d))
        elif family == "d":
            if s == 1:
                f0, f1, f2 = f_triple(gv, beta, d, x)
                out[("const1",)] = f0
                out[("pole", roots[0], 1)] = f1
                out[("pole", roots[0], 2)] = f2
            else:
                den = Fraction(s * d) ** 3
                for root in roots:
                    out[("pole", root, 1)] = x * (g[1] / (s * d) + g[3] / den)
                    out[("pole", root, 2)] = x * (-g[3] / den)
        else:
            raise ValueError(f"unknown kernel family {family!r}")
    return out


def direct_sum(family, geom, gv, gamma, t_degree):
    """(1-q) sum over r | ind(gamma) of GV_{gamma/r} times the family kernel.

    Returns a TPoly of QRat (the divisor-degree factor is not applied).
    """
    beta, M = primitive_part(gamma)
    x = beta_t(geom, gamma, t_degree)
    xs, e1, x2, e2 = exp_pieces(x)
    one = TPoly.const(geom.n1, t_degree, Fraction(1))
    total = TPoly(geom.n1, t_degree)
    for r in range(1, M + 1):
        if M % r:
            continue
        small = tuple(v // r for v in gamma)
        g = gv.value(small)
        if not g:
            continue
        # beta_j of gamma / r is (M / r) times that of the primitive class
        weight = g * (M // r) if family in ("a", "c") else g
        if family == "a":
            parts = [(one, kernel_a(r))]
        elif family == "b":
            parts = [(one, kernel_b(r))]
        elif family == "c":
            c1, c2 = c_pieces(r)
            parts = [(xs, c1), (e1, c2)]
        else:
            d1, d2, d3, d4 = d_pieces(r)
            parts = [(xs, d1), (x2, d2), (e2, d3), (xs * e1, d4)]
        for poly, rat in parts:
            rat = ONE_MINUS_Q * rat * weight
            total = total + TPoly(poly.nvars, poly.degree, {e: c * rat for e, c in poly.terms.items()})
    return total


def _value_at(v, mono, N):
    if isinstance(v, TPoly):
        v = v.coefficient(mono)
    return v if isinstance(v, CycNumber) else CycNumber.rational(N, v)


def compare_family(family, geom, gv, gamma, t_degree, N, mutations=None):
    """List of mismatches (component, mono, key, direct, closed) at class gamma."""
    beta, _ = primitive_part(gamma)
    direct = direct_sum(family, geom, gv, gamma, t_degree)
    closed = closed_form(family, geom, gv, gamma, t_degree, N, mutations)
    monos = [(0,) * geom.n1] if family in ("a", "b") else [
        m for m in monomials(geom.n1, t_degree) if sum(m)]
    if family in ("a", "c"):
        comps = [(phi_up(j), bj) for j, bj in enumerate(geom.degrees(beta))]
    else:
        comps = [(PHI_01, 1)]
    results = []
    for mono in monos:
        f = direct.coefficient(mono)
        f = f if isinstance(f, QRat) else QRat.const(f)
        pf = partial_fraction(f, conductor=N, max_pole_order=3)
        at_one = laurent_expand(f, RootLabel.one(), 0).coefficient(0)
        keys = set(pf.terms) | {(k[1], k[2]) for k in closed if k[0] == "pole"}
        for comp, factor in comps:
            mism = []
            for root, k in sorted(keys):
                lhs = pf.coefficient(root, k) * factor
                rhs = _value_at(closed.get(("pole", root, k), 0), mono, N) * factor
                if lhs != rhs:
                    mism.append(((str(root), k), lhs, rhs))
            lhs = CycNumber.rational(N, at_one) * factor
            rhs = _value_at(closed.get(("const1",), 0), mono, N) * factor
            if lhs != rhs:
                mism.append((("1", 0), lhs, rhs))
            if family in ("a", "b"):
                poly = _value_at(closed.get(("poly",), 0), mono, N) * factor
                if not (pf.poly_part * factor == QRat.const(poly)):
                    mism.append((("poly", 0), pf.poly_part, poly))
            results.append((comp, mono, mism))
    return results


def verify_expansion_lemmas(geom, gv, cutoff, t_degree=2, families=FAMILIES, mutations=None):
    """Compare closed-form partial fractions with the direct sums, class by class."""
    N = lcm_upto(cutoff)
    rep = Report("verify lemmas", {"cutoff": cutoff, "t_degree": t_degree, "conductor": N,
                                   "families": list(families)})
    for family in families:
        for gamma in enumerate_classes(geom.h2rank, cutoff):
            for comp, mono, mism in compare_family(family, geom, gv, gamma, t_degree, N, mutations):
                loc = [family, list(gamma), component_name(comp), list(mono)]
                if mism:
                    (root, order), lhs, rhs = mism[0]
                    rep.add("expansion-lemma", loc + [root, order], False,
                            {"direct": lhs, "closed_form": rhs, "mismatches": len(mism),
                             "all": "; ".join(f"{r}@{o}" for (r, o), _, _ in mism)})
                else:
                    rep.add("expansion-lemma", loc, True)
    return rep
