from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qkgv.conifold import (BASIS, BASIS_NAMES, KRing, conifold_gv_check, i_small,
                           restrict_to_conifold, ring_invert_unit, small_j_t, small_j_t0,
                           verify_ring_presentation, verify_small_j_t, verify_small_j_t0)
from qkgv.exact import QRat
from qkgv.jfunction import kernel_a, kernel_b

su, sv = sympy.symbols("u v")


@pytest.fixture(scope="module")
def ring():
    return KRing()


def test_relations(ring):
    one, P, T = ring.one(), ring.P(), ring.T()
    assert ((one - P) ** 2).is_zero()
    assert (one - T) ** 3 == ring.u() * ring.v() ** 2 * -2
    assert ((one - P * T) ** 2 * (one - T)).is_zero()


def test_q_shift_identity(ring):
    """(1-PT)^2 (1-PqT) = (1-PT)^2 (1-Pq) with q a formal scalar."""
    one, P, T = ring.one(), ring.P(), ring.T()
    qq = QRat.q(1)
    w2 = (one - P * T) ** 2
    assert (w2 * (one - P * T * qq) - w2 * (one - P * qq)).is_zero()


def test_inverses(ring):
    PT = ring.P() * ring.T()
    inv = ring_invert_unit(PT)
    assert inv * PT == ring.one()
    n = ring.one() - PT
    assert inv == ring.one() + n + n * n + n * n * n
    assert ring_invert_unit(ring.scalar(2)) == ring.scalar(Fraction(1, 2))
    assert ring.P() ** -1 * ring.P() == ring.one()


def test_presentation_against_groebner_basis(ring):
    """Quotient of Q[u, v] by u^2 and (u + v - uv)^2 v, computed independently."""
    w = su + sv - su * sv
    G = sympy.groebner([su ** 2, sympy.expand(w ** 2 * sv)], su, sv, order="grevlex")
    standard = [m for m in (su ** a * sv ** b for a in range(3) for b in range(6))
                if G.reduce(m)[1] == m]
    assert len(standard) == 6
    for a in range(2):
        for b in range(6):
            got = ring.u() ** a * ring.v() ** b
            nf = sympy.Poly(G.reduce(su ** a * sv ** b)[1], su, sv)
            want = ring.zero()
            for (i, j), c in nf.terms():
                want = want + ring.u() ** i * ring.v() ** j * Fraction(int(c.p), int(c.q))
            assert got == want


elems = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=6, max_size=6)


def from_coords(R, coords):
    out = R.zero()
    for (a, b), c in zip(BASIS, coords):
        out = out + R.u() ** a * R.v() ** b * c
    return out


@given(elems, elems, elems)
def test_ring_axioms(a, b, c):
    R = KRing()
    x, y, z = from_coords(R, a), from_coords(R, b), from_coords(R, c)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(elems)
def test_augmentation_ideal_is_nilpotent_of_order_four(a):
    R = KRing()
    x = from_coords(R, [0] + a[1:])
    assert (x ** 4).is_zero()


def test_basis_is_six_dimensional(ring):
    assert len(BASIS_NAMES) == 6
    assert ring.from_w_coordinates(ring.w().w_coordinates()) == ring.w()


def test_ring_presentation_report():
    rep = verify_ring_presentation()
    assert rep.passed
    assert not verify_ring_presentation(ring=KRing(-1)).passed


# ----- I-function --------------------------------------------------------------------

def test_i_function_degree_one(ring):
    one, P, T = ring.one() * QRat.const(1), ring.P(), ring.T()
    omq = QRat.poly([1, -1])
    PT = P * T
    den = (one - P * QRat.q(1)) ** 2 * PT * PT
    want = (one - PT) ** 2 * omq * ring_invert_unit(den)
    assert i_small(1, ring).value == want


@pytest.mark.parametrize("r", range(0, 5))
def test_i_function_forms_agree(ring, r):
    term = i_small(r, ring)
    assert term.value == term.collapsed == term.toric


def test_i_function_degree_zero(ring):
    assert i_small(0, ring).value == ring.one() * QRat.poly([1, -1])


# ----- small J-function ----------------------------------------------------------------

def test_small_j_t0_report():
    rep = verify_small_j_t0(4)
    assert rep.passed


def test_small_j_t0_mutated_ring_fails():
    assert not verify_small_j_t0(3, KRing(-1)).passed


def test_small_j_t0_restriction_degree_one(ring):
    rec = small_j_t0(1, ring)
    inv = QRat.inv_one_minus_q_power(1)
    res = restrict_to_conifold(rec.J[1].map(lambda c: c.constant_term() * inv))
    assert res["1"] == kernel_a(1)
    assert res["1-P"] == kernel_a(1) + kernel_b(1)


def test_small_j_t0_degree_zero(ring):
    rec = small_j_t0(2, ring)
    inv = QRat.inv_one_minus_q_power(1)
    assert rec.J[0].map(lambda c: c.constant_term() * inv) == ring.one() * QRat.const(1)


def test_restriction_rejects_wrong_shape(ring):
    with pytest.raises(ValueError):
        restrict_to_conifold(ring.u() * QRat.const(1))


def test_small_j_t_report_and_epsilon_discrepancy():
    """Everything matches except the stated epsilon_2 = -F_1 at Q^3 and beyond:
    the solved epsilon_2 is -t e^t at every degree R >= 2 while F_1 at Q^R is
    t e^t (1 + e^t + ... + e^{(R-2)t})."""
    rep = verify_small_j_t(3, 2)
    fails = [(c.name, tuple(c.location)) for c in rep.failures()]
    assert fails == [("reconstruction-coefficient", (3, "epsilon_2"))]
    assert rep.data["epsilon_2"] == {"Q^1": "0", "Q^2": "[-1]*t + [-1]*t^2",
                                     "Q^3": "[-1]*t + [-1]*t^2"}
    assert rep.data["F1"]["Q^3"] == "[2]*t + [3]*t^2"


def test_small_j_t_free_of_mixing_terms(ring):
    inputs, rec = small_j_t(2, 1, ring)
    assert len(inputs) == 3
    for name in ("u_1", "epsilon_0", "epsilon_1", "delta_0", "delta_1", "s_0", "s_1"):
        for r in range(1, 3):
            assert rec.unknown(r, name).is_zero()


# ----- GV of the local curve -----------------------------------------------------------

@pytest.mark.parametrize("d_max", [1, 12])
def test_conifold_gv(d_max):
    rep = conifold_gv_check(d_max)
    assert rep.passed and len(rep.checks) == d_max and rep.data["warnings"] == []


def test_conifold_gv_perturbed():
    rep = conifold_gv_check(12, {4: Fraction(1, 63)})
    assert not rep.passed
    assert any("[4]" in w for w in rep.data["warnings"])
