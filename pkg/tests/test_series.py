from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkgv.series import (KVector, NovikovSeries, TPoly, component_from_indices, component_name,
                         enumerate_classes, monomials, parse_component, phi_lo, phi_up, t_exp)


def test_novikov_product_truncates():
    one_plus_q = {(0,): 1, (1,): 1}
    assert NovikovSeries(1, 2, one_plus_q) * NovikovSeries(1, 2, one_plus_q) == \
        NovikovSeries(1, 2, {(0,): 1, (1,): 2, (2,): 1})
    assert NovikovSeries(1, 1, one_plus_q) * NovikovSeries(1, 1, one_plus_q) == \
        NovikovSeries(1, 1, {(0,): 1, (1,): 2})


def test_novikov_rank2_monomials_multiply():
    a = NovikovSeries.monomial(2, 3, (1, 0))
    b = NovikovSeries.monomial(2, 3, (0, 1))
    assert a * b == NovikovSeries.monomial(2, 3, (1, 1))


def test_adams_on_novikov():
    s = NovikovSeries(1, 2, {(0,): 1, (1,): 1})
    assert s.adams(2) == NovikovSeries(1, 2, {(0,): 1, (2,): 1})
    assert s.adams(3) == NovikovSeries(1, 2, {(0,): 1})
    t = NovikovSeries(2, 2, {(1, 0): 1, (0, 1): 1})
    assert t.adams(2) == NovikovSeries(2, 2, {(2, 0): 1, (0, 2): 1})


def test_t_exp_examples():
    t1 = TPoly.var(1, 3, 0)
    assert t_exp(t1) == TPoly(1, 3, {(0,): 1, (1,): 1, (2,): Fraction(1, 2), (3,): Fraction(1, 6)})
    assert t_exp(TPoly(1, 3)) == TPoly.const(1, 3, 1)
    assert t_exp(TPoly.var(1, 2, 0, 2)) == TPoly(1, 2, {(0,): 1, (1,): 2, (2,): 2})


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def linear_tpolys(draw, nvars=2, degree=3):
    return TPoly.linear(degree, [draw(coeffs) for _ in range(nvars)])


@given(linear_tpolys(), linear_tpolys())
def test_t_exp_is_a_homomorphism(a, b):
    assert t_exp(a + b) == t_exp(a) * t_exp(b)


@given(linear_tpolys(), linear_tpolys(), linear_tpolys())
def test_tpoly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)


def test_monomials_and_classes():
    assert sorted(monomials(2, 1)) == [(0, 0), (0, 1), (1, 0)]
    assert enumerate_classes(2, 2) == [(0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert enumerate_classes(1, 3, include_zero=True)[0] == (0,)


def test_component_names_round_trip():
    assert component_name(phi_up(0)) == "Phi^{11}"
    assert component_name(component_from_indices("up", 0, 1)) == "Phi^{01}"
    assert component_name(phi_lo(0)) == "Phi_{11}"
    assert component_name(phi_lo(11)) == "Phi_{1,12}"
    for comp in [phi_up(0), phi_up(3), phi_lo(2), phi_lo(11), component_from_indices("up", 0, 1)]:
        assert parse_component(component_name(comp)) == comp
    with pytest.raises(ValueError):
        parse_component("Phi^{7}")


def test_kvector_linear_structure():
    v = KVector({phi_up(0): 2, component_from_indices("up", 0, 1): 3})
    w = KVector({phi_up(0): -2})
    assert (v + w) == KVector({component_from_indices("up", 0, 1): 3})
    assert (v - v).is_zero()
