import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkgv.geometry import (CY3Data, GVTable, GWTable, adams_dual_basis, beta_t, f_cubic,
                           gv_from_gw, gv_power_sum, gw_from_gv, ind, primitive_part)
from qkgv.series import TPoly


@pytest.mark.parametrize("beta, expected", [((4, 6), 2), ((3,), 3), ((2, 3), 1), ((0, 5), 5)])
def test_ind(beta, expected):
    assert ind(beta) == expected


def test_primitive_part():
    assert primitive_part((4, 6)) == ((2, 3), 2)


def test_gw_from_gv_single_curve():
    gw = gw_from_gv(GVTable(1, {(1,): 1}), 12)
    assert gw.entries == {(d,): Fraction(1, d ** 3) for d in range(1, 13)}


def test_gw_from_gv_degree_two_only():
    gw = gw_from_gv(GVTable(1, {(2,): 5}), 4)
    assert gw.value((2,)) == 5 and gw.value((4,)) == Fraction(5, 8)
    assert gw.value((1,)) == 0 and gw.value((3,)) == 0


def test_empty_tables():
    assert gw_from_gv(GVTable(2, {}), 3).entries == {}
    assert gv_from_gw(GWTable(1, {}), 3).entries == {}


def test_gv_from_gw_single_curve():
    gv = gv_from_gw(GWTable(1, {(d,): Fraction(1, d ** 3) for d in range(1, 13)}), 12)
    assert gv.entries == {(1,): 1}
    assert gv.warnings == []


def test_gv_from_gw_flags_non_integers():
    gv = gv_from_gw(GWTable(1, {(1,): Fraction(1, 2)}), 1)
    assert gv.entries == {(1,): Fraction(1, 2)}
    assert len(gv.warnings) == 1 and "[1]" in gv.warnings[0]
    # higher covers of a non-integer class are non-integral as well
    assert gv_from_gw(GWTable(1, {(1,): Fraction(1, 2)}), 2).value((2,)) == Fraction(-1, 16)


def test_round_trip_exhaustive_small_tables():
    """Every rank-1 table with entries in -3..3 up to degree 4."""
    for values in itertools.product(range(-3, 4), repeat=4):
        gv = GVTable(1, {(d + 1,): v for d, v in enumerate(values)})
        assert gv_from_gw(gw_from_gv(gv, 4), 4) == gv


@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any),
                       st.integers(-1000, 1000), max_size=10))
def test_round_trip_rank2(entries):
    gv = GVTable(2, entries).restricted(6)
    assert gv_from_gw(gw_from_gv(gv, 6), 6) == gv


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any),
                       st.fractions(min_value=-9, max_value=9, max_denominator=9), max_size=8))
def test_inverse_round_trip_rank2(entries):
    gw = GWTable(2, entries)
    assert gw_from_gv(gv_from_gw(gw, 6), 6) == gw.restricted(6)


def test_gv_power_sum_examples():
    assert gv_power_sum(GVTable(1, {(1,): 1, (2,): 5}), (1,), 2, 3) == 41
    assert gv_power_sum(GVTable(1, {(1,): 1, (2,): 5, (4,): -2}), (1,), 4, 0) == 4
    gv = GVTable(1, {(1,): 7, (2,): 3})
    assert all(gv_power_sum(gv, (1,), 1, g) == 7 for g in (-1, 0, 3))


def test_f_cubic_examples():
    F, grad = f_cubic(CY3Data(1, 1, [[1]], {(0, 0, 0): 5}))
    assert F == TPoly(1, 3, {(3,): Fraction(5, 6)})
    assert grad == [TPoly(1, 3, {(2,): Fraction(5, 2)})]
    F, grad = f_cubic(CY3Data(1, 1, [[1]], {}))
    assert F.is_zero() and grad[0].is_zero()
    F, _ = f_cubic(CY3Data(2, 2, [[1, 0], [0, 1]], {(0, 0, 1): 3}))
    assert F == TPoly(2, 3, {(2, 1): Fraction(3, 2)})


def test_beta_t_examples():
    assert beta_t(CY3Data(1, 1, [[1]]), (3,)) == TPoly(1, 3, {(1,): 3})
    assert beta_t(CY3Data(1, 1, [[1]]), (0,)).is_zero()
    assert beta_t(CY3Data(2, 2, [[1, 0], [2, 1]]), (1, 1)) == TPoly(2, 3, {(1, 0): 3, (0, 1): 1})


@pytest.mark.parametrize("i, r, expected", [(2, 2, 2), (3, 5, 1), (2, 1, 1)])
def test_adams_dual_basis(i, r, expected):
    assert adams_dual_basis(i, r) == expected


def test_table_validation():
    with pytest.raises(ValueError):
        GVTable(1, {(0,): 3})
    with pytest.raises(ValueError):
        GVTable(2, {(1,): 3})
