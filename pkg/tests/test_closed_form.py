import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from besselint import closed_form as cf
from besselint.bessel import sph_bessel
from besselint.errors import DomainError, FormulaInapplicable
from besselint.exact import legendre_at_zero
from besselint.oracle import bessel_product_integral, integrate_full_line
from besselint.verify import TRIPLE_MOMENTA

momenta = st.floats(0.2, 4.0)


def test_one_function_examples():
    assert cf.integral_one_bessel_line(1, 1).pi_multiple() == 0
    assert cf.integral_one_bessel_line(0, 2).pi_multiple() == Fraction(1, 2)
    assert cf.integral_one_bessel_line(2, 1).pi_multiple() == Fraction(1, 2)
    for L in range(1, 12, 2):
        pv = cf.integral_one_bessel_line(L, 1.7)
        assert pv.is_exact and pv.pi_multiple() == 0


@pytest.mark.parametrize("L", [0, 2, 4, 6])
def test_one_function_coefficient(L):
    assert cf.integral_one_bessel_line(L, 1).coefficient == (-1) ** (L // 2) * legendre_at_zero(L)


def test_j0_halfline():
    assert cf.integral_j0_halfline(1).pi_multiple() == Fraction(1, 2)
    assert cf.integral_j0_halfline(2).pi_multiple() == Fraction(1, 4)


@given(momenta)
def test_j0_halfline_scaling(k):
    assert math.isclose(cf.integral_j0_halfline(k).value, cf.integral_j0_halfline(1).value / k,
                        rel_tol=1e-15)


@given(st.fractions(Fraction(1, 10), 10, max_denominator=100))
def test_consistency_chain(k):
    assert cf.integral_one_bessel_line(0, k).pi_multiple() == 2 * cf.integral_j0_halfline(k).pi_multiple()


def test_orthogonality():
    assert cf.orthogonality_value(0, 0).pi_multiple() == 1
    assert cf.orthogonality_value(1, 2).pi_multiple() == 0
    assert cf.orthogonality_value(2, 2).pi_multiple() == Fraction(1, 5)


def test_two_halfline():
    assert cf.integral_two_bessel_halfline(0, 1, 1).pi_multiple() == Fraction(1, 2)
    assert cf.integral_two_bessel_halfline(1, 1, 2).pi_multiple() == Fraction(1, 24)


@given(st.integers(0, 6), momenta, momenta)
def test_two_halfline_symmetric(L, k1, k2):
    a = cf.integral_two_bessel_halfline(L, k1, k2).value
    b = cf.integral_two_bessel_halfline(L, k2, k1).value
    assert math.isclose(a, b, rel_tol=1e-14)


def test_shifted_examples():
    assert math.isclose(cf.shifted_cross_integral(0, 0, 0.0), math.pi, rel_tol=1e-15)
    assert math.isclose(cf.shifted_cross_integral(0, 0, 2.0), math.pi * sph_bessel(0, 2.0),
                        rel_tol=1e-15)
    rep = integrate_full_line(lambda x: sph_bessel(2, x - 1.3) * sph_bessel(1, x), frequencies=(0, 2))
    assert abs(cf.shifted_cross_integral(2, 1, 1.3) - rep.value) < 1e-8


@pytest.mark.parametrize("L,l,y", [(1, 2, 0.9), (3, 1, -1.7), (2, 2, 4.5), (3, 3, 5.0)])
def test_shifted_against_oracle(L, l, y):
    rep = integrate_full_line(lambda x: sph_bessel(L, x - y) * sph_bessel(l, x), frequencies=(0, 2))
    assert abs(cf.shifted_cross_integral(L, l, y) - rep.value) < 1e-8


def test_kinematics_examples():
    kin = cf.kinematics(1, 1, 1)
    assert kin.delta == Fraction(1, 2) and kin.beta == 1
    kin = cf.kinematics(1, 1, 2)
    assert kin.delta == -1 and kin.beta == Fraction(1, 2)
    kin = cf.kinematics(1, 1, 3)
    assert kin.delta == Fraction(-7, 2) and kin.beta == 0


def test_edge_tolerance_for_floats():
    assert cf.kinematics(1.0, 1.0, 2.0 + 1e-14).beta == Fraction(1, 2)
    assert cf.kinematics(1.0, 1.0, 2.0 + 1e-14, edge_tol=0.0).beta == 0


@given(momenta, momenta, momenta)
def test_kinematics_fields(k1, k2, k3):
    kin = cf.kinematics(k1, k2, k3)
    assert kin.k_less <= kin.k_greater and {kin.k_less, kin.k_greater} == {k1, k2}
    if kin.beta == 1:
        assert -1 < kin.delta < 1
    if kin.beta == 0:
        assert abs(kin.delta) > 1


def test_triple_special_examples():
    assert cf.triple_integral_special(0, 1, 1, 1).pi_multiple() == Fraction(1, 4)
    pv = cf.triple_integral_special(1, 1, 1, 1)
    assert pv.is_exact and pv.pi_multiple() == Fraction(1, 8)
    assert cf.triple_integral_special(2, 1, 1, 3).pi_multiple() == 0


def test_triple_examples():
    rep = bessel_product_integral((1, 1, 2), (1, 1, 1))
    closed = cf.triple_integral(1, 1, 2, 1, 1, 1).value
    assert abs(closed - rep.value) / abs(rep.value) < 1e-6
    pv = cf.triple_integral(2, 2, 2, 1, 1, 3)
    assert pv.is_exact and pv.pi_multiple() == 0


@given(st.integers(0, 6), momenta, momenta, momenta)
def test_triple_reduces_to_special(lam, k1, k2, k3):
    assume(abs(abs(cf.kinematics(k1, k2, k3).delta) - 1) > 1e-9)
    a = cf.triple_integral(lam, lam, 0, k1, k2, k3).value
    b = cf.triple_integral_special(lam, k1, k2, k3).value
    assert abs(a - b) <= 1e-12 * max(abs(b), 1e-300) + 1e-300


def _permutation_spread(orders, ks):
    base = cf.triple_integral(*orders, *ks).value
    worst = 0.0
    for perm in itertools.permutations(range(3)):
        L = [orders[i] for i in perm]
        k = [ks[i] for i in perm]
        worst = max(worst, abs(cf.triple_integral(*L, *k).value - base) / abs(base))
    return worst


@pytest.mark.parametrize("ks", TRIPLE_MOMENTA)
def test_permutation_symmetry_grid(ks):
    for orders in itertools.product(range(5), repeat=3):
        if cf.coupling_nonzero(*orders):
            assert _permutation_spread(orders, ks) <= 1e-12


@given(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5)), momenta, momenta)
def test_permutation_symmetry_random(orders, k1, k2):
    assume(cf.coupling_nonzero(*orders))
    k3 = (abs(k1 - k2) + k1 + k2) / 2  # well inside the window
    assume(abs(k1 - k2) > 0.05)
    value = cf.triple_integral(*orders, k1, k2, k3).value
    assume(abs(value) > 1e-6)
    # the l-sum loses about (k_max / k_min)^L digits when the small momentum sits in slot 3
    cond = (max(k1, k2, k3) / min(k1, k2, k3)) ** max(orders)
    assert _permutation_spread(orders, (k1, k2, k3)) <= max(1e-12, 1e-13 * cond)


def test_window_vanishing_with_oracle():
    for orders, ks in (((2, 2, 2), (1, 1, 3)), ((1, 1, 0), (1, 2, 0.5)), ((0, 2, 2), (0.5, 2.5, 1.0))):
        pv = cf.triple_integral(*orders, *ks)
        assert pv.is_exact and pv.pi_multiple() == 0
        assert abs(bessel_product_integral(orders, ks).value) < 1e-6


@pytest.mark.parametrize("orders", [(1, 1, 1), (0, 1, 2), (0, 0, 3), (3, 0, 0)])
def test_formula_inapplicable(orders):
    with pytest.raises(FormulaInapplicable, match="formula inapplicable"):
        cf.triple_integral(*orders, 1, 1, 1)


@pytest.mark.parametrize("bad", [0, -1, math.inf, math.nan, Fraction(-1, 2)])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        cf.integral_one_bessel_line(0, bad)
    with pytest.raises(DomainError):
        cf.integral_two_bessel_halfline(1, 1, bad)
    with pytest.raises(DomainError):
        cf.triple_integral(1, 1, 2, 1, bad, 1)
    with pytest.raises(DomainError):
        cf.kinematics(bad, 1, 1)


def test_negative_order_rejected():
    with pytest.raises(DomainError):
        cf.orthogonality_value(-1, 0)


def test_pi_value_contract():
    pv = cf.integral_two_bessel_halfline(2, Fraction(1), Fraction(3))
    assert pv.is_exact
    assert math.isclose(pv.value, float(pv.coefficient) * math.pi * 3 ** -3, rel_tol=1e-15)
    assert not cf.integral_two_bessel_halfline(2, 1.0, 3.0).is_exact
    with pytest.raises(TypeError):
        cf.PiValue(0.5, {}, {}, True)
