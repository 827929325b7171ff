import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from besselint.errors import DomainError, NoAdmissibleReduction
from besselint.oracle import bessel_product_integral
from besselint.reduce4 import (PAIRINGS, admissible_bridges, j1_sq_j2_sq_integral, plan_reduction,
                               quad_bessel_integral, quad_bessel_numeric)


def test_plan_examples():
    plan = plan_reduction((1, 1, 2, 2), (1, 1, 1, 1))
    assert plan.pairing == ((0, 1), (2, 3)) and plan.bridge_L == 0
    assert plan_reduction((0, 0, 0, 0), (1, 1, 1, 1)).bridge_L == 0
    with pytest.raises(NoAdmissibleReduction, match="no admissible reduction"):
        plan_reduction((0, 0, 0, 1), (1, 1, 1, 1))


def test_plan_forcing():
    plan = plan_reduction((0, 2, 0, 2), (1, 1, 1, 1), pairing=((0, 1), (2, 3)))
    assert plan.bridge_L == 2
    with pytest.raises(NoAdmissibleReduction):
        plan_reduction((0, 2, 0, 2), (1, 1, 1, 1), pairing=((0, 1), (2, 3)), bridge_L=0)


def test_plan_window_and_bridges():
    for orders in [(1, 1, 2, 2), (0, 2, 0, 2), (1, 2, 3, 4), (3, 3, 1, 1)]:
        for p in PAIRINGS:
            for L in admissible_bridges(orders, p):
                (a, b), (c, d) = p
                assert (orders[a] + orders[b] + L) % 2 == 0 and (orders[c] + orders[d] + L) % 2 == 0
    plan = plan_reduction((0, 0, 0, 0), (1, 3, 1, 1))
    assert plan.empty


def test_worked_example_exact():
    pv = j1_sq_j2_sq_integral(1)
    assert pv.coefficient == Fraction(23, 420) and dict(pv.k_monomial) == {"k": -3}
    assert pv.is_exact
    assert j1_sq_j2_sq_integral(2).pi_multiple() == Fraction(23, 3360)
    with pytest.raises(DomainError):
        j1_sq_j2_sq_integral(0)


def test_quad_examples():
    pv = quad_bessel_integral((1, 1, 2, 2), (1, 1, 1, 1))
    assert pv.is_exact and pv.pi_multiple() == Fraction(23, 420)
    assert abs(pv.value - 23 * math.pi / 420) < 1e-15
    assert quad_bessel_integral((0, 0, 0, 0), (1, 1, 1, 1)).pi_multiple() == Fraction(1, 4)
    assert quad_bessel_integral((1, 1, 2, 2), (2, 2, 2, 2)).pi_multiple() == Fraction(23, 3360)


def test_numeric_path_matches_exact():
    num = quad_bessel_numeric((1, 1, 2, 2), (1.0, 1.0, 1.0, 1.0)).value
    assert abs(num - 23 * math.pi / 420) / (23 * math.pi / 420) < 1e-10


def test_exact_path_general_momenta():
    ks = (Fraction(1), Fraction(3, 2), Fraction(6, 5), Fraction(4, 5))
    exact = quad_bessel_integral((2, 2, 1, 1), ks)
    assert exact.is_exact
    num = quad_bessel_numeric((2, 2, 1, 1), [float(k) for k in ks]).value
    assert abs(exact.value - num) <= 1e-12 * abs(num)


@pytest.mark.parametrize("orders", [(0, 2, 0, 2), (1, 1, 2, 2), (1, 2, 1, 2), (2, 2, 2, 2), (1, 3, 2, 2)])
def test_pairing_and_bridge_independence(orders):
    ks = (1.0, 1.5, 1.2, 0.8)
    values = []
    for p in PAIRINGS:
        for L in admissible_bridges(orders, p):
            plan = plan_reduction(orders, ks, pairing=p, bridge_L=L)
            values.append(quad_bessel_numeric(orders, ks, plan).value)
    assert len(values) >= 2
    assert max(abs(v - values[0]) for v in values) <= 1e-10 * abs(values[0])


@given(st.floats(0.5, 2), st.floats(0.5, 2), st.floats(0.5, 2), st.floats(0.5, 2))
def test_pairing_independence_random(k1, k2, k3, k4):
    ks = (k1, k2, k3, k4)
    values = [quad_bessel_numeric((0, 2, 0, 2), ks, plan_reduction((0, 2, 0, 2), ks, pairing=p)).value
              for p in PAIRINGS]
    scale = max(abs(v) for v in values)
    assert max(values) - min(values) <= 1e-9 * scale + 1e-14


def test_against_direct_oracle():
    ks = (1.0, 1.5, 1.2, 0.8)
    for orders in [(0, 2, 0, 2), (1, 1, 2, 2), (2, 2, 2, 2)]:
        closed = quad_bessel_integral(orders, ks).value
        rep = bessel_product_integral(orders, ks)
        assert abs(closed - rep.value) <= 1e-7 * abs(closed)


def test_window_vanishing():
    ks = (1.0, 1.2, 3.0, 0.4)  # windows [0.2, 2.2] and [2.6, 3.4] do not overlap
    pv = quad_bessel_integral((0, 0, 1, 1), ks)
    assert pv.is_exact and pv.pi_multiple() == 0
    assert abs(bessel_product_integral((0, 0, 1, 1), ks).value) < 1e-6


def test_odd_parity_rejected():
    with pytest.raises(NoAdmissibleReduction, match="oracle-only"):
        quad_bessel_integral((1, 0, 0, 0), (1, 1, 1, 1))
