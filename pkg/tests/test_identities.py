import cmath
import math

import pytest
from hypothesis import given, strategies as st

from besselint.bessel import sph_bessel
from besselint.errors import DomainError
from besselint.exact import legendre_eval
from besselint.identities import (legendre_from_bessel, product_expansion_sum, product_inverse,
                                  rayleigh_partial_sum)


def test_rayleigh_examples():
    value, rep = rayleigh_partial_sum(1.0, 0.0, 0.3, 0)
    assert value == 1 + 0j
    value, _ = rayleigh_partial_sum(1, 1, 1.0, 30)
    assert abs(value - complex(math.cos(1), math.sin(1))) < 1e-12
    value, rep = rayleigh_partial_sum(2, 1.5, -0.4, 40)
    assert abs(value - cmath.exp(1j * 3 * -0.4)) < 1e-10
    assert rep.converged and rep.residual_estimate >= 0


@given(st.floats(0.1, 3), st.floats(0.1, 3), st.floats(-1, 1), st.integers(0, 30))
def test_rayleigh_conjugate(k, r, c, L_max):
    a, _ = rayleigh_partial_sum(k, r, c, L_max)
    b, _ = rayleigh_partial_sum(k, r, -c, L_max)
    assert abs(a - b.conjugate()) <= 1e-13 * max(1.0, abs(a))


def test_rayleigh_domain():
    with pytest.raises(DomainError):
        rayleigh_partial_sum(1, 1, 1.5, 3)


def test_product_expansion_examples():
    value, _ = product_expansion_sum(0, 0.8, 1e-30, 1.0, 1, 40)
    assert abs(value - sph_bessel(0, 0.8)) < 1e-10
    value, _ = product_expansion_sum(0, 0.5, 0.5, 1.0, 1, 40)
    assert abs(value - math.sin(1)) < 1e-8
    value, _ = product_expansion_sum(2, 1.0, 0.7, 2.0, -1, 50)
    assert abs(value - sph_bessel(2, 0.6)) < 1e-8


def test_product_expansion_parity_branch():
    # k1 < k2 with the minus sign gives j_L of a negative argument
    for L in range(4):
        value, _ = product_expansion_sum(L, 0.4, 0.9, 2.0, -1, 50)
        assert abs(value - (-1) ** L * sph_bessel(L, 1.0)) < 1e-10


@given(st.integers(0, 3), st.floats(0.3, 1), st.floats(0.3, 1), st.floats(0.2, 3),
       st.sampled_from([1, -1]))
def test_residual_decreases(L, k1, k2, r, sign):
    _, rep10 = product_expansion_sum(L, k1, k2, r, sign, 10)
    _, rep50 = product_expansion_sum(L, k1, k2, r, sign, 50)
    assert rep50.residual_estimate < rep10.residual_estimate
    assert not rep50.converged or rep50.residual_estimate <= 1e-12


@given(st.integers(0, 3), st.floats(0.3, 1), st.floats(0.3, 1), st.floats(0.2, 3),
       st.integers(0, 30))
def test_expansion_swap_symmetry(L, k1, k2, r, L_max):
    a, _ = product_expansion_sum(L, k1, k2, r, 1, L_max)
    b, _ = product_expansion_sum(L, k2, k1, r, 1, L_max)
    assert abs(a - b) <= 1e-14 * max(1.0, abs(a))


def test_legendre_from_bessel_examples():
    assert abs(legendre_from_bessel(0, 0.0) - 1) < 1e-9
    assert abs(legendre_from_bessel(1, 0.5) - 0.5) < 1e-6
    assert abs(legendre_from_bessel(3, -0.25) - legendre_eval(3, -0.25)) < 1e-6


@pytest.mark.parametrize("x", [1.0, -1.0, 1.2])
def test_legendre_from_bessel_domain(x):
    with pytest.raises(DomainError):
        legendre_from_bessel(1, x)


def test_product_inverse_examples():
    assert abs(product_inverse(0, 0.7, 1.9, 1e-12) - 1) < 1e-9
    assert abs(product_inverse(1, 1, 2, 1.3) - sph_bessel(1, 1.3) * sph_bessel(1, 2.6)) < 1e-10
    assert abs(product_inverse(2, 1, 1, 3) - sph_bessel(2, 3.0) ** 2) < 1e-10


@pytest.mark.parametrize("args", [(0, 0, 1, 1), (0, 1, -1, 1), (0, 1, 1, 0), (-1, 1, 1, 1)])
def test_product_inverse_domain(args):
    with pytest.raises(DomainError):
        product_inverse(*args)
