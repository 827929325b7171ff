"""Verification sweeps behind ``besselint verify``.

Every check yields a flat dict record; ``passed`` is the verdict.  The grids
are deterministic so repeated runs print identical output.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import closed_form as cf
from .bessel import j_from_integral_rep, sph_bessel
from .exact import clebsch_gordan, legendre_eval, legendre_inner, sqrt_sum, wigner_6j
from .identities import legendre_from_bessel, product_expansion_sum, product_inverse
from .oracle import bessel_product_integral, integrate_full_line, integrate_oscillatory_tail
from .reduce4 import (PAIRINGS, j1_sq_j2_sq_integral, plan_reduction, quad_bessel_integral,
                      quad_bessel_numeric)

TRIPLE_MOMENTA = ((1, 1, 1.5), (1, 2, 2.5), (0.7, 1.1, 1.3))

Record = dict


def _rec(suite, check, passed, **extra) -> Record:
    out = {"suite": suite, "check": check, "passed": bool(passed)}
    out.update(extra)
    return out


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def check_algebra(tol=None) -> Iterator[Record]:
    # unitarity, exact
    for L1, L2 in itertools.product(range(5), repeat=2):
        ok = True
        for L, Lp in itertools.product(range(abs(L1 - L2), L1 + L2 + 1), repeat=2):
            for M in range(-min(L, Lp), min(L, Lp) + 1):
                terms = [clebsch_gordan(L1, L2, M1, M - M1, L, M)
                         * clebsch_gordan(L1, L2, M1, M - M1, Lp, M)
                         for M1 in range(-L1, L1 + 1) if abs(M - M1) <= L2]
                if sqrt_sum(terms) != ({1: Fraction(1)} if L == Lp else {}):
                    ok = False
        yield _rec("algebra", "cg_unitarity", ok, L1=L1, L2=L2)
    ok = all(legendre_inner(L, Lp) == (Fraction(2, 2 * L + 1) if L == Lp else 0)
             for L, Lp in itertools.product(range(11), repeat=2))
    yield _rec("algebra", "legendre_orthogonality", ok)
    ok = all(not clebsch_gordan(a, b, 0, 0, c, 0)
             for a, b, c in itertools.product(range(11), repeat=3) if (a + b + c) % 2)
    yield _rec("algebra", "cg_parity_zero", ok)
    ok = all(wigner_6j(a, b, c, 0, c, b).square()
             == (Fraction(1, (2 * b + 1) * (2 * c + 1)) if cf.exact.triangle(a, b, c) else 0)
             for a, b, c in itertools.product(range(5), repeat=3))
    yield _rec("algebra", "6j_zero_reduction", ok)


def check_bessel(tol=None) -> Iterator[Record]:
    worst = 0.0
    for L in range(11):
        for x in np.linspace(-50, 50, 41):
            worst = max(worst, abs(j_from_integral_rep(L, x) - sph_bessel(L, x)))
    yield _rec("bessel", "integral_representation", worst <= 1e-10, error=worst, tol=1e-10)
    worst = 0.0
    x = np.linspace(0.5, 50, 200)
    for L in range(1, 16):
        res = sph_bessel(L - 1, x) + sph_bessel(L + 1, x) - (2 * L + 1) / x * sph_bessel(L, x)
        worst = max(worst, float(np.max(np.abs(res))))
    yield _rec("bessel", "recurrence_residual", worst <= 1e-11, error=worst, tol=1e-11)
    ok = all(sph_bessel(L, -x) == (-1) ** L * sph_bessel(L, x)
             for L in range(11) for x in (0.3, 2.0, 17.5))
    yield _rec("bessel", "parity", ok)
    yield _rec("bessel", "origin", all(sph_bessel(L, 0.0) == (L == 0) for L in range(11)))


def triple_oracle_grid(tol=1e-6, orders_max=4, momenta=TRIPLE_MOMENTA) -> Iterator[Record]:
    for L1, L2, L3 in itertools.product(range(orders_max + 1), repeat=3):
        if not cf.coupling_nonzero(L1, L2, L3):
            continue
        for ks in momenta:
            closed = cf.triple_integral(L1, L2, L3, *ks).value
            rep = bessel_product_integral((L1, L2, L3), ks)
            err = _rel(closed, rep.value)
            yield _rec("closed-form", "triple_vs_oracle", err <= tol, L=[L1, L2, L3],
                       k=list(ks), closed=closed, oracle=rep.value, error=err, tol=tol,
                       error_estimate=rep.error_estimate)


def check_closed_form(tol=None) -> Iterator[Record]:
    yield from triple_oracle_grid(tol or 1e-6)
    for (L1, L2, L3), ks in (((2, 2, 2), (1, 1, 3)), ((1, 1, 0), (1, 2, 0.5))):
        closed = cf.triple_integral(L1, L2, L3, *ks)
        rep = bessel_product_integral((L1, L2, L3), ks)
        ok = closed.pi_multiple() == 0 and abs(rep.value) < 1e-6
        yield _rec("closed-form", "window_vanishing", ok, L=[L1, L2, L3], k=list(ks),
                   oracle=rep.value)
    t = tol or 1e-7
    for L, k in itertools.product((0, 1, 2, 4), (1, 2)):
        closed = cf.integral_one_bessel_line(L, k).value
        rep = integrate_full_line(lambda r: sph_bessel(L, k * r), period_hint=math.pi / k,
                                  frequencies=(k,))
        err = abs(closed - rep.value)
        yield _rec("closed-form", "one_function", err <= t, L=L, k=k, error=err, tol=t)
    t = tol or 1e-8
    for L, (k1, k2) in itertools.product(range(5), ((0.5, 3.0), (1.2, 1.7), (2.5, 0.9))):
        closed = cf.integral_two_bessel_halfline(L, k1, k2).value
        rep = bessel_product_integral((L, L), (k1, k2), power=0)
        err = _rel(closed, rep.value)
        yield _rec("closed-form", "two_halfline", err <= t, L=L, k=[k1, k2], error=err, tol=t)
    t = tol or 1e-6
    for L, Lp in itertools.product(range(5), repeat=2):
        closed = cf.orthogonality_value(L, Lp).value
        rep = integrate_full_line(lambda x: sph_bessel(L, x) * sph_bessel(Lp, x),
                                  frequencies=(0, 2))
        err = abs(closed - rep.value)
        yield _rec("closed-form", "orthogonality", err <= t, L=[L, Lp], error=err, tol=t)
    t = tol or 1e-7
    for (L, l), y in itertools.product(((0, 0), (1, 1), (2, 1), (2, 2)), (0.0, 0.7, 2.4)):
        closed = cf.shifted_cross_integral(L, l, y)
        rep = integrate_full_line(lambda x: sph_bessel(L, x - y) * sph_bessel(l, x),
                                  frequencies=(0, 2))
        err = abs(closed - rep.value)
        yield _rec("closed-form", "shifted", err <= t, L=L, l=l, y=y, error=err, tol=t)


def check_identities(tol=None) -> Iterator[Record]:
    t = tol or 1e-6
    for L, sign, (k1, k2, r) in itertools.product(
            range(3), (1, -1), ((0.3, 1.0, 3.0), (0.8, 0.5, 2.2), (1.0, 1.0, 1.5))):
        target = sph_bessel(L, (k1 + sign * k2) * r)
        val, rep50 = product_expansion_sum(L, k1, k2, r, sign, 50)
        _, rep10 = product_expansion_sum(L, k1, k2, r, sign, 10)
        err = abs(val - target)
        ok = err < t and rep50.residual_estimate < rep10.residual_estimate
        yield _rec("identities", "product_expansion", ok, L=L, sign=sign, k=[k1, k2], r=r,
                   error=err, tol=t)
    t = tol or 1e-10
    for lam, (k1, k2, r) in itertools.product(range(4), ((1, 2, 1.3), (0.6, 0.6, 3.0))):
        err = abs(product_inverse(lam, k1, k2, r) - sph_bessel(lam, k1 * r) * sph_bessel(lam, k2 * r))
        yield _rec("identities", "product_inverse", err <= t, lam=lam, k=[k1, k2], r=r,
                   error=err, tol=t)
    t = tol or 1e-6
    for L, x in itertools.product(range(4), (-0.5, 0.0, 0.5)):
        err = abs(legendre_from_bessel(L, x) - legendre_eval(L, x))
        yield _rec("identities", "legendre_representation", err <= t, L=L, x=x, error=err, tol=t)


def check_quad(tol=None) -> Iterator[Record]:
    exact = j1_sq_j2_sq_integral(1)
    yield _rec("quad", "worked_example_exact", exact.coefficient == Fraction(23, 420),
               coefficient=str(exact.coefficient))
    t = tol or 1e-10
    numeric = quad_bessel_numeric((1, 1, 2, 2), (1.0, 1.0, 1.0, 1.0)).value
    err = _rel(numeric, 23 * math.pi / 420)
    yield _rec("quad", "worked_example_numeric", err <= t, error=err, tol=t)
    exact_cli = quad_bessel_integral((1, 1, 2, 2), (1, 1, 1, 1))
    yield _rec("quad", "exact_path", exact_cli.pi_multiple() == Fraction(23, 420))
    ks = (1.0, 1.5, 1.2, 0.8)
    values = [quad_bessel_numeric((0, 2, 0, 2), ks, plan_reduction((0, 2, 0, 2), ks, pairing=p)).value
              for p in PAIRINGS]
    spread = max(_rel(v, values[0]) for v in values)
    yield _rec("quad", "pairing_independence", spread <= t, error=spread, tol=t)
    val = quad_bessel_numeric((0, 0, 0, 0), (1.0, 1.0, 1.0, 1.0)).value
    rep = integrate_oscillatory_tail(lambda x: np.sin(x) ** 4 / np.where(x == 0, 1, x) ** 2,
                                     0.0, math.pi / 4, frequencies=(0, 2, 4))
    err = max(_rel(val, math.pi / 4), _rel(rep.value, math.pi / 4))
    yield _rec("quad", "sinc4", err <= t, error=err, tol=t)


SUITES: dict[str, Callable[..., Iterator[Record]]] = {
    "algebra": check_algebra,
    "bessel": check_bessel,
    "closed-form": check_closed_form,
    "identities": check_identities,
    "quad": check_quad,
}


def run(suite: str, tol=None) -> Iterator[Record]:
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        yield from SUITES[name](tol)
