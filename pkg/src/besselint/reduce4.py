"""Four spherical Bessel functions via the closure relation.

Inserting the closure relation for ``j_L(k r)`` splits

    int r^2 j_L1(k1 r) j_L2(k2 r) j_L3(k3 r) j_L4(k4 r) dr

into ``(2/pi) int k^2 T_ab(k) T_cd(k) dk`` where each ``T`` is a closed-form
three-function integral.  ``T_ab`` vanishes outside ``[|ka - kb|, ka + kb]``,
so the outer integral runs over a finite window.  Any bridge order ``L``
compatible with both pairs gives the same answer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .closed_form import (PiValue, _all_exact, _check_order, as_momentum, coupling_nonzero,
                          triple_integral_array)
from .errors import NoAdmissibleReduction
from .exact import legendre, poly_compose, poly_integrate, poly_mul
from .oracle import integrate_finite

PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


@dataclass(frozen=True)
class PairingPlan:
    pairing: tuple[tuple[int, int], tuple[int, int]]
    bridge_L: int
    window: tuple[float, float] | None

    @property
    def empty(self) -> bool:
        return self.window is None


def _window(ks, pairing):
    (a, b), (c, d) = pairing
    lo = max(abs(ks[a] - ks[b]), abs(ks[c] - ks[d]))
    hi = min(ks[a] + ks[b], ks[c] + ks[d])
    return (lo, hi) if lo < hi else None


def admissible_bridges(orders: Sequence[int], pairing) -> list[int]:
    (a, b), (c, d) = pairing
    top = min(orders[a] + orders[b], orders[c] + orders[d])
    return [L for L in range(top + 1)
            if coupling_nonzero(orders[a], orders[b], L)
            and coupling_nonzero(orders[c], orders[d], L)]


def plan_reduction(orders: Sequence[int], momenta: Sequence, *, pairing=None,
                   bridge_L: int | None = None) -> PairingPlan:
    """Pick a pairing and bridge order for the four-function reduction.

    Equal-order pairs (bridge 0) are preferred, then the smallest admissible
    bridge order.  ``pairing``/``bridge_L`` force a particular choice.
    """
    orders = [_check_order(L, f"L{i + 1}") for i, L in enumerate(orders)]
    ks = [as_momentum(k, f"k{i + 1}") for i, k in enumerate(momenta)]
    if len(orders) != 4 or len(ks) != 4:
        raise ValueError("need exactly four orders and four momenta")
    if sum(orders) % 2:
        raise NoAdmissibleReduction("no admissible reduction: odd total order (oracle-only)")

    candidates = [tuple(map(tuple, pairing))] if pairing is not None else list(PAIRINGS)
    best = None
    for p in candidates:
        bridges = admissible_bridges(orders, p)
        if bridge_L is not None:
            bridges = [L for L in bridges if L == bridge_L]
        if not bridges:
            continue
        key = (bridges[0], p)
        if best is None or key < best:
            best = key
    if best is None:
        raise NoAdmissibleReduction(
            f"no admissible reduction for orders {tuple(orders)} (oracle-only)")
    L, p = best
    return PairingPlan(p, L, _window(ks, p))


def _exact_equal_order(orders, ks, plan) -> Fraction:
    """Outer integral in closed rational form for bridge 0 and equal-order pairs.

    Then both factors reduce to ``pi beta P_lam(Delta(q)) / (4 ka kb q)``, so
    the whole integrand is a polynomial in ``q`` on the window.
    """
    (a, b), (c, d) = plan.pairing
    polys = []
    for x, y in ((a, b), (c, d)):
        # Delta(q) = (kx^2 + ky^2 - q^2) / (2 kx ky)
        den = 2 * ks[x] * ks[y]
        inner = [(ks[x] ** 2 + ks[y] ** 2) / den, Fraction(0), -1 / den]
        polys.append(poly_compose(legendre(orders[x]).coefficients, inner))
    lo, hi = plan.window
    integral = poly_integrate(poly_mul(*polys), lo, hi)
    return integral / (8 * ks[a] * ks[b] * ks[c] * ks[d])


def quad_bessel_numeric(orders: Sequence[int], momenta: Sequence, plan: PairingPlan | None = None,
                        rel_tol: float = 1e-12) -> PiValue:
    """Outer k integral by adaptive Gauss-Legendre (the numeric reduction path)."""
    plan = plan or plan_reduction(orders, momenta)
    names = {f"k{i + 1}": as_momentum(k, f"k{i + 1}") for i, k in enumerate(momenta)}
    if plan.empty:
        return PiValue(Fraction(0), {}, names, True)
    ks = [float(k) for k in names.values()]
    (a, b), (c, d) = plan.pairing
    L = plan.bridge_L

    # q goes in the first slot: with q in the third the l-sum cancels as q -> 0.
    # Nodes are interior points, so the edge value (endpoints only) is never used.
    def integrand(q):
        left = triple_integral_array(L, orders[a], orders[b], q, ks[a], ks[b], edge_tol=0.0)
        right = triple_integral_array(L, orders[c], orders[d], q, ks[c], ks[d], edge_tol=0.0)
        return (2 / math.pi) * q * q * left * right

    lo, hi = (float(v) for v in plan.window)
    report = integrate_finite(integrand, lo, hi, rel_tol=rel_tol)
    return PiValue(report.value / math.pi, {}, names, False)


def quad_bessel_integral(orders: Sequence[int], momenta: Sequence,
                         plan: PairingPlan | None = None) -> PiValue:
    """Integral over [0, inf) of r^2 times four spherical Bessel functions.

    Exact (rational multiple of pi) when bridge order 0 applies and every
    momentum is rational; otherwise the numeric reduction path.
    """
    plan = plan or plan_reduction(orders, momenta)
    ks = [as_momentum(k, f"k{i + 1}") for i, k in enumerate(momenta)]
    names = {f"k{i + 1}": k for i, k in enumerate(ks)}
    if plan.empty:
        return PiValue(Fraction(0), {}, names, True)
    (a, b), (c, d) = plan.pairing
    equal = orders[a] == orders[b] and orders[c] == orders[d]
    if plan.bridge_L == 0 and equal and _all_exact(*ks):
        return PiValue(_exact_equal_order(orders, ks, plan), {}, names, True)
    return quad_bessel_numeric(orders, momenta, plan)


def j1_sq_j2_sq_integral(k) -> PiValue:
    """r^2 j_1(kr)^2 j_2(kr)^2 integrated over [0, inf), done exactly.

    With q = k t the integral becomes ``pi / (8 k^3)`` times the integral
    over t in [0, 2] of ``P_1(u) P_2(u)`` with ``u = (2 - t^2) / 2``.
    """
    k = as_momentum(k)
    inner = [Fraction(1), Fraction(0), Fraction(-1, 2)]
    prod = poly_mul(poly_compose(legendre(1).coefficients, inner),
                    poly_compose(legendre(2).coefficients, inner))
    coef = poly_integrate(prod, 0, 2) / 8
    return PiValue(coef, {"k": -3}, {"k": k}, isinstance(k, Fraction))
