"""Closed forms for infinite integrals over one, two and three spherical
Bessel functions.

Results come back as :class:`PiValue` objects: ``coefficient * pi * prod(k**e)``.
When every momentum is supplied as an ``int`` or ``Fraction`` and the
formula involves no square roots, the coefficient is an exact ``Fraction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational, Real
from typing import Mapping, Union

import numpy as np

from . import exact
from .bessel import sph_bessel
from .errors import DomainError, FormulaInapplicable
from .exact import SqrtRational, clebsch_gordan, legendre, legendre_eval, wigner_6j

Momentum = Union[int, Fraction, float]

EDGE_TOL = 1e-12


def as_momentum(k, name: str = "k") -> Momentum:
    """Validate a momentum; ints become Fractions, floats stay floats."""
    if isinstance(k, bool):
        raise DomainError(f"{name} must be a number")
    if isinstance(k, Rational):
        k = Fraction(k)
    elif isinstance(k, Real):
        k = float(k)
        if not math.isfinite(k):
            raise DomainError(f"{name} must be finite")
    else:
        raise DomainError(f"{name} must be a real number, got {k!r}")
    if k <= 0:
        raise DomainError(f"{name} must be positive, got {k}")
    return k


def _all_exact(*values) -> bool:
    return all(isinstance(v, Fraction) for v in values)


def _check_order(L, name="L") -> int:
    if isinstance(L, bool) or int(L) != L or L < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {L!r}")
    return int(L)


@dataclass(frozen=True)
class PiValue:
    """``coefficient * pi * prod(momenta[s] ** e for s, e in k_monomial)``."""

    coefficient: Union[Fraction, float]
    k_monomial: Mapping[str, int] = field(default_factory=dict)
    momenta: Mapping[str, Momentum] = field(default_factory=dict)
    is_exact: bool = True

    def __post_init__(self):
        if self.is_exact and not isinstance(self.coefficient, Fraction):
            raise TypeError("exact PiValue needs a Fraction coefficient")
        missing = set(self.k_monomial) - set(self.momenta)
        if missing:
            raise ValueError(f"unbound momentum symbols {sorted(missing)}")

    def pi_multiple(self) -> Union[Fraction, float]:
        """The value divided by pi, folded into a single number."""
        out = self.coefficient
        for sym, e in self.k_monomial.items():
            k = self.momenta[sym]
            out = out * (k ** e if isinstance(k, Fraction) else float(k) ** e)
        return out

    @property
    def value(self) -> float:
        return float(self.pi_multiple()) * math.pi

    def __float__(self):
        return self.value


def _pi_value(coefficient, monomial, momenta, exact_ok):
    monomial = {s: e for s, e in monomial.items() if e}
    if exact_ok:
        return PiValue(Fraction(coefficient), monomial, dict(momenta), True)
    if isinstance(coefficient, Fraction) and coefficient == 0:
        # exact zero survives any float input
        return PiValue(Fraction(0), monomial, dict(momenta), True)
    return PiValue(float(coefficient), monomial, dict(momenta), False)


# --- one function -------------------------------------------------------------

def integral_one_bessel_line(L: int, k: Momentum) -> PiValue:
    """Integral of j_L(k r) over the whole real line: (-i)^L pi P_L(0) / k.

    Odd orders give zero; for even L the phase and P_L(0) share a sign, so
    the result is pi (L-1)!! / (L!! k).
    """
    L = _check_order(L)
    k = as_momentum(k)
    if L % 2:
        coef = Fraction(0)
    else:
        coef = (-1) ** (L // 2) * exact.legendre_at_zero(L)
    return _pi_value(coef, {"k": -1}, {"k": k}, _all_exact(k))


def integral_j0_halfline(k: Momentum) -> PiValue:
    k = as_momentum(k)
    return _pi_value(Fraction(1, 2), {"k": -1}, {"k": k}, _all_exact(k))


# --- two functions ------------------------------------------------------------

def orthogonality_value(L: int, Lp: int) -> PiValue:
    L, Lp = _check_order(L), _check_order(Lp, "Lp")
    coef = Fraction(1, 2 * L + 1) if L == Lp else Fraction(0)
    return PiValue(coef)


def integral_two_bessel_halfline(L: int, k1: Momentum, k2: Momentum) -> PiValue:
    """Integral over [0, inf) of j_L(k1 r) j_L(k2 r): pi/(2(2L+1)) k<^L / k>^(L+1)."""
    L = _check_order(L)
    k1, k2 = as_momentum(k1, "k1"), as_momentum(k2, "k2")
    less, greater = ("k1", "k2") if k1 <= k2 else ("k2", "k1")
    monomial = {less: L, greater: -(L + 1)} if k1 != k2 else {"k1": -1}
    return _pi_value(Fraction(1, 2 * (2 * L + 1)), monomial, {"k1": k1, "k2": k2},
                     _all_exact(k1, k2))


def shifted_cross_integral(L: int, l: int, y: float) -> float:
    """Integral over the real line of j_L(x - y) j_l(x).

    A finite sum over L2 in |L - l| .. L + l with L + l + L2 even; each phase
    i^(l - L2 - L) is then a real sign.
    """
    L, l = _check_order(L), _check_order(l, "l")
    total = 0.0
    for L2 in range(abs(L - l), L + l + 1, 2):
        phase = (-1) ** ((l - L2 - L) // 2)
        weight = clebsch_gordan(L, l, 0, 0, L2, 0).square()
        total += phase * float(weight) * sph_bessel(L2, y)
    return math.pi * total


# --- three functions ----------------------------------------------------------

@dataclass(frozen=True)
class TripleKinematics:
    k1: Momentum
    k2: Momentum
    k3: Momentum
    delta: Union[Fraction, float]
    beta: Fraction
    k_less: Momentum
    k_greater: Momentum


def window_factor(delta, edge_tol: float = EDGE_TOL) -> Fraction:
    """1 strictly inside (-1, 1), 1/2 on the edges, 0 outside."""
    if isinstance(delta, Fraction):
        near_edge = abs(delta) == 1
    else:
        near_edge = abs(abs(delta) - 1.0) <= edge_tol
    if near_edge:
        return Fraction(1, 2)
    return Fraction(1) if -1 < delta < 1 else Fraction(0)


def kinematics(k1: Momentum, k2: Momentum, k3: Momentum,
               edge_tol: float = EDGE_TOL) -> TripleKinematics:
    k1, k2, k3 = as_momentum(k1, "k1"), as_momentum(k2, "k2"), as_momentum(k3, "k3")
    if _all_exact(k1, k2, k3):
        delta = (k1 * k1 + k2 * k2 - k3 * k3) / (2 * k1 * k2)
    else:
        k1f, k2f, k3f = float(k1), float(k2), float(k3)
        delta = (k1f * k1f + k2f * k2f - k3f * k3f) / (2 * k1f * k2f)
    return TripleKinematics(k1, k2, k3, delta, window_factor(delta, edge_tol),
                            min(k1, k2), max(k1, k2))


def coupling_nonzero(L1: int, L2: int, L3: int) -> bool:
    """<L1 L2 0 0|L3 0> != 0: triangle rule plus even L1 + L2 + L3."""
    return exact.triangle(L1, L2, L3) and (L1 + L2 + L3) % 2 == 0


@lru_cache(maxsize=None)
def triple_terms(L1: int, L2: int, L3: int) -> tuple[tuple[int, int, SqrtRational], ...]:
    """Exact (L, l, weight) terms of the three-function double sum.

    ``weight = sqrt(C(2 L3, 2 L)) <L1 (L3-L) 0 0|l 0> <L2 L 0 0|l 0>
    {L1 L2 L3; L L3-L l} / <L1 L2 0 0|L3 0>``, kept as a SqrtRational.
    """
    norm = clebsch_gordan(L1, L2, 0, 0, L3, 0)
    if not norm:
        raise FormulaInapplicable(
            f"formula inapplicable: <{L1} {L2} 0 0|{L3} 0> = 0 fixes only the weighted integral")
    terms = []
    for L in range(L3 + 1):
        root = SqrtRational.sqrt_of(exact.binomial(2 * L3, 2 * L))
        for l in range(max(abs(L1 - (L3 - L)), abs(L2 - L)), min(L1 + L3 - L, L2 + L) + 1):
            w = (root * clebsch_gordan(L1, L3 - L, 0, 0, l, 0)
                 * clebsch_gordan(L2, L, 0, 0, l, 0)
                 * wigner_6j(L1, L2, L3, L, L3 - L, l))
            if w:
                terms.append((L, l, w / norm))
    return tuple(terms)


def _triple_prefactor(L1, L2, L3) -> int:
    total = L1 + L2 + L3
    assert total % 2 == 0, "phase i^(L1+L2+L3) must be real"
    return (-1) ** (total // 2) * (2 * L3 + 1)


def triple_integral_array(L1: int, L2: int, L3: int, k1, k2, k3,
                          edge_tol: float = EDGE_TOL) -> np.ndarray:
    """Vectorised float evaluation of the three-function integral.

    The momenta broadcast against each other.  The l-sum cancels badly when
    ``k3`` is much smaller than ``k1`` and ``k2``; callers sweeping a small
    momentum should put it in the first or second slot.
    """
    terms = triple_terms(L1, L2, L3)
    k1, k2, k3 = np.broadcast_arrays(*(np.asarray(k, dtype=float) for k in (k1, k2, k3)))
    delta = (k1 * k1 + k2 * k2 - k3 * k3) / (2 * k1 * k2)
    edge = np.abs(np.abs(delta) - 1.0) <= edge_tol
    beta = np.where(edge, 0.5, np.where(np.abs(delta) < 1, 1.0, 0.0))
    inner = np.zeros_like(delta)
    ratio = k2 / k1
    for L, l, w in terms:
        inner = inner + float(w) * ratio ** L * legendre_eval(l, np.clip(delta, -1, 1))
    pref = _triple_prefactor(L1, L2, L3)
    return (math.pi * beta / (4 * k1 * k2 * k3) * pref * (k1 / k3) ** L3 * inner)


def triple_integral(L1: int, L2: int, L3: int, k1: Momentum, k2: Momentum, k3: Momentum,
                    edge_tol: float = EDGE_TOL) -> PiValue:
    """Integral over [0, inf) of r^2 j_L1(k1 r) j_L2(k2 r) j_L3(k3 r).

    Raises FormulaInapplicable when <L1 L2 0 0|L3 0> vanishes, since the
    closed form only determines the integral multiplied by that coefficient.
    """
    L1, L2, L3 = (_check_order(v, n) for v, n in ((L1, "L1"), (L2, "L2"), (L3, "L3")))
    kin = kinematics(k1, k2, k3, edge_tol)
    terms = triple_terms(L1, L2, L3)
    momenta = {"k1": kin.k1, "k2": kin.k2, "k3": kin.k3}
    monomial = {"k1": -1, "k2": -1, "k3": -1}
    if kin.beta == 0:
        return _pi_value(Fraction(0), monomial, momenta, True)

    k1f, k2f, k3f = float(kin.k1), float(kin.k2), float(kin.k3)
    delta = float(kin.delta)
    inner = math.fsum(float(w) * (k2f / k1f) ** L * legendre_eval(l, delta)
                      for L, l, w in terms)
    coef = (float(kin.beta) / 4 * _triple_prefactor(L1, L2, L3)
            * (k1f / k3f) ** L3 * inner)
    return _pi_value(coef, monomial, momenta, False)


def triple_integral_special(lam: int, k1: Momentum, k2: Momentum, k3: Momentum,
                            edge_tol: float = EDGE_TOL) -> PiValue:
    """Integral of r^2 j_lam(k1 r) j_lam(k2 r) j_0(k3 r): pi beta P_lam(Delta) / (4 k1 k2 k3)."""
    lam = _check_order(lam, "lambda")
    kin = kinematics(k1, k2, k3, edge_tol)
    momenta = {"k1": kin.k1, "k2": kin.k2, "k3": kin.k3}
    monomial = {"k1": -1, "k2": -1, "k3": -1}
    if kin.beta == 0:
        return _pi_value(Fraction(0), monomial, momenta, True)
    if isinstance(kin.delta, Fraction):
        return _pi_value(kin.beta * legendre(lam)(kin.delta) / 4, monomial, momenta, True)
    coef = float(kin.beta) * legendre_eval(lam, max(-1.0, min(1.0, kin.delta))) / 4
    return _pi_value(coef, monomial, momenta, False)
