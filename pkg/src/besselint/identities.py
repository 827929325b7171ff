"""Series and integral representations involving spherical Bessel functions.

The infinite sums are truncated at ``L_max`` and returned together with a
:class:`TruncationReport`; no analytic error bound is attempted, the residual
is simply the largest term on the outermost shell that was summed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import sph_bessel
from .errors import DomainError
from .exact import clebsch_gordan, legendre_eval
from .oracle import integrate_finite, integrate_full_line


@dataclass(frozen=True)
class TruncationReport:
    n_max: int
    partial_value: float | complex
    residual_estimate: float
    converged: bool

    def __post_init__(self):
        if self.residual_estimate < 0:
            raise ValueError("residual_estimate must be nonnegative")


def _positive(name, v):
    v = float(v)
    if not (math.isfinite(v) and v > 0):
        raise DomainError(f"{name} must be positive and finite, got {v}")
    return v


def rayleigh_partial_sum(k: float, r: float, cos_theta: float, L_max: int,
                         tol: float = 1e-12) -> tuple[complex, TruncationReport]:
    """Partial plane-wave sum ``sum_{L<=L_max} i^L (2L+1) P_L(c) j_L(k r)``.

    Converges to ``exp(i k r c)``.
    """
    if not -1.0 <= cos_theta <= 1.0:
        raise DomainError(f"cos_theta must lie in [-1, 1], got {cos_theta}")
    if k < 0 or r < 0:
        raise DomainError("k and r must be nonnegative")
    kr = float(k) * float(r)
    total = 0j
    last = 0.0
    for L in range(L_max + 1):
        term = (1j ** L) * (2 * L + 1) * legendre_eval(L, cos_theta) * sph_bessel(L, kr)
        total += term
        last = abs(term)
    report = TruncationReport(L_max, total, last, last <= tol)
    return total, report


def _cg00_squared(L1, L2, L):
    return float(clebsch_gordan(L1, L2, 0, 0, L, 0).square())


def product_expansion_sum(L: int, k1: float, k2: float, r: float, sign: int = 1,
                          L_max: int = 40, tol: float = 1e-12) -> tuple[float, TruncationReport]:
    """Truncated expansion of ``j_L((k1 + sign*k2) r)`` in products
    ``j_L1(k1 r) j_L2(k2 r)``.

    Only pairs with |L1 - L2| <= L <= L1 + L2 and L1 + L2 + L even survive,
    so each phase ``i^(L1 + sign*L2 - L)`` is a real sign.  For ``sign=-1``
    and ``k1 < k2`` the target is ``(-1)^L j_L(|k1 - k2| r)`` by parity.
    """
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    if L < 0:
        raise DomainError("L must be nonnegative")
    k1, k2, r = _positive("k1", k1), _positive("k2", k2), _positive("r", r)
    j1 = [sph_bessel(n, k1 * r) for n in range(L_max + 1)]
    j2 = [sph_bessel(n, k2 * r) for n in range(L_max + 1)]
    total = 0.0
    shell = 0.0
    for L1 in range(L_max + 1):
        for L2 in range(abs(L1 - L), min(L1 + L, L_max) + 1, 2):
            phase = (-1) ** ((L1 + sign * L2 - L) // 2)
            weight = (2 * L1 + 1) * (2 * L2 + 1) / (2 * L + 1) * _cg00_squared(L1, L2, L)
            term = phase * weight * j1[L1] * j2[L2]
            total += term
            if max(L1, L2) == L_max:
                shell = max(shell, abs(term))
    return total, TruncationReport(L_max, total, shell, shell <= tol)


def legendre_from_bessel(L: int, x: float, rel_tol: float = 1e-10) -> float:
    """P_L(x) for -1 < x < 1 from ``(-i)^L / pi * int exp(i x y) j_L(y) dy``.

    Only the real part survives: ``cos(x y)`` for even L, ``sin(x y)`` for odd.
    The oscillatory integral is done by the oracle quadrature.
    """
    if not -1.0 < x < 1.0:
        raise DomainError(f"x must lie strictly inside (-1, 1), got {x}")
    if L < 0:
        raise DomainError("L must be nonnegative")
    trig = np.cos if L % 2 == 0 else np.sin
    # (-i)^L * i^(L % 2) is the real sign (-1)^(L // 2)
    sign = (-1) ** (L // 2)
    report = integrate_full_line(lambda y: trig(x * y) * sph_bessel(L, y), rel_tol,
                                 frequencies=(1 - abs(x), 1 + abs(x)))
    return sign * report.value / math.pi


def product_inverse(lam: int, k1: float, k2: float, r: float) -> float:
    """``j_lam(k1 r) j_lam(k2 r)`` rebuilt from its finite ``k3`` integral
    over ``[|k1 - k2|, k1 + k2]`` of ``k3 j_0(k3 r) P_lam(Delta(k3))``."""
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    k1, k2, r = _positive("k1", k1), _positive("k2", k2), _positive("r", r)

    def integrand(k3):
        delta = (k1 * k1 + k2 * k2 - k3 * k3) / (2 * k1 * k2)
        return k3 * sph_bessel(0, k3 * r) * legendre_eval(lam, delta)

    report = integrate_finite(integrand, abs(k1 - k2), k1 + k2, rel_tol=1e-13)
    return report.value / (2 * k1 * k2)
