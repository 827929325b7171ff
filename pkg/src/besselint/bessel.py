"""Spherical Bessel functions of the first kind for real arguments.

Strategy per argument:

* ``|x| < 0.5``: power series (no sin/cos cancellation near the origin);
* order 0..2: closed trigonometric forms;
* higher orders: upward recurrence where ``|x| >= L``, Miller's downward
  recurrence where ``|x| < L`` (upward recurrence loses everything there).

Negative arguments are reduced with ``j_L(-x) = (-1)**L j_L(x)``.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .exact import legendre_eval

SERIES_RADIUS = 0.5
_RESCALE = 1e200


def _check_order(L):
    if int(L) != L or L < 0:
        raise DomainError(f"Bessel order must be a nonnegative integer, got {L}")
    return int(L)


def _series(L: int, x: np.ndarray) -> np.ndarray:
    # j_L(x) = x^L/(2L+1)!! * sum_k (-x^2/2)^k / (k! (2L+3)(2L+5)...(2L+2k+1))
    lead = x ** L / math.prod(range(1, 2 * L + 2, 2))
    z = -0.5 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 60):
        term = term * z / (k * (2 * L + 2 * k + 1))
        total = total + term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total)):
            break
    return lead * total


def _low_order(L: int, x: np.ndarray) -> np.ndarray:
    s, c = np.sin(x), np.cos(x)
    if L == 0:
        return s / x
    if L == 1:
        return (s / x - c) / x
    return ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x) / x


def _upward(L: int, x: np.ndarray) -> np.ndarray:
    prev, cur = _low_order(0, x), _low_order(1, x)
    for n in range(1, L):
        prev, cur = cur, (2 * n + 1) / x * cur - prev
    return cur


def _miller(L: int, x: np.ndarray) -> np.ndarray:
    start = L + 20 + int(math.sqrt(40 * L))
    above = np.zeros_like(x)
    cur = np.full_like(x, 1e-300)
    want = np.zeros_like(x)
    for n in range(start, 0, -1):
        # j_{n-1} = (2n+1)/x j_n - j_{n+1}
        above, cur = cur, (2 * n + 1) / x * cur - above
        scale = np.where(np.abs(cur) > _RESCALE, 1.0 / _RESCALE, 1.0)
        cur, above, want = cur * scale, above * scale, want * scale
        if n - 1 == L:
            want = cur.copy()
    # cur ~ j0, above ~ j1 (unnormalised); normalise against whichever true
    # value is larger so zeros of j0 or j1 do no harm
    t0, t1 = _low_order(0, x), _low_order(1, x)
    use0 = np.abs(t0) >= np.abs(t1)
    ratio = np.where(use0, t0 / np.where(use0, cur, 1.0), t1 / np.where(use0, 1.0, above))
    return want * ratio


def sph_bessel(L: int, x):
    """j_L(x) for scalar or array ``x``; returns the same shape."""
    L = _check_order(L)
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("sph_bessel argument must be finite")
    ax = np.abs(arr)
    out = np.empty_like(ax)

    small = ax < SERIES_RADIUS
    if np.any(small):
        out[small] = _series(L, ax[small])
    rest = ~small
    if np.any(rest):
        xr = ax[rest]
        if L <= 2:
            out[rest] = _low_order(L, xr)
        else:
            vals = np.empty_like(xr)
            up = xr >= L
            if np.any(up):
                vals[up] = _upward(L, xr[up])
            if np.any(~up):
                vals[~up] = _miller(L, xr[~up])
            out[rest] = vals
    if L % 2:
        out = np.where(arr < 0, -out, out)
    return float(out) if out.ndim == 0 else out


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(96)


def j_from_integral_rep(L: int, x: float, *, with_residual: bool = False):
    """j_L(x) from ``(-i)^L / 2 * int_{-1}^{1} P_L(c) exp(i x c) dc``.

    A fixed 96-point Gauss-Legendre rule integrates the right-hand side; it is
    exact to rounding for L <= 10 and |x| <= 50. With ``with_residual`` the
    imaginary part (zero in exact arithmetic) is returned as well.
    """
    L = _check_order(L)
    c = _GL_NODES
    integrand = legendre_eval(L, c) * np.exp(1j * x * c)
    value = (-1j) ** L * 0.5 * np.dot(_GL_WEIGHTS, integrand)
    if with_residual:
        return float(value.real), float(value.imag)
    return float(value.real)
