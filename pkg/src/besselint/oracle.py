"""Independent numerical quadrature used to check every closed form.

Two tools live here:

* :func:`integrate_finite` - adaptive Gauss-Legendre on a bounded interval;
* :func:`integrate_oscillatory_tail` / :func:`integrate_full_line` - the
  conditionally convergent integrals over ``[a, inf)``.  The half-line is cut
  into panels of a half-period, each panel gets a fixed Gauss-Legendre rule,
  and the sequence of partial sums is extrapolated to its limit.

Two extrapolators are offered.  ``method="fit"`` (default) models the
remaining tail as ``sum_w [cos(w x) A_w(1/x) + sin(w x) B_w(1/x)]`` with
short polynomials ``A_w``, ``B_w`` over the beat frequencies ``w`` of the
integrand and solves for the limit by least squares (a generalized Richardson
extrapolation).  It copes with several incommensurate frequencies and with a
non-oscillating ``1/x**2`` component.  ``method="epsilon"`` runs Wynn's
epsilon algorithm on the partial sums and needs no frequency information, but
is only reliable when every tail component oscillates.

All integrands are called with numpy arrays and must be vectorised.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DivergenceError, DomainError, EvaluationError

Integrand = Callable[[np.ndarray], np.ndarray]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureReport:
    value: float
    error_estimate: float
    panels_used: int
    accelerated: bool = False
    terms_accelerated: int = 0

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be nonnegative")
        if self.panels_used < 1:
            raise ValueError("panels_used must be positive")


class _Rule:
    def __init__(self, n):
        self.nodes, self.weights = np.polynomial.legendre.leggauss(n)

    def panels(self, f: Integrand, a: np.ndarray, b: np.ndarray):
        """Integrals of f and |f| over each [a_i, b_i]."""
        half = 0.5 * (b - a)
        x = half[:, None] * self.nodes + (0.5 * (a + b))[:, None]
        y = np.asarray(f(x), dtype=float)
        if y.shape != x.shape:
            y = np.broadcast_to(y, x.shape)
        if not np.all(np.isfinite(y)):
            i, j = np.argwhere(~np.isfinite(y))[0]
            raise EvaluationError(f"integrand not finite at x={x[i, j]!r}", where=float(x[i, j]))
        return half * (y @ self.weights), half * (np.abs(y) @ self.weights)


_FINITE_RULE = _Rule(20)
_PANEL_RULE = _Rule(24)


def integrate_finite(f: Integrand, a: float, b: float, rel_tol: float = 1e-12,
                     abs_tol: float = 0.0, max_panels: int = 1 << 14) -> QuadratureReport:
    """Adaptive Gauss-Legendre quadrature of ``f`` over ``[a, b]``.

    A panel is accepted when its 20-point value and the sum over its two
    halves agree within ``rel_tol`` times the integral of ``|f|`` over the
    panel (or ``abs_tol``); otherwise it is bisected.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integrate_finite needs finite limits")
    if a > b:
        raise DomainError(f"integrate_finite needs a <= b, got [{a}, {b}]")
    if a == b:
        return QuadratureReport(0.0, 0.0, 1)

    rule = _FINITE_RULE
    whole, _ = rule.panels(f, np.array([a]), np.array([b]))
    pending = [(a, b, whole[0])]
    accepted = []
    err_total = 0.0
    panels = 1
    while pending:
        lo, hi, coarse = pending.pop()
        mid = 0.5 * (lo + hi)
        vals, mags = rule.panels(f, np.array([lo, mid]), np.array([mid, hi]))
        fine = vals[0] + vals[1]
        diff = abs(fine - coarse)
        tol = max(rel_tol * (mags[0] + mags[1]), abs_tol * (hi - lo) / (b - a),
                  4 * _EPS * (mags[0] + mags[1]))
        panels += 1
        if diff <= tol or panels >= max_panels or mid in (lo, hi):
            accepted.append((lo, fine))
            err_total += diff
        else:
            # push right first so the left half is refined first
            pending.append((mid, hi, vals[1]))
            pending.append((lo, mid, vals[0]))
    accepted.sort()
    value = math.fsum(v for _, v in accepted)
    return QuadratureReport(value, float(err_total), panels)


def beat_frequencies(wavenumbers: Iterable[float], ndigits: int = 12) -> tuple[float, ...]:
    """All distinct ``|sum(+-k_i)|`` for a product of oscillating factors."""
    ks = [float(k) for k in wavenumbers]
    if not ks:
        return (0.0,)
    freqs = set()
    for signs in itertools.product((1, -1), repeat=len(ks) - 1):
        w = ks[0] + sum(s * k for s, k in zip(signs, ks[1:]))
        freqs.add(round(abs(w), ndigits))
    return tuple(sorted(freqs))


def _fit_limit(x: np.ndarray, s: np.ndarray, freqs: Sequence[float], order: int) -> float:
    u = x[0] / x
    cols = [np.ones_like(x)]
    for w in freqs:
        for j in range(1, order + 1):
            p = u ** j
            if w == 0:
                cols.append(p)
            else:
                cols.append(np.cos(w * x) * p)
                cols.append(np.sin(w * x) * p)
    A = np.column_stack(cols)
    scale = np.abs(A).max(axis=0)
    scale[scale == 0] = 1.0
    coef, *_ = np.linalg.lstsq(A / scale, s, rcond=None)
    return float(coef[0] / scale[0])


def wynn_epsilon(partial_sums: Sequence[float], max_columns: int | None = None):
    """Wynn epsilon extrapolation of a sequence of partial sums.

    Returns ``(estimate, error)`` where the estimate is the last entry of the
    even column that changed least from its predecessor.
    """
    s = np.asarray(partial_sums, dtype=float)
    n = len(s)
    if n < 3:
        return float(s[-1]), float(abs(s[-1] - s[0])) if n > 1 else math.inf
    max_columns = n - 1 if max_columns is None else min(max_columns, n - 1)
    prev, cur = np.zeros(n + 1), s.copy()
    best, best_err = float(s[-1]), float(abs(s[-1] - s[-2]))
    last_even = float(s[-1])
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for k in range(1, max_columns + 1):
            nxt = prev[1:len(cur)] + 1.0 / np.diff(cur)
            prev, cur = cur, nxt
            if k % 2 == 0 and len(cur):
                est = cur[-1]
                if not np.isfinite(est):
                    break
                err = abs(est - last_even)
                if err < best_err:
                    best, best_err = float(est), float(err)
                last_even = est
    return best, best_err


def _panel_sums(f, a, h, n):
    edges = a + h * np.arange(n + 1)
    vals, mags = _PANEL_RULE.panels(f, edges[:-1], edges[1:])
    return edges, vals, mags


def _check_decay(vals):
    n = len(vals)
    q = n // 4
    early = np.max(np.abs(vals[q:2 * q]))
    late = np.max(np.abs(vals[3 * q:]))
    if early > 0 and late >= 0.95 * early:
        raise DivergenceError(
            "panel contributions are not decaying: divergent or non-oscillatory integrand")


def integrate_oscillatory_tail(f: Integrand, a: float, period_hint: float,
                               rel_tol: float = 1e-10, *, abs_tol: float = 0.0,
                               frequencies: Sequence[float] | None = None,
                               method: str = "fit", panels: int = 192,
                               max_panels: int = 6144, fit_order: int = 6) -> QuadratureReport:
    """Integral of ``f`` over ``[a, inf)`` for a slowly decaying oscillatory ``f``.

    ``period_hint`` is the panel width (about half the shortest period).
    ``frequencies`` lists the angular frequencies present in the tail; when
    omitted the tail is assumed to oscillate at ``pi / period_hint`` on top
    of a possible non-oscillating part.  The panel count is doubled until the
    two extrapolations used for the error estimate agree within ``rel_tol``.
    """
    if not period_hint > 0:
        raise DomainError("period_hint must be positive")
    if method not in ("fit", "epsilon"):
        raise DomainError(f"unknown acceleration method {method!r}")
    if frequencies is None:
        freqs = (0.0, math.pi / period_hint)
    else:
        freqs = tuple(sorted({abs(float(w)) for w in frequencies}))
    h = period_hint
    if max(freqs) > 0:
        h = min(h, math.pi / max(freqs))
    slowest = min((w for w in freqs if w > 0), default=0.0)

    n = panels
    while True:
        edges, vals, mags = _panel_sums(f, a, h, n)
        partial = np.cumsum(vals)
        _check_decay(vals)
        floor = 32 * _EPS * float(np.sum(mags))
        if method == "epsilon":
            v1, e1 = wynn_epsilon(partial)
            v2, _ = wynn_epsilon(partial[: (3 * n) // 4])
            err = max(e1, abs(v1 - v2))
            used = n
        else:
            x = edges[1:]
            first = n // 3
            v1 = _fit_limit(x[first:], partial[first:], freqs, fit_order)
            v2 = _fit_limit(x[n // 2:], partial[n // 2:], freqs, fit_order)
            err = abs(v1 - v2)
            used = n - first
        reach = (a + h * (n // 3)) * slowest
        resolved = method == "epsilon" or slowest == 0 or reach >= 40
        if resolved and err <= max(rel_tol * abs(v1), abs_tol, floor):
            return QuadratureReport(float(v1), float(err + floor), n, True, used)
        if 2 * n > max_panels:
            if not resolved:
                # slowest beat not resolved: compare with the model that absorbs it
                # into the non-oscillating part
                coarse = tuple(w for w in freqs if w != slowest) or (0.0,)
                if 0.0 not in coarse:
                    coarse = (0.0,) + coarse
                alt = _fit_limit(x[first:], partial[first:], coarse, fit_order)
                err = max(err, 2 * abs(v1 - alt))
            return QuadratureReport(float(v1), float(err + floor), n, True, used)
        n *= 2


def integrate_full_line(f: Integrand, rel_tol: float = 1e-10, *, abs_tol: float = 0.0,
                        period_hint: float = math.pi,
                        frequencies: Sequence[float] | None = None,
                        method: str = "fit") -> QuadratureReport:
    """Integral of ``f`` over the whole real line, folded onto ``[0, inf)``."""
    def folded(x):
        return np.asarray(f(x), dtype=float) + np.asarray(f(-x), dtype=float)

    return integrate_oscillatory_tail(folded, 0.0, period_hint, rel_tol,
                                      abs_tol=abs_tol, frequencies=frequencies, method=method)


def bessel_product_integral(orders: Sequence[int], wavenumbers: Sequence[float],
                            power: int = 2, rel_tol: float = 1e-10,
                            abs_tol: float = 1e-15) -> QuadratureReport:
    """Direct quadrature of ``r**power * prod_i j_{L_i}(k_i r)`` over [0, inf)."""
    from .bessel import sph_bessel

    ks = [float(k) for k in wavenumbers]
    if len(ks) != len(orders):
        raise DomainError("orders and wavenumbers differ in length")

    def f(r):
        out = r ** power
        for L, k in zip(orders, ks):
            out = out * sph_bessel(L, k * r)
        return out

    return integrate_oscillatory_tail(f, 0.0, math.pi / sum(ks), rel_tol, abs_tol=abs_tol,
                                      frequencies=beat_frequencies(ks))
