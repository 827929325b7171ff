"""Exact rational arithmetic and angular-momentum coupling coefficients.

Everything here is computed with Python integers and :class:`fractions.Fraction`
so no rounding happens before a caller explicitly asks for a float.
Clebsch-Gordan coefficients follow the Condon-Shortley phase convention;
only integer angular momenta are supported.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import DomainError

BigRational = Fraction

_FACTORIALS = [1]
_FACTORIAL_LOCK = threading.Lock()


def factorial(n: int) -> int:
    """Exact n! backed by a grow-only memo table."""
    if n < 0:
        raise DomainError(f"factorial of negative number {n}")
    table = _FACTORIALS
    if n < len(table):
        return table[n]
    with _FACTORIAL_LOCK:
        # another thread may have grown the table meanwhile
        while len(_FACTORIALS) <= n:
            _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
        return _FACTORIALS[n]


def binomial(n: int, m: int) -> int:
    if n < 0 or m < 0:
        raise DomainError(f"binomial({n}, {m}) needs nonnegative arguments")
    if m > n:
        raise DomainError(f"binomial({n}, {m}) needs m <= n")
    return factorial(n) // (factorial(n - m) * factorial(m))


def double_factorial(n: int) -> int:
    """n!! with the convention (-1)!! = 0!! = 1."""
    if n < -1:
        raise DomainError(f"double factorial of {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@dataclass(frozen=True)
class SqrtRational:
    """The real number ``sign * sqrt(radicand)`` with a rational radicand."""

    sign: int
    radicand: Fraction

    def __post_init__(self):
        rad = Fraction(self.radicand)
        if rad < 0:
            raise DomainError("negative radicand")
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or 1, got {self.sign}")
        if (rad == 0) != (self.sign == 0):
            raise DomainError("radicand is zero iff sign is zero")
        object.__setattr__(self, "radicand", rad)

    @classmethod
    def zero(cls) -> SqrtRational:
        return cls(0, Fraction(0))

    @classmethod
    def from_rational(cls, q) -> SqrtRational:
        q = Fraction(q)
        if q == 0:
            return cls.zero()
        return cls(1 if q > 0 else -1, q * q)

    @classmethod
    def sqrt_of(cls, q) -> SqrtRational:
        q = Fraction(q)
        return cls.zero() if q == 0 else cls(1, q)

    def __bool__(self):
        return self.sign != 0

    def __neg__(self):
        return SqrtRational(-self.sign, self.radicand)

    def __mul__(self, other):
        if isinstance(other, SqrtRational):
            return SqrtRational(self.sign * other.sign, self.radicand * other.radicand)
        if isinstance(other, (int, Fraction)):
            return self * SqrtRational.from_rational(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SqrtRational.from_rational(other)
        if not isinstance(other, SqrtRational):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero SqrtRational")
        return SqrtRational(self.sign * other.sign, self.radicand / other.radicand)

    def square(self) -> Fraction:
        """value**2, always rational."""
        return self.radicand

    def as_rational(self) -> Fraction | None:
        """The value as a Fraction when the radicand is a perfect square."""
        num, den = self.radicand.numerator, self.radicand.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return self.sign * Fraction(rn, rd)
        return None

    def __float__(self):
        return self.sign * math.sqrt(float(self.radicand))

    def __repr__(self):
        if not self.sign:
            return "SqrtRational(0)"
        return f"SqrtRational({'+' if self.sign > 0 else '-'}sqrt({self.radicand}))"


def _split_square(n: int) -> tuple[int, int]:
    """n = root**2 * free with free squarefree (trial division)."""
    root, free, d = 1, 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            root *= d
        if n % d == 0:
            n //= d
            free *= d
        d += 1
    return root, free * n


def sqrt_sum(values) -> dict[int, Fraction]:
    """Exact sum of SqrtRationals as ``{squarefree s: c}`` meaning sum c*sqrt(s).

    The representation is canonical, so the sum is zero iff the dict is empty.
    """
    acc: dict[int, Fraction] = {}
    for v in values:
        if not v:
            continue
        num, den = v.radicand.numerator, v.radicand.denominator
        root, free = _split_square(num * den)
        acc[free] = acc.get(free, Fraction(0)) + v.sign * Fraction(root, den)
    return {s: c for s, c in sorted(acc.items()) if c}


def _check_nonnegative(*values):
    for v in values:
        if v < 0:
            raise DomainError(f"angular momentum must be nonnegative, got {v}")


def triangle(a: int, b: int, c: int) -> bool:
    """True when (a, b, c) satisfy |a-b| <= c <= a+b."""
    return abs(a - b) <= c <= a + b


@lru_cache(maxsize=None)
def clebsch_gordan(l1: int, l2: int, m1: int, m2: int, l: int, m: int) -> SqrtRational:
    """<l1 l2 m1 m2 | l m> by the Racah single-sum formula.

    Returns the zero SqrtRational whenever a selection rule fails.
    """
    _check_nonnegative(l1, l2, l)
    if abs(m1) > l1 or abs(m2) > l2 or abs(m) > l:
        raise DomainError(f"projection out of range in <{l1} {l2} {m1} {m2}|{l} {m}>")
    if m != m1 + m2 or not triangle(l1, l2, l):
        return SqrtRational.zero()
    if m1 == 0 and m2 == 0 and (l1 + l2 + l) % 2:
        return SqrtRational.zero()

    kmin = max(0, l2 - l - m1, l1 - l + m2)
    kmax = min(l1 + l2 - l, l1 - m1, l2 + m2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (factorial(k) * factorial(l1 + l2 - l - k) * factorial(l1 - m1 - k)
               * factorial(l2 + m2 - k) * factorial(l - l2 + m1 + k)
               * factorial(l - l1 - m2 + k))
        total += Fraction((-1) ** k, den)
    if total == 0:
        return SqrtRational.zero()
    pref = Fraction(
        (2 * l + 1) * factorial(l + l1 - l2) * factorial(l - l1 + l2)
        * factorial(l1 + l2 - l)
        * factorial(l + m) * factorial(l - m)
        * factorial(l1 - m1) * factorial(l1 + m1)
        * factorial(l2 - m2) * factorial(l2 + m2),
        factorial(l1 + l2 + l + 1),
    )
    return SqrtRational(1 if total > 0 else -1, pref * total * total)


def _triangle_delta_sq(a, b, c) -> Fraction:
    return Fraction(factorial(a + b - c) * factorial(a - b + c) * factorial(-a + b + c),
                    factorial(a + b + c + 1))


@lru_cache(maxsize=None)
def wigner_6j(j1: int, j2: int, j3: int, j4: int, j5: int, j6: int) -> SqrtRational:
    """{j1 j2 j3; j4 j5 j6} by the Racah formula; zero if a triad fails."""
    _check_nonnegative(j1, j2, j3, j4, j5, j6)
    triads = ((j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3))
    if not all(triangle(*t) for t in triads):
        return SqrtRational.zero()

    a = [sum(t) for t in triads]
    b = (j1 + j2 + j4 + j5, j2 + j3 + j5 + j6, j3 + j1 + j6 + j4)
    total = Fraction(0)
    for t in range(max(a), min(b) + 1):
        den = 1
        for ai in a:
            den *= factorial(t - ai)
        for bi in b:
            den *= factorial(bi - t)
        total += Fraction((-1) ** t * factorial(t + 1), den)
    if total == 0:
        return SqrtRational.zero()
    rad = total * total
    for tri in triads:
        rad *= _triangle_delta_sq(*tri)
    return SqrtRational(1 if total > 0 else -1, rad)


# --- polynomials with Fraction coefficients (index = power) ----------------

def poly_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_compose(p: Sequence[Fraction], inner: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of p(inner(x))."""
    out: list[Fraction] = [Fraction(0)]
    for c in reversed(p):
        out = poly_add(poly_mul(out, inner), [Fraction(c)])
    return out


def poly_eval(p: Sequence[Fraction], x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_integrate(p: Sequence[Fraction], a, b) -> Fraction:
    """Exact integral of the polynomial over [a, b]."""
    a, b = Fraction(a), Fraction(b)
    total = Fraction(0)
    for n, c in enumerate(p):
        if c:
            total += Fraction(c) * (b ** (n + 1) - a ** (n + 1)) / (n + 1)
    return total


# --- Legendre polynomials ---------------------------------------------------

@dataclass(frozen=True)
class LegendrePoly:
    degree: int
    coefficients: tuple[Fraction, ...]

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction arguments."""
        if isinstance(x, Rational):
            return poly_eval(self.coefficients, Fraction(x))
        return poly_eval([float(c) for c in self.coefficients], x)


@lru_cache(maxsize=None)
def legendre(L: int) -> LegendrePoly:
    """P_L with exact coefficients from the Bonnet recurrence."""
    if L < 0:
        raise DomainError(f"Legendre degree must be nonnegative, got {L}")
    prev, cur = [Fraction(1)], [Fraction(0), Fraction(1)]
    if L == 0:
        return LegendrePoly(0, tuple(prev))
    for n in range(1, L):
        # (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}
        shifted = [Fraction(0)] + cur
        nxt = poly_add([(2 * n + 1) * c for c in shifted], [-n * c for c in prev])
        prev, cur = cur, [c / (n + 1) for c in nxt]
    return LegendrePoly(L, tuple(cur))


def legendre_at_zero(L: int) -> Fraction:
    return legendre(L).coefficients[0]


def legendre_eval(L: int, x):
    """P_L(x) in floating point via the Bonnet recurrence.

    Accepts scalars or numpy arrays. Rational arguments should go through
    ``legendre(L)(x)`` instead to get an exact result.
    """
    if L < 0:
        raise DomainError(f"Legendre degree must be nonnegative, got {L}")
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), x.copy()
    if L == 0:
        out = prev
    else:
        for n in range(1, L):
            prev, cur = cur, ((2 * n + 1) * x * cur - n * prev) / (n + 1)
        out = cur
    return float(out) if out.ndim == 0 else out


def legendre_inner(L: int, Lp: int) -> Fraction:
    """Exact integral of P_L * P_Lp over [-1, 1]."""
    prod = poly_mul(legendre(L).coefficients, legendre(Lp).coefficients)
    return poly_integrate(prod, -1, 1)
