"""Combinatorial constants and the two exact coefficient families.

``cells_count``/``faces_count`` are the almost-sure cell and face counts of a
tessellation by random great hyperspheres in general position.  The A family
extracts Laurent coefficients from tanh/cotanh series products; the B family
is a table of sine-moment integrals.  Both are computed by one route and
checked against an independent route in the test suite (series product vs.
recurrence for A, recurrence vs. symbolic integral vs. printed closed forms
for B).

Everything here is a pure function over immutable memo tables; concurrent
cache fills are idempotent.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Literal

from .exactnum import ZERO, SqrtPiPoly

__all__ = [
    "cells_count",
    "faces_count",
    "qpoly",
    "hyp_series",
    "coeff_A",
    "coeff_A_dd_closed",
    "coeff_B",
    "coeff_B_oracle",
    "b_closed_form",
    "LaurentSeriesX",
]


# ---------------------------------------------------------------------------
# Schlaefli counts.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cells_count(n: int, d: int) -> Fraction:
    """Number of cells cut out of the d-sphere by n great hyperspheres.

    C(n,d) = 2 * sum_{r=0}^{d} binom(n-1, r); by convention C(0,d) = 1
    (no hyperspheres leave the whole sphere as a single cell).  d = 0 is
    allowed so that the k = 0 corner of the face-count recursion works:
    C(m, 0) = 2 for m >= 1.
    """
    if n < 0 or d < 0:
        raise ValueError(f"cells_count requires n >= 0, d >= 0, got ({n}, {d})")
    if n == 0:
        return Fraction(1)
    return Fraction(2 * sum(math.comb(n - 1, r) for r in range(d + 1)))


@lru_cache(maxsize=None)
def faces_count(n: int, d: int, k: int) -> Fraction:
    """Number C(n,d,k) of k-faces of the tessellation: binom(n,d-k)*C(n-d+k,k)."""
    if not 0 <= k <= d:
        raise ValueError(f"need 0 <= k <= d, got k={k}, d={d}")
    if n < d - k:
        raise ValueError(f"need n >= d-k = {d - k}, got n={n}")
    return Fraction(math.comb(n, d - k)) * cells_count(n - d + k, k)


# ---------------------------------------------------------------------------
# The Q_m polynomials and the Laurent series of tanh(pi/2x), cotanh(pi/2x).
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def qpoly(m: int) -> Dict[int, Fraction]:
    """Q_m as a map {even x-exponent: coefficient}.

    Q_0 = Q_1 = 1 and Q_m = prod of (1 + (m-1-2j)^2 x^2) with the last factor
    1 + x^2 (m even) or 1 + 4 x^2 (m odd).
    """
    if m < 0:
        raise ValueError(f"qpoly index must be >= 0, got {m}")
    if m <= 1:
        return {0: Fraction(1)}
    poly: Dict[int, Fraction] = {0: Fraction(1)}
    j = m - 1
    while j >= 1:
        sq = Fraction(j * j)
        nxt: Dict[int, Fraction] = {}
        for e, c in poly.items():
            nxt[e] = nxt.get(e, Fraction(0)) + c
            nxt[e + 2] = nxt.get(e + 2, Fraction(0)) + c * sq
        poly = nxt
        j -= 2
    return poly


class LaurentSeriesX:
    """Laurent series in x with SqrtPiPoly coefficients, exact above a floor.

    A truncated expansion around x = infinity is missing terms below some
    exponent; multiplying by a degree-D polynomial in x^2 shifts that
    pollution up by D.  ``min_exact`` tracks the lowest exponent whose
    coefficient is still exact; extraction below it raises.
    """

    def __init__(self, terms: Dict[int, SqrtPiPoly], min_exact: int):
        self.min_exact = min_exact
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.min_exp = min(self.terms, default=0)
        self.max_exp = max(self.terms, default=0)

    def coefficient(self, l: int) -> SqrtPiPoly:
        if l < self.min_exact:
            raise ValueError(f"exponent {l} below exact floor {self.min_exact}")
        return self.terms.get(l, ZERO)

    def times_x2_poly(self, poly: Dict[int, Fraction]) -> "LaurentSeriesX":
        """Multiply by a polynomial in x^2; the exact floor rises by its degree."""
        deg = max(poly, default=0)
        out: Dict[int, SqrtPiPoly] = {}
        for e, c in self.terms.items():
            for pe, pc in poly.items():
                ne = e + pe
                cur = out.get(ne, ZERO) + c.scale(pc)
                out[ne] = cur
        return LaurentSeriesX(out, self.min_exact + deg)


def hyp_series(kind: Literal["tanh", "coth"], window: int) -> LaurentSeriesX:
    """Laurent expansion of tanh(pi/(2x)) or cotanh(pi/(2x)) around x = inf.

    With u = pi/(2x):
      tanh u = sum_{n>=1} 2^{2n}(2^{2n}-1) B_{2n} u^{2n-1} / (2n)!
      coth u = 1/u + sum_{n>=1} 2^{2n} B_{2n} u^{2n-1} / (2n)!
    so tanh contributes only negative odd x-exponents and coth adds (2/pi) x.
    Coefficients are exact through |exponent| <= window.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    from .exactnum import bernoulli

    terms: Dict[int, SqrtPiPoly] = {}
    if kind == "coth":
        terms[1] = SqrtPiPoly.pi_power(-1, 2)
    elif kind != "tanh":
        raise ValueError(f"kind must be 'tanh' or 'coth', got {kind!r}")
    n = 1
    while 2 * n - 1 <= window:
        b = bernoulli(2 * n)
        fac = Fraction(2 ** (2 * n), math.factorial(2 * n))
        if kind == "tanh":
            fac *= 2 ** (2 * n) - 1
        # u^{2n-1} = (pi/2)^{2n-1} x^{-(2n-1)}
        coeff = fac * Fraction(1, 2 ** (2 * n - 1))
        terms[-(2 * n - 1)] = SqrtPiPoly.pi_power(2 * n - 1, coeff * b)
        n += 1
    return LaurentSeriesX(terms, -window)


# ---------------------------------------------------------------------------
# A[m, l] by exact series product.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def coeff_A(m: int, l: int) -> SqrtPiPoly:
    """A[m, l]: the x^l coefficient of Q_m, tanh(pi/2x) Q_m, or cotanh(pi/2x) Q_m.

    Even l reads Q_m directly; odd l multiplies by tanh (m even) or cotanh
    (m odd).  Zero whenever l > m.  The sentinel product 0^2 * A[-1,-1] that
    appears in the face-number formulas is handled by the callers, never here.
    """
    if m < 0:
        raise ValueError(f"coeff_A row index must be >= 0, got {m}")
    if l < -1:
        raise ValueError(f"coeff_A column index must be >= -1, got {l}")
    if l > m:
        return ZERO
    q = qpoly(m)
    if l % 2 == 0:
        return SqrtPiPoly.rational(q[l]) if l in q else ZERO
    series = hyp_series("tanh" if m % 2 == 0 else "coth", max(m, abs(l)) + 2)
    return series.times_x2_poly(q).coefficient(l)


def coeff_A_dd_closed(d: int) -> SqrtPiPoly:
    """Closed form A[d,d] = (d!)^2 / (2^d Gamma(d/2+1)^2); used as a test oracle."""
    from .exactnum import gamma_half

    g = gamma_half(d + 2)  # Gamma(d/2 + 1)
    numer = SqrtPiPoly.rational(Fraction(math.factorial(d) ** 2, 2**d))
    return numer / (g * g)


# ---------------------------------------------------------------------------
# B{m, l} by the recurrence, and its two independent oracles.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _wallis(j: int) -> Fraction:
    """Integral of sin^j over [0, pi], divided by its pi-power.

    Returns the rational r with integral = r * pi^(1 if j even else 0):
    W_0 = pi, W_1 = 2, W_j = W_{j-2} (j-1)/j.
    """
    if j == 0:
        return Fraction(1)
    if j == 1:
        return Fraction(2)
    return _wallis(j - 2) * Fraction(j - 1, j)


def _wallis_poly(j: int) -> SqrtPiPoly:
    r = _wallis(j)
    return SqrtPiPoly.pi_power(1, r) if j % 2 == 0 else SqrtPiPoly.rational(r)


@lru_cache(maxsize=None)
def coeff_B(m: int, l: int) -> SqrtPiPoly:
    """B{m, l} computed by climbing B{n+2,k} = (B{n,k-2} - B{n,k}) / (k-1)^2.

    Base cases are the Wallis rows B{l,l} and B{l+1,l} = (pi/2) B{l,l}; the
    l = 0 and l = 1 columns are pi^m / m! directly.  Always lands in Q[pi].
    """
    if m < 0 or l < 0:
        raise ValueError(f"coeff_B indices must be >= 0, got ({m}, {l})")
    if l == 0:
        return SqrtPiPoly.pi_power(m, Fraction(1, math.factorial(m)))
    if m < 1:
        raise ValueError("coeff_B requires m >= 1 when l >= 1")
    if l > m:
        return ZERO
    if l == 1:
        # integral of x^{m-1} over [0, pi] / (m-1)! = pi^m / m!
        return SqrtPiPoly.pi_power(m, Fraction(1, math.factorial(m)))
    if m == l:
        return _wallis_poly(l - 1).scale(Fraction(1, math.factorial(l - 1)))
    if m == l + 1:
        half_pi = SqrtPiPoly.pi_power(1, Fraction(1, 2))
        return coeff_B(l, l) * half_pi
    # climb two steps down in m with matching parity
    prev = coeff_B(m - 2, l - 2) - coeff_B(m - 2, l)
    return prev.scale(Fraction(1, (l - 1) ** 2))


def coeff_B_oracle(m: int, l: int) -> SqrtPiPoly:
    """B{m, l} by exact symbolic evaluation of the defining integral.

    Expands sin^{l-1} x into a rational combination of 1, cos(jx), sin(jx)
    and integrates x^{m-l} against each by exact repeated integration by
    parts.  Entirely independent of the recurrence route.
    """
    if not 1 <= l <= m:
        raise ValueError(f"oracle requires 1 <= l <= m, got ({m}, {l})")
    p = l - 1  # power of sin
    q = m - l  # power of x
    total = ZERO
    for is_cos, j, c in _sin_power_expansion(p):
        if j == 0:
            # integral of c * x^q over [0, pi]
            total = total + SqrtPiPoly.pi_power(q + 1, c * Fraction(1, q + 1))
        elif is_cos:
            total = total + _moment_cos(q, j).scale(c)
        else:
            total = total + _moment_sin(q, j).scale(c)
    return total.scale(Fraction(1, math.factorial(l - 1) * math.factorial(m - l)))


def _sin_power_expansion(p: int):
    """sin^p x as [(is_cos, frequency j, rational coeff)]; j = 0 means constant."""
    out = []
    if p == 0:
        return [(True, 0, Fraction(1))]
    if p % 2 == 0:
        h = p // 2
        out.append((True, 0, Fraction(math.comb(p, h), 2**p)))
        for j in range(1, h + 1):
            c = Fraction(2 * math.comb(p, h - j), 2**p) * (-1) ** j
            out.append((True, 2 * j, c))
    else:
        h = (p - 1) // 2
        for j in range(0, h + 1):
            c = Fraction(math.comb(p, h - j), 2 ** (p - 1)) * (-1) ** j
            out.append((False, 2 * j + 1, c))
    return out


@lru_cache(maxsize=None)
def _moment_cos(q: int, j: int) -> SqrtPiPoly:
    """Exact integral of x^q cos(jx) over [0, pi], j >= 1."""
    if q == 0:
        return ZERO  # sin(j pi)/j = 0
    return _moment_sin(q - 1, j).scale(Fraction(-q, j))


@lru_cache(maxsize=None)
def _moment_sin(q: int, j: int) -> SqrtPiPoly:
    """Exact integral of x^q sin(jx) over [0, pi], j >= 1."""
    boundary = Fraction(-((-1) ** j), j)  # -pi^q cos(j pi)/j, pi-power q
    value = SqrtPiPoly.pi_power(q, boundary) if q > 0 else SqrtPiPoly.rational(boundary * 1)
    if q == 0:
        # (1 - cos(j pi)) / j
        return SqrtPiPoly.rational(Fraction(1 - (-1) ** j, j))
    return value + _moment_cos(q - 1, j).scale(Fraction(q, j))


def b_closed_form(n: int, which: Literal["k2", "k3"]) -> SqrtPiPoly:
    """The printed alternating-sum closed forms for B{n,2} and B{n,3}."""
    if which == "k2":
        if n < 2:
            raise ValueError("B{n,2} closed form needs n >= 2")
        total = ZERO
        for k in range(0, n - 1):
            if (n - k) % 2 != 0:
                continue
            sgn = (-1) ** ((n - k) // 2)
            total = total - SqrtPiPoly.pi_power(k, Fraction(sgn, math.factorial(k)))
        if n % 2 == 0:
            total = total - SqrtPiPoly.rational((-1) ** (n // 2))
        return total
    if which == "k3":
        if n < 3:
            raise ValueError("B{n,3} closed form needs n >= 3")
        total = ZERO
        for k in range(0, n - 1):
            if (n - k) % 2 != 0:
                continue
            sgn = (-1) ** ((n - k) // 2)
            total = total - SqrtPiPoly.pi_power(
                k, Fraction(sgn, math.factorial(k) * 2 ** (n - k))
            )
        if n % 2 == 0:
            total = total + SqrtPiPoly.rational(Fraction((-1) ** (n // 2), 2**n))
        return total
    raise ValueError(f"which must be 'k2' or 'k3', got {which!r}")
