"""Exact coefficient arithmetic in the Laurent ring Q[s, 1/s] with s = sqrt(pi).

Every closed-form expectation produced by this package is an element of this
ring: rational numbers are monomials with s-exponent 0, powers of pi carry
even s-exponents, and the Euclidean-limit formulas need odd exponents.
Numeric evaluation goes through ``decimal`` with guard digits, never through
hardware floats, so values can be compared both symbolically and numerically.

All values are immutable; the memo caches below are only ever filled with
values that are functions of their key, so concurrent (idempotent) fills from
several threads are harmless.
"""

from __future__ import annotations

import math
import re
import threading
from decimal import Decimal, getcontext, localcontext
from fractions import Fraction
from typing import Dict, Mapping, Tuple, Union

__all__ = [
    "BigRational",
    "SqrtPiPoly",
    "ZERO",
    "ONE",
    "bernoulli",
    "gamma_half",
    "sphere_surface",
    "sp_parse",
    "sp_format",
    "sp_eval",
    "sp_arith",
    "pi_decimal",
    "ParseError",
]

# Arbitrary-precision reduced fractions; ``fractions.Fraction`` already keeps
# gcd(|num|, den) = 1 with den >= 1 and is exact under arithmetic.
BigRational = Fraction

RationalLike = Union[int, Fraction]


class ParseError(ValueError):
    """Raised by :func:`sp_parse` with the offending position in the message."""


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class SqrtPiPoly:
    """Element of Q[s, s^-1] with s = sqrt(pi), in canonical form.

    ``terms`` maps the integer exponent of s to a nonzero Fraction
    coefficient.  The exponent of pi is half the s-exponent, so rational
    multiples of integer powers of pi occupy the even exponents.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, RationalLike] | None = None):
        canon: Dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _as_fraction(c)
                if c != 0:
                    canon[int(e)] = c
        self._terms = canon
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, x: RationalLike) -> "SqrtPiPoly":
        return cls({0: _as_fraction(x)})

    @classmethod
    def pi_power(cls, j: int, coeff: RationalLike = 1) -> "SqrtPiPoly":
        """coeff * pi**j  (j may be negative)."""
        return cls({2 * j: _as_fraction(coeff)})

    @classmethod
    def sqrtpi_power(cls, e: int, coeff: RationalLike = 1) -> "SqrtPiPoly":
        """coeff * s**e with s = sqrt(pi)."""
        return cls({e: _as_fraction(coeff)})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return set(self._terms) <= {0}

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self._terms.get(0, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- ring arithmetic ----------------------------------------------------

    def __add__(self, other: "SqrtPiPoly | RationalLike") -> "SqrtPiPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SqrtPiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "SqrtPiPoly":
        return SqrtPiPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "SqrtPiPoly | RationalLike") -> "SqrtPiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "SqrtPiPoly | RationalLike") -> "SqrtPiPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other: "SqrtPiPoly | RationalLike") -> "SqrtPiPoly":
        other = _coerce(other)
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return SqrtPiPoly(out)

    __rmul__ = __mul__

    def scale(self, x: RationalLike) -> "SqrtPiPoly":
        x = _as_fraction(x)
        return SqrtPiPoly({e: c * x for e, c in self._terms.items()})

    def __truediv__(self, other: "SqrtPiPoly | RationalLike") -> "SqrtPiPoly":
        """Division by a rational or by a monomial (the only invertibles)."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero SqrtPiPoly")
        if not other.is_monomial():
            raise ValueError("SqrtPiPoly division only defined for monomials")
        ((e, c),) = other._terms.items()
        return SqrtPiPoly({e1 - e: c1 / c for e1, c1 in self._terms.items()})

    def __pow__(self, n: int) -> "SqrtPiPoly":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            ((e, c),) = self._terms.items()
            return SqrtPiPoly({e * n: c**n})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SqrtPiPoly.rational(other)
        if not isinstance(other, SqrtPiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"SqrtPiPoly({sp_format(self)!r})"

    # -- numeric evaluation --------------------------------------------------

    def eval_decimal(self, digits: int) -> Decimal:
        return sp_eval(self, digits)

    def __float__(self) -> float:
        return float(sp_eval(self, 25))


def _coerce(x: "SqrtPiPoly | RationalLike") -> SqrtPiPoly:
    if isinstance(x, SqrtPiPoly):
        return x
    return SqrtPiPoly.rational(x)


ZERO = SqrtPiPoly()
ONE = SqrtPiPoly.rational(1)


# ---------------------------------------------------------------------------
# High-precision pi.
# ---------------------------------------------------------------------------

_pi_lock = threading.Lock()
_pi_cache: Tuple[int, Decimal] = (0, Decimal(0))


def pi_decimal(ndigits: int) -> Decimal:
    """pi to at least ``ndigits`` significant decimal digits (Machin's formula)."""
    global _pi_cache
    cached_digits, cached = _pi_cache
    if cached_digits >= ndigits:
        return cached
    with _pi_lock:
        cached_digits, cached = _pi_cache
        if cached_digits >= ndigits:
            return cached
        prec = ndigits + 15
        with localcontext() as ctx:
            ctx.prec = prec
            pi = 16 * _atan_inv(5, prec) - 4 * _atan_inv(239, prec)
        _pi_cache = (ndigits, pi)
        return pi


def _atan_inv(x: int, prec: int) -> Decimal:
    """arctan(1/x) for integer x > 1, by the alternating Taylor series."""
    one = Decimal(1)
    term = one / x
    total = term
    x2 = x * x
    n = 1
    while term:
        term /= x2
        n += 2
        total += -term / n if (n // 2) % 2 else term / n
        if term.adjusted() < -prec:
            break
    return total


def _term_log10(e: int, c: Fraction) -> float:
    """Rough log10 magnitude of c * pi**(e/2); only used to size guard digits."""
    num, den = abs(c.numerator), c.denominator
    mag = (num.bit_length() - den.bit_length()) * math.log10(2)
    return mag + 0.24857 * e  # log10(sqrt(pi)) = 0.24857...


def sp_eval(a: SqrtPiPoly, digits: int) -> Decimal:
    """Evaluate ``a`` to an absolute error below 10**(1 - digits).

    The working precision is padded by the largest term magnitude so that
    heavy cancellation (e.g. n! / pi**n sums) cannot eat the answer.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if a.is_zero():
        return Decimal(0)
    max_mag = max(0, math.ceil(max(_term_log10(e, c) for e, c in a._terms.items())))
    prec = digits + 20 + max_mag
    pi = pi_decimal(prec)
    with localcontext() as ctx:
        ctx.prec = prec
        s = pi.sqrt()
        total = Decimal(0)
        for e, c in sorted(a._terms.items()):
            coeff = Decimal(c.numerator) / Decimal(c.denominator)
            if e == 0:
                pw = Decimal(1)
            elif e % 2 == 0:
                pw = pi ** (e // 2)
            else:
                pw = s**e
            total += coeff * pw
    with localcontext() as ctx:
        # keep enough significant digits that the *absolute* error stays
        # below 10^(1-digits) even for large-magnitude values
        ctx.prec = digits + max_mag + 5
        return +total


# attach as module-level op name used throughout
SqrtPiPoly.eval = sp_eval  # type: ignore[attr-defined]


# ---------------------------------------------------------------------------
# Formatting / parsing.  Grammar (ASCII, whitespace insignificant):
#   expr     := term (('+'|'-') term)*
#   term     := rational ('*' atom)? | atom
#   atom     := 'pi' '^' signed-int | 'sqrtpi' '^' signed-int
#   rational := int ('/' posint)?
# 'pi^t' carries s-exponent 2*t; odd s-exponents are emitted as 'sqrtpi^e'.
# Terms are emitted in descending s-exponent order.
# ---------------------------------------------------------------------------


def sp_format(a: SqrtPiPoly) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e in sorted(a._terms, reverse=True):
        c = a._terms[e]
        mag = abs(c)
        if e == 0:
            body = _fmt_rational(mag)
        else:
            atom = f"pi^{e // 2}" if e % 2 == 0 else f"sqrtpi^{e}"
            body = atom if mag == 1 else f"{_fmt_rational(mag)}*{atom}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def _fmt_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_TOKEN = re.compile(
    r"\s*(?:(?P<int>[+-]?\d+)|(?P<name>pi|sqrtpi)|(?P<op>[*^/+-]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character at position {pos}: {text[pos:pos+8]!r}")
        if m.lastgroup is None:
            pos = m.end()
            continue
        out.append((m.lastgroup, m.group(m.lastgroup), pos))
        pos = m.end()
    return out


def sp_parse(text: str) -> SqrtPiPoly:
    """Parse the exact-expression grammar; raises ParseError with a position."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    i = 0
    total: Dict[int, Fraction] = {}

    def fail(msg: str) -> None:
        pos = toks[i][2] if i < len(toks) else len(text)
        raise ParseError(f"{msg} at position {pos}")

    def take_int() -> int:
        nonlocal i
        if i < len(toks) and toks[i][0] == "int":
            v = int(toks[i][1])
            i += 1
            return v
        # allow a sign token followed by digits, e.g. '^' '-' '5' never splits
        fail("expected integer")
        raise AssertionError

    def take_atom_exp() -> int:
        nonlocal i
        if i >= len(toks) or toks[i][1] != "^":
            fail("expected '^'")
        i += 1
        return take_int()

    sign = 1
    first = True
    while i < len(toks):
        kind, val, _ = toks[i]
        if not first:
            if kind != "op" or val not in "+-":
                fail("expected '+' or '-'")
            sign = 1 if val == "+" else -1
            i += 1
            if i >= len(toks):
                fail("dangling operator")
            kind, val, _ = toks[i]
        first = False

        coeff = Fraction(1)
        have_coeff = False
        if kind == "int":
            num = int(val)
            i += 1
            den = 1
            if i < len(toks) and toks[i][1] == "/":
                i += 1
                if i >= len(toks) or toks[i][0] != "int":
                    fail("expected denominator")
                den = int(toks[i][1])
                if den <= 0:
                    fail("denominator must be positive")
                i += 1
            coeff = Fraction(num, den)
            have_coeff = True
            if i < len(toks) and toks[i][1] == "*":
                i += 1
                if i >= len(toks) or toks[i][0] != "name":
                    fail("expected 'pi' or 'sqrtpi' after '*'")
                kind, val, _ = toks[i]
            else:
                e = 0
                c = sign * coeff
                total[e] = total.get(e, Fraction(0)) + c
                continue
        if kind == "name":
            name = val
            i += 1
            t = take_atom_exp()
            e = 2 * t if name == "pi" else t
            c = sign * coeff
            total[e] = total.get(e, Fraction(0)) + c
            continue
        if not have_coeff:
            fail("expected term")
    return SqrtPiPoly(total)


# ---------------------------------------------------------------------------
# Special-function constants.
# ---------------------------------------------------------------------------

_bern_lock = threading.Lock()
_bern_even: list[Fraction] = [Fraction(1)]  # B_0, B_2, B_4, ...


def bernoulli(two_n: int) -> Fraction:
    """Bernoulli number B_{two_n} for even two_n >= 0 (memoized).

    Computed from the binomial recurrence over even indices only; odd
    Bernoulli numbers beyond B_1 vanish and B_1 never enters our series.
    """
    if two_n < 0 or two_n % 2 != 0:
        raise ValueError(f"bernoulli index must be even and >= 0, got {two_n}")
    k = two_n // 2
    if k < len(_bern_even):
        return _bern_even[k]
    with _bern_lock:
        while len(_bern_even) <= k:
            m = len(_bern_even)
            n = 2 * m
            s = Fraction(0)
            for j in range(m):
                s += math.comb(n + 1, 2 * j) * _bern_even[j]
            s += Fraction(n + 1) * Fraction(-1, 2)  # B_1 = -1/2 term
            _bern_even.append(-s / (n + 1))
        return _bern_even[k]


def gamma_half(two_j: int) -> SqrtPiPoly:
    """Exact Gamma(two_j / 2) as rational * s^{0 or 1}."""
    if two_j < 1:
        raise ValueError(f"gamma_half argument must be positive, got {two_j}")
    if two_j % 2 == 0:
        return SqrtPiPoly.rational(math.factorial(two_j // 2 - 1))
    # Gamma(n + 1/2) = (2n)! / (4^n n!) * sqrt(pi)
    n = (two_j - 1) // 2
    coeff = Fraction(math.factorial(2 * n), 4**n * math.factorial(n))
    return SqrtPiPoly.sqrtpi_power(1, coeff)


def sphere_surface(k: int) -> SqrtPiPoly:
    """k-dimensional Hausdorff measure of the unit k-sphere.

    omega_{k+1} = 2 pi^{(k+1)/2} / Gamma((k+1)/2); always lands in Q[pi].
    """
    if k < 0:
        raise ValueError(f"sphere dimension must be >= 0, got {k}")
    numer = SqrtPiPoly.sqrtpi_power(k + 1, 2)
    return numer / gamma_half(k + 1)


def sp_arith(a: SqrtPiPoly, b, op: str) -> SqrtPiPoly:
    """Dispatch helper kept for symmetry with the CLI surface."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")
