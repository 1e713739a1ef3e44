"""Ring laws, numeric evaluation, special constants, and the text grammar."""

import math
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphtess.exactnum import (
    ONE,
    ZERO,
    ParseError,
    SqrtPiPoly,
    bernoulli,
    gamma_half,
    pi_decimal,
    sp_eval,
    sp_format,
    sp_parse,
    sphere_surface,
)

rationals = st.builds(
    Fraction,
    st.integers(min_value=-(10**6), max_value=10**6),
    st.integers(min_value=1, max_value=10**4),
)

polys = st.dictionaries(
    st.integers(min_value=-12, max_value=12), rationals, max_size=6
).map(SqrtPiPoly)


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_eval_is_ring_homomorphism(a, b):
    from decimal import localcontext

    digits = 25
    tol = Decimal(10) ** (3 - digits)
    with localcontext() as ctx:
        ctx.prec = 80  # compare exactly, not at the default context precision
        assert abs(sp_eval(a + b, digits) - (sp_eval(a, digits) + sp_eval(b, digits))) < tol
        prod = sp_eval(a * b, digits)
        approx = sp_eval(a, digits + 15) * sp_eval(b, digits + 15)
        scale = max(abs(approx), Decimal(1))
        assert abs(prod - approx) < tol * scale


@settings(max_examples=300, deadline=None)
@given(polys)
def test_parse_format_round_trip(a):
    assert sp_parse(sp_format(a)) == a


def test_arith_examples():
    half_pi = SqrtPiPoly.pi_power(1, Fraction(1, 2))
    assert half_pi + half_pi == SqrtPiPoly.pi_power(1)
    one_minus = SqrtPiPoly({0: 1, -2: Fraction(-2)})  # 1 - 2/pi
    assert one_minus * SqrtPiPoly.pi_power(1) == sp_parse("pi^1 - 2")
    a = SqrtPiPoly.pi_power(2, Fraction(1, 2)) - 2
    scaled = a * SqrtPiPoly.pi_power(-4, 12)
    assert scaled == sp_parse("6*pi^-2 - 24*pi^-4")


def test_eval_examples():
    v = SqrtPiPoly({0: Fraction(13, 8), -4: Fraction(-9)})
    got = sp_eval(v, 10)
    assert abs(got - Decimal("0.7131093472")) < Decimal("1e-9")
    assert sp_eval(ZERO, 5) == 0
    assert abs(sp_eval(SqrtPiPoly.pi_power(1, Fraction(1, 2)), 12) - Decimal("1.5707963267949")) < Decimal("1e-11")


def test_eval_survives_heavy_cancellation():
    # n!/pi^n style magnitudes with a rational residue
    n = 120
    big = SqrtPiPoly.pi_power(n, Fraction(1, math.factorial(n)))
    x = big * SqrtPiPoly.pi_power(-n, math.factorial(n)) - 1 + Fraction(1, 3)
    assert abs(sp_eval(x, 20) - Decimal(1) / 3) < Decimal("1e-19")


def test_eval_precision_contract():
    from decimal import localcontext

    cases = [
        SqrtPiPoly.pi_power(3, Fraction(7, 3)) - SqrtPiPoly.pi_power(-2, Fraction(2, 9)),
        SqrtPiPoly({9: 8644}),  # large magnitude: absolute bound must still hold
        SqrtPiPoly({-7: Fraction(1, 97)}),
    ]
    with localcontext() as ctx:
        ctx.prec = 120
        for val in cases:
            hi = sp_eval(val, 80)
            for digits in (1, 2, 5, 10, 30):
                assert abs(sp_eval(val, digits) - hi) < Decimal(10) ** (1 - digits)


def test_bernoulli_values_and_recurrence():
    assert bernoulli(0) == 1
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    with pytest.raises(ValueError):
        bernoulli(3)
    # defining recurrence sum_j binom(m+1, j) B_j = 0 with B_1 = -1/2
    for m in range(2, 61, 2):
        total = Fraction(m + 1) * Fraction(-1, 2)  # B_1 term
        for j in range(0, m + 1, 2):
            total += math.comb(m + 1, j) * bernoulli(j)
        assert total == 0, m


def test_gamma_half():
    assert gamma_half(1) == SqrtPiPoly.sqrtpi_power(1)
    assert gamma_half(4) == ONE
    assert gamma_half(5) == SqrtPiPoly.sqrtpi_power(1, Fraction(3, 4))
    with pytest.raises(ValueError):
        gamma_half(0)
    # Gamma(z + 1) = z Gamma(z) exactly
    for two_j in range(1, 30):
        lhs = gamma_half(two_j + 2)
        rhs = gamma_half(two_j).scale(Fraction(two_j, 2))
        assert lhs == rhs


def test_sphere_surface():
    assert sphere_surface(0) == SqrtPiPoly.rational(2)
    assert sphere_surface(1) == SqrtPiPoly.pi_power(1, 2)
    assert sphere_surface(3) == SqrtPiPoly.pi_power(2, 2)
    # omega_{l+1} l!/2 = (2 sqrt(pi))^l Gamma(l/2 + 1)
    for l in range(0, 12):
        lhs = sphere_surface(l).scale(Fraction(math.factorial(l), 2))
        rhs = SqrtPiPoly.sqrtpi_power(l, 2**l) * gamma_half(l + 2)
        assert lhs == rhs
    with pytest.raises(ValueError):
        sphere_surface(-1)


def test_parse_grammar_cases():
    assert sp_parse("0").is_zero()
    assert sp_parse("3/4 - 3*pi^-2") == SqrtPiPoly({0: Fraction(3, 4), -4: -3})
    assert sp_parse("15 + 720*pi^-4 - 180*pi^-2") == SqrtPiPoly(
        {0: 15, -8: 720, -4: -180}
    )
    assert sp_parse(" 2 * pi ^ 1 ") == SqrtPiPoly.pi_power(1, 2)
    assert sp_parse("sqrtpi^3") == SqrtPiPoly.sqrtpi_power(3)
    assert sp_parse("-1*pi^2 + 1/2") == SqrtPiPoly({4: -1, 0: Fraction(1, 2)})


def test_format_order_and_style():
    s = sp_format(SqrtPiPoly({0: 15, -8: 720, -4: -180}))
    assert s == "15 - 180*pi^-2 + 720*pi^-4"  # descending exponent order
    assert sp_format(ZERO) == "0"
    assert sp_format(SqrtPiPoly.pi_power(1, Fraction(1, 2))) == "1/2*pi^1"


def test_parse_errors_have_positions():
    for bad in ("3 +", "pi", "2**pi^1", "1/0", "3/4 - spam"):
        with pytest.raises(ParseError):
            sp_parse(bad)


def test_pi_decimal_known_digits():
    txt = str(pi_decimal(50))
    assert txt.startswith("3.14159265358979323846264338327950288419716939937510")


def test_division_rules():
    mono = SqrtPiPoly.pi_power(2, Fraction(3, 4))
    val = SqrtPiPoly({0: 1, 2: 2}) / mono
    assert val == SqrtPiPoly({-4: Fraction(4, 3), -2: Fraction(8, 3)})
    with pytest.raises(ValueError):
        SqrtPiPoly({0: 1}) / SqrtPiPoly({0: 1, 2: 1})
    with pytest.raises(ZeroDivisionError):
        SqrtPiPoly({0: 1}) / ZERO
