"""scalar-kernel: exact Gaussian rationals, floats, promotion, λ^{it} and λ^{iz}."""
import cmath
import math

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from aqg.scalar import (ONE, ZERO, Gauss, PositiveEigenvalue, SpectrumViolation, exact, exact_sqrt,
                        format_scalar, is_zero, parse_scalar, scalar_pow_it, scalar_pow_z)

rationals = st.fractions(max_denominator=10**6).map(lambda f: mpq(f.numerator, f.denominator))
gauss = st.builds(Gauss, rationals, rationals)
nonzero_gauss = gauss.filter(bool)


@given(gauss, gauss, gauss)
def test_field_axioms_exact(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ZERO and x * ONE == x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@given(gauss, nonzero_gauss)
def test_division_exact(x, y):
    assert (x / y) * y == x
    assert type(x / y) is Gauss


@given(gauss)
def test_text_round_trip_is_bit_exact(x):
    s = format_scalar(x)
    y = parse_scalar(s)
    assert type(y) is Gauss and y.re == x.re and y.im == x.im


@pytest.mark.parametrize("text,value", [
    ("3/4", Gauss(mpq(3, 4))), ("-1/2+1/3*i", Gauss(mpq(-1, 2), mpq(1, 3))), ("i", Gauss(0, 1)),
    ("-2*i", Gauss(0, -2)), ("7", Gauss(7)), ("1-i", Gauss(1, -1)),
])
def test_parse_exact(text, value):
    assert parse_scalar(text) == value


def test_parse_float_literals():
    assert parse_scalar("0.5") == 0.5 and isinstance(parse_scalar("0.5"), complex)
    assert parse_scalar("1e-3+2.5*i") == complex(1e-3, 2.5)
    with pytest.raises(ValueError):
        parse_scalar("1/2/3")


def test_promotion_is_one_way():
    x = Gauss(mpq(1, 3))
    assert isinstance(x + 0.5, complex)
    with pytest.raises(TypeError):
        exact(0.5)


def test_zero_tests():
    assert is_zero(ZERO) and not is_zero(Gauss(mpq(1, 10**30)))
    assert is_zero(1e-12, tol=1e-9) and not is_zero(1e-12)


def test_pow_it_examples():
    one = PositiveEigenvalue.certify(Gauss(1))
    assert scalar_pow_it(one, 3.7) == ONE
    quarter = PositiveEigenvalue.certify(Gauss(mpq(1, 4)))
    z = scalar_pow_it(quarter, 1.0)
    assert abs(z - cmath.exp(-1j * math.log(4))) < 1e-12
    assert abs(abs(z) - 1) < 1e-12
    assert scalar_pow_it(quarter, 0) == ONE and type(scalar_pow_it(quarter, 0)) is Gauss


def test_pow_z_examples():
    nine = PositiveEigenvalue.certify(Gauss(9))
    assert scalar_pow_z(nine, -1j) == Gauss(9)
    r = scalar_pow_z(nine, -0.5j)
    assert type(r) is Gauss and r == Gauss(3)
    two = scalar_pow_z(PositiveEigenvalue.certify(Gauss(2)), -0.5j)
    assert isinstance(two, complex) and abs(two - math.sqrt(2)) < 1e-12
    # z = +i/2 gives λ^{-1/2}
    assert scalar_pow_z(PositiveEigenvalue.certify(Gauss(mpq(1, 16))), 0.5j) == Gauss(4)


@pytest.mark.parametrize("bad", [Gauss(0), Gauss(-1), Gauss(1, 1), -2.0, 1j])
def test_spectrum_violation(bad):
    with pytest.raises(SpectrumViolation, match="spectrum violation"):
        PositiveEigenvalue.certify(bad)


def test_uncertified_eigenvalue_rejected():
    with pytest.raises(SpectrumViolation):
        scalar_pow_it(PositiveEigenvalue(Gauss(2), False), 1.0)


@given(st.fractions(min_value=mpq(1, 100), max_value=100).map(lambda f: Gauss(mpq(f.numerator, f.denominator))),
       st.floats(-10, 10), st.floats(-10, 10))
def test_pow_it_group_law(lam, s, t):
    p = PositiveEigenvalue.certify(lam)
    assert abs(scalar_pow_it(p, s + t) - scalar_pow_it(p, s) * scalar_pow_it(p, t)) <= 1e-10


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_exact_sqrt(n, d):
    r = exact_sqrt(mpq(n * n, d * d))
    assert r == mpq(n, d)
    assert exact_sqrt(mpq(2 * n * n, d * d)) is None
