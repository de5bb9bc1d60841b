from fractions import Fraction

import pytest

from systems.errors import ModeMismatch
from systems.polynomial import (
    Coefficients,
    Polynomial,
    format_monomial,
    monomials_of_degree,
    poly_arith,
    poly_sum,
)

Z2 = Coefficients.MOD_TWO
Z = Coefficients.INTEGER
Q = Coefficients.RATIONAL


def u(i, mode=Z, nvars=2):
    return Polynomial.variable(nvars, mode, i)


def test_mod_two_cancellation():
    assert (u(0, Z2) + u(0, Z2)).is_zero()
    assert ((u(0, Z2) + u(1, Z2)) ** 2).as_dict() == {"u2^2": 1, "u1^2": 1}


def test_integer_expansion():
    square = (u(0) - u(1)) ** 2
    assert square.as_dict() == {"u2^2": 1, "u1*u2": -2, "u1^2": 1}
    assert square.degree == 2
    assert square.is_homogeneous(2)
    assert not (square + 1).is_homogeneous()


def test_mode_and_arity_mismatch():
    with pytest.raises(ModeMismatch):
        u(0, Z2) + u(0, Z)
    with pytest.raises(ModeMismatch):
        u(0, Z, 2) * u(0, Z, 3)
    with pytest.raises(ModeMismatch):
        Coefficients.parse("Z3")


def test_truncated_product_drops_high_degrees():
    p = Polynomial.one(2, Z) + u(0)
    q = Polynomial.one(2, Z) + u(1)
    assert p.mul_truncated(q, 1).as_dict() == {"u2": 1, "u1": 1, "1": 1}


def test_homogeneous_parts():
    p = Polynomial.one(2, Z) + u(0) * 3 + u(0) * u(1)
    parts = p.homogeneous_parts()
    assert sorted(parts) == [0, 1, 2]
    assert parts[1] == u(0).scale(3)
    assert p.homogeneous_part(5).is_zero()
    assert Polynomial.zero(2, Z).degree == -1


def test_rational_coefficients():
    half = u(0, Q).scale(Fraction(1, 2))
    assert (half + half) == u(0, Z)
    with pytest.raises(ModeMismatch):
        half.to(Z)
    assert half.as_dict() == {"u1": "1/2"}


def test_poly_arith_and_sum():
    a, b = u(0), u(1)
    assert poly_arith(a, b, "add") == a + b
    assert poly_arith(a, b, "sub") == a - b
    assert poly_arith(a, b, "mul").as_dict() == {"u1*u2": 1}
    assert poly_arith(a + b, 3, "pow") == (a + b) * (a + b) * (a + b)
    assert poly_sum([a, b, a], 2, Z) == a.scale(2) + b
    with pytest.raises(ValueError):
        poly_arith(a, b, "div")


def test_monomials_and_formatting():
    assert monomials_of_degree(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(monomials_of_degree(3, 3)) == 10
    assert format_monomial((2, 0, 1)) == "u1^2*u3"
    assert format_monomial((0, 0)) == "1"
    assert str(Polynomial.zero(2, Z2)) == "0"
    assert str(u(0) - u(1).scale(2)) == "-2*u2 + u1"
