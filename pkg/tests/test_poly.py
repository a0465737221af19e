from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weighted_ehrhart.poly import (
    Poly,
    coefficient_strings,
    format_poly,
    from_strings,
    geometric,
    one_minus_t_power,
    poly_gcd,
    primitive,
)

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(coeff, max_size=6).map(Poly)


def test_canonical_form():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert Poly([0, 0]).is_zero()
    assert Poly().degree == -1


def test_format():
    assert format_poly(Poly([1, -1, 2])) == "2*t^2 - t + 1"
    assert format_poly(Poly([0, Fraction(-1, 2)])) == "-1/2*t"
    assert format_poly(Poly()) == "0"


def test_strings_round_trip():
    p = Poly([Fraction(1, 3), 0, -7])
    assert from_strings(coefficient_strings(p)) == p


def test_geometric_multiplier():
    assert geometric(2, 6) == Poly([1, 0, 1, 0, 1])
    assert geometric(3, 3) == Poly([1])
    assert geometric(2, 6) * one_minus_t_power(2) == one_minus_t_power(6)
    with pytest.raises(ValueError):
        geometric(4, 6)


def test_exact_div_raises_on_remainder():
    with pytest.raises(ArithmeticError):
        Poly([1, 1]).exact_div(Poly([0, 1]))


@given(polys, polys)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly()


@given(polys, polys)
def test_gcd_divides(a, b):
    g = poly_gcd(a * b, a)
    if a.is_zero():
        return
    assert (a % g).is_zero()
    assert g.leading() == 1


@given(polys, polys, polys)
def test_gcd_recovers_common_factor(a, b, c):
    if a.is_zero() or b.is_zero() or c.is_zero():
        return
    g = poly_gcd(a * c, b * c)
    assert g.leading() == 1
    assert (a * c % g).is_zero() and (b * c % g).is_zero()
    assert (g % c.monic()).is_zero()


@given(polys)
def test_primitive_keeps_signs(a):
    p = primitive(a)
    if a.is_zero():
        assert p.is_zero()
        return
    assert all(x.denominator == 1 for x in p.coeffs)
    ratio = p.coeffs[-1] / a.coeffs[-1]
    assert ratio > 0
    assert p == a * Poly([ratio])


@given(polys, st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_evaluation_is_a_homomorphism(a, x):
    b = a * a + Poly([1, 1])
    assert b(x) == a(x) ** 2 + 1 + x
