from fractions import Fraction
from math import comb, factorial

import pytest

from weighted_ehrhart.eulerian import eulerian_classical, eulerian_poly, eulerian_scaled
from weighted_ehrhart.poly import Poly

LAMBDAS = [Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]


def series_numerator(d, lam, N=20):
    """(1 - t)^(d+1) * sum_{n<=N} (n + lam)^d t^n, truncated to degree N."""
    s = Poly([(n + lam) ** d for n in range(N + 1)])
    return (s * Poly([1, -1]) ** (d + 1)).truncate(N)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_low_degree_closed_forms(lam):
    assert eulerian_poly(0, lam) == Poly([1])
    assert eulerian_poly(1, lam) == Poly([lam, 1 - lam])
    assert eulerian_poly(2, lam) == Poly([lam**2, 1 + 2 * lam - 2 * lam**2, (1 - lam) ** 2])


def test_classical_values():
    assert eulerian_classical(3) == Poly([1, 4, 1])
    assert eulerian_classical(4) == Poly([1, 11, 11, 1])
    assert eulerian_classical(5) == Poly([1, 26, 66, 26, 1])
    assert eulerian_classical(6) == Poly([1, 57, 302, 302, 57, 1])


@pytest.mark.parametrize("d", range(1, 7))
def test_classical_matches_descent_formula(d):
    # number of permutations of [d] with k descents
    euler = [sum((-1) ** j * comb(d + 1, j) * (k + 1 - j) ** d for j in range(k + 2)) for k in range(d)]
    assert eulerian_classical(d) == Poly(euler)


@pytest.mark.parametrize("d", range(1, 9))
def test_zero_parameter_is_shifted_classical(d):
    assert eulerian_poly(d, 0) == Poly([0, 1]) * eulerian_poly(d, 1)


@pytest.mark.parametrize("d", range(0, 9))
@pytest.mark.parametrize("lam", LAMBDAS)
def test_nonnegative_and_sums_to_factorial(d, lam):
    A = eulerian_poly(d, lam)
    assert all(c >= 0 for c in A.coeffs)
    assert A(1) == factorial(d)


@pytest.mark.parametrize("d", range(0, 7))
@pytest.mark.parametrize("lam", LAMBDAS)
def test_defining_series(d, lam):
    assert series_numerator(d, lam).truncate(20 - d - 1) == eulerian_poly(d, lam)


@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("d", range(0, 6))
def test_colored_scaling_is_integral(d, r):
    A = eulerian_poly(d, Fraction(1, r)) * r**d
    assert all(c.denominator == 1 for c in A.coeffs)
    assert A == Poly(eulerian_scaled(d, 1, r))


def test_rejects_parameter_outside_unit_interval():
    with pytest.raises(ValueError):
        eulerian_poly(2, Fraction(3, 2))
    with pytest.raises(ValueError):
        eulerian_poly(-1, 0)
