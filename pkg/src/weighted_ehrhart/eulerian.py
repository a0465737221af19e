"""Parametrized Eulerian polynomials A_d^lam(t).

A_d^lam is the numerator in  sum_{n>=0} (n + lam)^d t^n = A_d^lam(t) / (1 - t)^(d+1).
Its coefficient of t^k is the finite difference
sum_{j=0}^{k} (-1)^j binom(d+1, j) (k - j + lam)^d, which vanishes for k > d.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .poly import Poly


def eulerian_poly(d: int, lam) -> Poly:
    if d < 0:
        raise ValueError("d must be nonnegative")
    lam = Fraction(lam)
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    num, den = lam.numerator, lam.denominator
    scale = Fraction(1, den**d)
    return Poly([c * scale for c in eulerian_scaled(d, num, den)])


@lru_cache(maxsize=1 << 16)
def eulerian_scaled(d: int, num: int, den: int) -> tuple[int, ...]:
    """Integer coefficients of den^d * A_d^(num/den)(t), trailing zeros kept off.

    The cache only stores immutable tuples, so concurrent readers see either a
    miss or a complete entry.
    """
    out = []
    for k in range(d + 1):
        out.append(
            sum((-1) ** j * comb(d + 1, j) * ((k - j) * den + num) ** d for j in range(k + 1))
        )
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def eulerian_classical(d: int) -> Poly:
    """Classical Eulerian polynomial, the lam = 1 case."""
    return eulerian_poly(d, 1)
