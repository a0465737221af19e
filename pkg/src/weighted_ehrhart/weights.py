"""Weights: sums of scaled products of linear forms on R^(d+1).

A linear form acts on homogenized points (x, n), where the last coordinate
is the dilation factor. Forms given with only d coefficients are lifted with a
zero height coefficient.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

Monomials = Mapping[tuple, Fraction]  # exponent vector (length d+1) -> coefficient


class Certificate(enum.Enum):
    NONE = "none"
    RP = "RP"
    SP = "SP"


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def coordinate(cls, k: int, length: int) -> "LinearForm":
        return cls(tuple(1 if i == k else 0 for i in range(length)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def lift(self, d: int) -> "LinearForm":
        """Coefficients for R^(d+1); a d-variable form gets height coefficient 0."""
        if len(self.coeffs) == d + 1:
            return self
        if len(self.coeffs) == d:
            return LinearForm(self.coeffs + (Fraction(0),))
        raise ValueError(f"form with {len(self.coeffs)} coefficients does not fit dimension {d}")

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != len(self.coeffs):
            raise ValueError("point and form lengths differ")
        return sum((c * x for c, x in zip(self.coeffs, point)), Fraction(0))

    def integer_scale(self) -> tuple[tuple[int, ...], int]:
        """(integer coefficients, s) with coeffs = ints / s."""
        s = 1
        for c in self.coeffs:
            s = lcm(s, c.denominator)
        return tuple(int(c * s) for c in self.coeffs), s

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class WeightTerm:
    """scalar * factors[0] * ... * factors[m-1].

    ``pairs`` lists index pairs of factors claimed to form squares; it is only
    consulted for SP certificates.
    """

    scalar: Fraction
    factors: tuple = ()
    certificate: Certificate = Certificate.NONE
    pairs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "scalar", Fraction(self.scalar))
        object.__setattr__(
            self,
            "factors",
            tuple(f if isinstance(f, LinearForm) else LinearForm(f) for f in self.factors),
        )
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))

    @property
    def degree(self) -> int:
        return len(self.factors)

    def lift(self, d: int) -> "WeightTerm":
        return WeightTerm(self.scalar, tuple(f.lift(d) for f in self.factors), self.certificate, self.pairs)

    def __call__(self, point: Sequence) -> Fraction:
        v = self.scalar
        for f in self.factors:
            v *= f(point)
        return v

    def scaled(self, c) -> "WeightTerm":
        return WeightTerm(self.scalar * Fraction(c), self.factors, self.certificate, self.pairs)


@dataclass(frozen=True)
class Weight:
    """Homogeneous weight: all terms have the same degree."""

    terms: tuple = ()
    degree_hint: int = field(default=0, compare=False)

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        degrees = {t.degree for t in terms}
        if len(degrees) > 1:
            raise ValueError(f"weight is not homogeneous: degrees {sorted(degrees)}")
        if degrees:
            object.__setattr__(self, "degree_hint", degrees.pop())

    @classmethod
    def constant(cls, c=1) -> "Weight":
        return cls((WeightTerm(c),))

    @classmethod
    def product(cls, forms: Iterable, scalar=1, certificate=Certificate.NONE) -> "Weight":
        return cls((WeightTerm(scalar, tuple(forms), certificate),))

    @classmethod
    def square(cls, form, scalar=1) -> "Weight":
        return cls((WeightTerm(scalar, (form, form), Certificate.SP, ((0, 1),)),))

    @property
    def degree(self) -> int:
        return self.degree_hint

    def lift(self, d: int) -> "Weight":
        return Weight(tuple(t.lift(d) for t in self.terms), self.degree_hint)

    def __call__(self, point: Sequence) -> Fraction:
        return sum((t(point) for t in self.terms), Fraction(0))

    def __add__(self, other: "Weight") -> "Weight":
        if self.terms and other.terms and self.degree != other.degree:
            raise ValueError("cannot add weights of different degrees")
        return Weight(self.terms + other.terms, self.degree_hint if self.terms else other.degree_hint)

    def scaled(self, c) -> "Weight":
        return Weight(tuple(t.scaled(c) for t in self.terms), self.degree_hint)

    def __neg__(self) -> "Weight":
        return self.scaled(-1)


def homogenize_weight(poly: Monomials) -> list[tuple[int, Weight]]:
    """Split a polynomial into homogeneous parts, highest degree first.

    ``poly`` maps exponent vectors of length d+1 (the last entry is the
    exponent of the dilation variable n) to coefficients. Each monomial
    becomes a product of coordinate forms, one factor per unit of exponent.
    """
    parts: dict[int, list[WeightTerm]] = defaultdict(list)
    for exps, c in sorted(poly.items()):
        c = Fraction(c)
        if c == 0:
            continue
        length = len(exps)
        factors = []
        for k, e in enumerate(exps):
            factors.extend([LinearForm.coordinate(k, length)] * e)
        parts[len(factors)].append(WeightTerm(c, tuple(factors)))
    return [(m, Weight(tuple(parts[m]), m)) for m in sorted(parts, reverse=True)]


def expand_term(term: WeightTerm) -> dict[tuple, Fraction]:
    """Monomial expansion of one term (exponent vectors of the form length)."""
    if not term.factors:
        return {}
    n = len(term.factors[0])
    acc: dict[tuple, Fraction] = {(0,) * n: term.scalar}
    for f in term.factors:
        nxt: dict[tuple, Fraction] = defaultdict(Fraction)
        for exps, c in acc.items():
            for k, a in enumerate(f.coeffs):
                if a:
                    e = list(exps)
                    e[k] += 1
                    nxt[tuple(e)] += c * a
        acc = {e: c for e, c in nxt.items() if c}
    return acc


def expand_weight(w: Weight, length: int) -> dict[tuple, Fraction]:
    out: dict[tuple, Fraction] = defaultdict(Fraction)
    for t in w.terms:
        if not t.factors:
            out[(0,) * length] += t.scalar
            continue
        for e, c in expand_term(t).items():
            out[e] += c
    return {e: c for e, c in out.items() if c}
