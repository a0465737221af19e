"""Weighted h*-polynomials via half-open decompositions.

For a half-open simplex with cone generators w_1..w_k (last coordinate g) and
a product of linear forms l_1..l_m, the numerator over (1 - t^g)^(k-1+m+1) is

    sum over parallelepiped points x of t^height(x) *
        sum over ordered partitions I_1 + ... + I_k = [m] of
            prod_j prod_{i in I_j} l_i(w_j) * prod_j A_{|I_j|}^{lambda_j(x)}(t^g).

The partition sum only depends on the part sizes through the Eulerian
factors, so it is grouped by the composition (|I_1|, ..., |I_k|) first.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Iterable, Optional, Sequence, Union

from .eulerian import eulerian_scaled
from .geometry import HalfOpenSimplex, Polytope, decompose
from .parallelepiped import cone_generators, raw_points
from .poly import Poly, geometric, one_minus_t_power
from .weights import LinearForm, Weight, WeightTerm


@dataclass(frozen=True)
class HStarResult:
    """The rational function numerator / (1 - t^period)^exponent."""

    numerator: Poly
    period: int = 1
    exponent: int = 1
    r: Optional[int] = None
    m: Optional[int] = None
    d: Optional[int] = None

    def __neg__(self) -> "HStarResult":
        return HStarResult(-self.numerator, self.period, self.exponent, self.r, self.m, self.d)

    def scaled(self, c) -> "HStarResult":
        return HStarResult(self.numerator * Fraction(c), self.period, self.exponent, self.r, self.m, self.d)

    def degree_bound(self) -> int:
        return self.period * self.exponent - 1

    def expand(self, N: int) -> list[Fraction]:
        return series_expand(self, N)


@lru_cache(maxsize=4096)
def _cell_points(H: HalfOpenSimplex, g: int) -> tuple:
    G = cone_generators(H, g)
    return G.generators, tuple(raw_points(G))


def _composition_weights(values: Sequence[Sequence[Fraction]], k: int) -> dict[tuple, Fraction]:
    """Sum of prod_i values[i][a(i)] over assignments a grouped by part sizes."""
    acc: dict[tuple, Fraction] = {(0,) * k: Fraction(1)}
    for row in values:
        nxt: dict[tuple, Fraction] = defaultdict(Fraction)
        for comp, c in acc.items():
            for j, v in enumerate(row):
                if v:
                    key = comp[:j] + (comp[j] + 1,) + comp[j + 1 :]
                    nxt[key] += c * v
        acc = {key: c for key, c in nxt.items() if c}
    return acc


def _polymul_int(a: list[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def hstar_term_halfopen(H: HalfOpenSimplex, term: WeightTerm, g: int) -> Poly:
    """Numerator of the series of one half-open simplex and one product term.

    The denominator is (1 - t^g)^(dim H + degree + 1); linear forms are
    evaluated on the integer generators (g*u_j, g).
    """
    term = term.lift(H.d)
    gens, points = _cell_points(H, g)
    k = len(gens)
    m = term.degree
    if term.scalar == 0:
        return Poly()
    values = [[f(w) for w in gens] for f in term.factors]
    comps = _composition_weights(values, k)
    if not comps:
        return Poly()
    den = 1
    for c in comps.values():
        den = lcm(den, c.denominator)
    plan = [
        (int(c * den), [(j, kj) for j, kj in enumerate(comp) if kj])
        for comp, c in comps.items()
    ]
    acc: dict[int, int] = defaultdict(int)
    L = 1
    for num, L, height in points:
        local = [0] * (m + 1)
        for coef, parts in plan:
            poly = [coef]
            for j, kj in parts:
                poly = _polymul_int(poly, eulerian_scaled(kj, num[j], L))
            for i, x in enumerate(poly):
                local[i] += x
        for i, x in enumerate(local):
            if x:
                acc[height + g * i] += x
    scale = term.scalar / (den * L**m)
    return Poly.from_dict({e: c * scale for e, c in acc.items()})


def _result(P: Polytope, numerator: Poly, m: int) -> HStarResult:
    return HStarResult(numerator, P.denominator, P.dim + m + 1, P.dim, m, P.d)


def hstar(P: Polytope, w: Weight) -> HStarResult:
    """Weighted h*-polynomial of P over (1 - t^q)^(r+m+1), q the denominator of P."""
    m = w.degree
    if P.is_empty():
        return HStarResult(Poly(), 1, m, -1, m, P.d)
    w = w.lift(P.d)
    q = P.denominator
    total = Poly()
    for H in decompose(P):
        for term in w.terms:
            total = total + hstar_term_halfopen(H, term, q)
    return _result(P, total, m)


def hstar_cells(P: Polytope, w: Weight) -> list[Poly]:
    """Per-cell numerators (same g = q) whose sum is hstar(P, w).numerator."""
    w = w.lift(P.d)
    q = P.denominator
    out = []
    for H in decompose(P):
        acc = Poly()
        for term in w.terms:
            acc = acc + hstar_term_halfopen(H, term, q)
        out.append(acc)
    return out


def hstar_simplex(H: HalfOpenSimplex, w: Weight, g: Optional[int] = None) -> HStarResult:
    """h* of a half-open simplex; the period defaults to its own denominator."""
    g = H.denominator if g is None else g
    w = w.lift(H.d)
    total = Poly()
    for term in w.terms:
        total = total + hstar_term_halfopen(H, term, g)
    return HStarResult(total, g, H.dim + w.degree + 1, H.dim, w.degree, H.d)


def ell_squared_halfopen(H: HalfOpenSimplex, form: LinearForm, g: int) -> Poly:
    """Per-point closed form for the weight l^2 on one half-open simplex.

    Writing a_i = l(w_i) and S1 = sum lambda_i a_i, S0 = sum (1 - lambda_i) a_i,
    each point contributes
        (S0^2 T^2 + (sum a_i^2 + (sum a_i)^2 - S1^2 - S0^2) T + S1^2) t^height
    with T = t^g.
    """
    form = form.lift(H.d)
    ints, s = form.integer_scale()
    gens, points = _cell_points(H, g)
    a = [sum(c * x for c, x in zip(ints, w)) for w in gens]
    As = sum(a)
    A2 = sum(x * x for x in a)
    acc: dict[int, int] = defaultdict(int)
    L = 1
    for num, L, height in points:
        s1 = sum(n * x for n, x in zip(num, a))
        s0 = L * As - s1
        acc[height] += s1 * s1
        acc[height + g] += L * L * (A2 + As * As) - s1 * s1 - s0 * s0
        acc[height + 2 * g] += s0 * s0
    scale = Fraction(1, L * L * s * s)
    return Poly.from_dict({e: c * scale for e, c in acc.items()})


def hstar_ell_squared(P: Polytope, form: Union[LinearForm, Sequence]) -> HStarResult:
    """hstar(P, l*l) through the per-point closed form instead of partitions."""
    if not isinstance(form, LinearForm):
        form = LinearForm(tuple(form))
    if P.is_empty():
        return HStarResult(Poly(), 1, 2, -1, 2, P.d)
    q = P.denominator
    total = Poly()
    for H in decompose(P):
        total = total + ell_squared_halfopen(H, form, q)
    return _result(P, total, 2)


# -- rational function bookkeeping --------------------------------------------


def rebase(R: HStarResult, period: int, exponent: int) -> HStarResult:
    """Rewrite R over (1 - t^period)^exponent; raises if that is not exact."""
    num = R.numerator * one_minus_t_power(period) ** exponent
    num = num.exact_div(one_minus_t_power(R.period) ** R.exponent)
    return HStarResult(num, period, exponent, R.r, R.m, R.d)


Part = Union[HStarResult, tuple]


def ratfun_combine(parts: Iterable[Part], period: int, exponent: int) -> HStarResult:
    """Sum of rational functions over the common denominator (1 - t^period)^exponent.

    A part is an HStarResult or a (scalar, HStarResult) pair.
    """
    total = Poly()
    for part in parts:
        c, R = (part if isinstance(part, tuple) else (1, part))
        if period % R.period:
            raise ValueError(f"period {R.period} does not divide {period}")
        if R.exponent > exponent:
            raise ValueError(f"exponent {R.exponent} exceeds target {exponent}")
        num = R.numerator * geometric(R.period, period) ** R.exponent
        num = num * one_minus_t_power(period) ** (exponent - R.exponent)
        total = total + num * Fraction(c)
    return HStarResult(total, period, exponent)


def series_expand(R: HStarResult, N: int) -> list[Fraction]:
    """Taylor coefficients of R up to t^N."""
    q, b = R.period, R.exponent
    inv = [Fraction(0)] * (N + 1)
    for k in range(N // q + 1):
        inv[q * k] = Fraction(comb(k + b - 1, b - 1)) if b > 0 else Fraction(int(k == 0))
    out = [Fraction(0)] * (N + 1)
    for i, c in enumerate(R.numerator.coeffs[: N + 1]):
        if c:
            for j in range(N + 1 - i):
                if inv[j]:
                    out[i + j] += c * inv[j]
    return out


def hstar_mixed(P: Polytope, parts: Sequence[tuple[int, Weight]]) -> HStarResult:
    """Series of a non-homogeneous weight given as homogeneous parts.

    Every part is brought to the common denominator (1 - t^q)^(r + m_max + 1).
    """
    if not parts:
        return HStarResult(Poly(), P.denominator if not P.is_empty() else 1, P.dim + 1)
    results = [hstar(P, w) for _, w in parts]
    m_max = max(m for m, _ in parts)
    q = P.denominator if not P.is_empty() else 1
    combined = ratfun_combine(results, q, P.dim + m_max + 1)
    return HStarResult(combined.numerator, q, P.dim + m_max + 1, P.dim, m_max, P.d)
