"""Brute-force ground truth: scan lattice points of dilates and add up weights.

This path shares only the triangulation with the h* pipeline. Membership
uses barycentric coordinates in triangulation cells; weights are evaluated
point by point with exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Optional, Sequence, Union

import numpy as np

from . import linalg
from .geometry import Polytope, triangulate
from .series import HStarResult, hstar, hstar_mixed, series_expand
from .weights import Weight

MAX_CANDIDATES = 10**7

WeightLike = Union[Weight, Sequence, dict]


class ScanTooLarge(RuntimeError):
    pass


def _cell_tests(P: Polytope, cell: Sequence[int]):
    """Integer matrices (F, K): y=(x,n) lies in n*cell iff K y = 0 and F y >= 0."""
    d = P.d
    cols = [list(P.vertices[i]) + [1] for i in cell]
    B = linalg.transpose(cols)  # (d+1) x (r+1)
    _, rows = linalg.row_echelon(cols)  # independent rows of B
    Binv = linalg.inverse([B[i] for i in rows])
    F = [[Fraction(0)] * (d + 1) for _ in cell]
    for a in range(len(cell)):
        for b, i in enumerate(rows):
            F[a][i] = Binv[a][b]
    F = [linalg.clear_denominators(row) if any(row) else tuple(0 for _ in row) for row in F]
    K = [linalg.clear_denominators(k) for k in linalg.nullspace(cols)]
    return np.array(F, dtype=np.int64), np.array(K, dtype=np.int64).reshape(len(K), d + 1)


def lattice_points(P: Polytope, n: int) -> list[tuple[int, ...]]:
    """Integer points of nP, found by scanning the bounding box of nP."""
    return [tuple(int(x) for x in row) for row in _scan(P, n)]


def _scan(P: Polytope, n: int) -> np.ndarray:
    d = P.d
    if P.is_empty():
        return np.zeros((0, d), dtype=np.int64)
    lo = [ceil(n * min(v[k] for v in P.vertices)) for k in range(d)]
    hi = [floor(n * max(v[k] for v in P.vertices)) for k in range(d)]
    if any(h < l for l, h in zip(lo, hi)):
        return np.zeros((0, d), dtype=np.int64)
    size = 1
    for l, h in zip(lo, hi):
        size *= h - l + 1
    if size > MAX_CANDIDATES:
        raise ScanTooLarge(f"bounding box of {n}P has {size} candidate points")
    axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d) if d else np.zeros((1, 0), np.int64)
    Y = np.hstack([grid, np.full((grid.shape[0], 1), n, dtype=np.int64)])
    inside = np.zeros(Y.shape[0], dtype=bool)
    for cell in triangulate(P):
        F, K = _cell_tests(P, cell)
        ok = np.all(Y @ F.T >= 0, axis=1)
        if K.shape[0]:
            ok &= np.all(Y @ K.T == 0, axis=1)
        inside |= ok
    return grid[inside]


def _as_parts(w: WeightLike) -> list[tuple[int, Weight]]:
    if isinstance(w, Weight):
        return [(w.degree, w)]
    if isinstance(w, dict):
        from .weights import homogenize_weight

        return homogenize_weight(w)
    return list(w)


def _sum_weight(Y: np.ndarray, w: Weight, d: int) -> Fraction:
    """Exact sum of w over the rows of Y (homogenized points)."""
    total = Fraction(0)
    for term in w.lift(d).terms:
        if term.scalar == 0:
            continue
        acc = np.ones(Y.shape[0], dtype=object)
        den = 1
        for f in term.factors:
            ints, s = f.integer_scale()
            vals = Y @ np.array(ints, dtype=np.int64)
            acc = acc * vals.astype(object)
            den *= s
        total += term.scalar * Fraction(int(acc.sum()) if Y.shape[0] else 0, den)
    return total


def weighted_sum(P: Polytope, w: WeightLike, n: int) -> Fraction:
    """Sum of w(x, n) over the lattice points x of nP."""
    pts = _scan(P, n)
    Y = np.hstack([pts, np.full((pts.shape[0], 1), n, dtype=np.int64)])
    return sum((_sum_weight(Y, part, P.d) for _, part in _as_parts(w)), Fraction(0))


def weighted_sums(P: Polytope, w: WeightLike, N: int) -> list[Fraction]:
    return [weighted_sum(P, w, n) for n in range(N + 1)]


@dataclass
class SeriesReport:
    passed: bool
    expected: list  # oracle values
    computed: list  # series coefficients
    first_mismatch: Optional[int] = None
    result: Optional[HStarResult] = field(default=None, repr=False)

    def __bool__(self) -> bool:
        return self.passed


def verify_series(
    P: Polytope, w: WeightLike, N: int, result: Optional[HStarResult] = None
) -> SeriesReport:
    """Compare series coefficients of h* with direct weighted sums for n = 0..N."""
    if result is None:
        parts = _as_parts(w)
        result = hstar(P, parts[0][1]) if len(parts) == 1 else hstar_mixed(P, parts)
    computed = series_expand(result, N)
    expected = weighted_sums(P, w, N)
    bad = next((n for n in range(N + 1) if computed[n] != expected[n]), None)
    return SeriesReport(bad is None, expected, computed, bad, result)
