from fractions import Fraction as F
import numpy as np
import pytest

from weighted_ehrhart import linalg
from weighted_ehrhart.geometry import GeometryError, HalfOpenSimplex
from weighted_ehrhart.parallelepiped import cone_generators, enumerate_points, parallelepiped_index
from weighted_ehrhart.randomgen import random_rational, rng_for


def brute_force(G):
    """Points of the half-open parallelepiped by scanning its bounding box."""
    W = [list(w) for w in G.generators]
    k = len(W)
    D = linalg.det(W)
    inv = linalg.inverse(W)  # lambda = y W^-1 for row vectors
    adj = np.array([[int(x * D) for x in row] for row in inv], dtype=np.int64)
    if D < 0:
        adj, D = -adj, -D
    lo = [sum(min(0, w[c]) for w in W) for c in range(k)]
    hi = [sum(max(0, w[c]) for w in W) for c in range(k)]
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    Y = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, k)
    lam = Y @ adj  # D * lambda
    ok = np.ones(len(Y), dtype=bool)
    for j in range(k):
        if j in G.strict:
            ok &= (lam[:, j] > 0) & (lam[:, j] <= D)
        else:
            ok &= (lam[:, j] >= 0) & (lam[:, j] < D)
    return {tuple(int(x) for x in y) for y in Y[ok]}


def test_dilated_triangle_of_denominator_six():
    H = HalfOpenSimplex([(1, 1), (1, F(5, 6)), (F(7, 6), 1)])
    pts = enumerate_points(cone_generators(H, 6))
    assert [p.point for p in pts] == [(i, i, i) for i in range(6)]
    assert [p.lambdas[0] for p in pts] == [F(i, 6) for i in range(6)]


def test_unimodular_has_single_point():
    H = HalfOpenSimplex([(0, 0), (1, 0), (0, 1)])
    pts = enumerate_points(cone_generators(H, 1))
    assert [(p.point, p.height) for p in pts] == [((0, 0, 0), 0)]
    H = HalfOpenSimplex([(0, 0), (1, 0), (0, 1)], {0, 1, 2})
    pts = enumerate_points(cone_generators(H, 1))
    assert [(p.point, p.height) for p in pts] == [((1, 1, 3), 3)]


def test_bad_period():
    with pytest.raises(GeometryError):
        cone_generators(HalfOpenSimplex([(0,), (F(1, 2),)]), 3)


def random_simplex(rng, full=True):
    d = rng.randint(1, 3)
    r = d if full else rng.randint(0, d)
    den = rng.randint(1, 3)
    while True:
        verts = [tuple(random_rational(rng, -2, 2, den) for _ in range(d)) for _ in range(r + 1)]
        if linalg.rank([list(v) + [1] for v in verts]) == r + 1:
            strict = frozenset(j for j in range(r + 1) if rng.random() < 0.5)
            return HalfOpenSimplex(tuple(verts), strict)


@pytest.mark.parametrize("i", range(20))
def test_points_match_grid_scan(i):
    rng = rng_for(11, "pp", i)
    H = random_simplex(rng)
    G = cone_generators(H, H.denominator)
    pts = enumerate_points(G)
    assert {p.point for p in pts} == brute_force(G)
    assert len(pts) == parallelepiped_index(G)


@pytest.mark.parametrize("i", range(30))
def test_window_and_heights(i):
    rng = rng_for(12, "pp", i)
    H = random_simplex(rng, full=False)
    g = H.denominator
    G = cone_generators(H, g)
    pts = enumerate_points(G)
    r = H.dim
    for p in pts:
        for j, lam in enumerate(p.lambdas):
            assert (0 < lam <= 1) if j in H.strict else (0 <= lam < 1)
        assert p.point[-1] == p.height
        assert 0 <= p.height <= g * (r + 1)
        assert p.point == tuple(sum(l * w[c] for l, w in zip(p.lambdas, G.generators)) for c in range(H.d + 1))
    assert (pts[0].height == 0) == (not H.strict)
    # flipping every index to strict maps lambda = 0 to 1 and keeps the count
    closed = enumerate_points(cone_generators(HalfOpenSimplex(H.vertices), g))
    opened = enumerate_points(cone_generators(HalfOpenSimplex(H.vertices, range(r + 1)), g))
    shift = lambda lams: tuple(l if l else F(1) for l in lams)
    assert sorted(shift(p.lambdas) for p in closed) == sorted(p.lambdas for p in opened)
