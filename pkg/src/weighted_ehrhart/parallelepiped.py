"""Lattice points of half-open fundamental parallelepipeds of simplicial cones."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from . import linalg
from .geometry import GeometryError, HalfOpenSimplex


@dataclass(frozen=True)
class ConeGenerators:
    """Integer generators w_j = (g*u_j, g) of the cone over a half-open simplex."""

    generators: tuple
    strict: frozenset
    g: int

    @property
    def rank(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class ParallelepipedPoint:
    point: tuple  # integer vector in Z^(d+1)
    lambdas: tuple  # Fractions with point = sum lambdas[j] * w_j
    height: int


def cone_generators(H: HalfOpenSimplex, g: int) -> ConeGenerators:
    if g <= 0 or g % H.denominator:
        raise GeometryError(f"g={g} does not clear the denominators of the simplex")
    gens = tuple(tuple(int(g * x) for x in v) + (g,) for v in H.vertices)
    return ConeGenerators(gens, H.strict, g)


@dataclass(frozen=True)
class _Lattice:
    """Group data for Z^k / (generator lattice), in lambda coordinates."""

    steps: tuple  # rows of U, one per nontrivial invariant factor
    factors: tuple  # the nontrivial invariant factors d_i
    index: int


def _group(G: ConeGenerators) -> _Lattice:
    W = G.generators
    basis = linalg.saturation_basis(W)
    if len(basis) != len(W):
        raise GeometryError("cone generators are linearly dependent")
    # rows of M express each generator in the saturation basis: W = M B
    M = tuple(linalg.integer_coordinates(basis, w) for w in W)
    D, U, _ = linalg.smith_normal_form(M)
    # With D = U M V the points are lambda = sum_i (e_i / d_i) U[i] mod 1.
    steps, factors = [], []
    index = 1
    for i in range(len(W)):
        d = D[i][i]
        index *= d
        if d != 1:
            steps.append(U[i])
            factors.append(d)
    return _Lattice(tuple(steps), tuple(factors), index)


def parallelepiped_index(G: ConeGenerators) -> int:
    """Number of lattice points in the half-open parallelepiped."""
    return _group(G).index


def raw_points(G: ConeGenerators) -> Iterator[tuple[tuple[int, ...], int, int]]:
    """Yield (lambda numerators, common denominator L, height) per point.

    lambda_j = num_j / L, already moved into the half-open window: [0, 1)
    for closed indices and (0, 1] for strict ones.
    """
    lat = _group(G)
    k = G.rank
    L = lat.factors[-1] if lat.factors else 1
    mults = [L // d for d in lat.factors]
    strict = G.strict
    g = G.g
    for es in product(*(range(d) for d in lat.factors)):
        num = [0] * k
        for e, m, row in zip(es, mults, lat.steps):
            if e:
                s = e * m
                for j in range(k):
                    num[j] += s * row[j]
        for j in range(k):
            num[j] %= L
            if num[j] == 0 and j in strict:
                num[j] = L
        total = sum(num)
        # height = g * sum(lambda) is an integer because the point is integral
        yield tuple(num), L, g * total // L


def enumerate_points(G: ConeGenerators) -> list[ParallelepipedPoint]:
    """All lattice points of the half-open parallelepiped, sorted by (height, point)."""
    out = []
    W = G.generators
    dim = len(W[0])
    for num, L, h in raw_points(G):
        coords = []
        for c in range(dim):
            s = sum(n * w[c] for n, w in zip(num, W))
            if s % L:
                raise ArithmeticError("parallelepiped point is not integral")
            coords.append(s // L)
        out.append(ParallelepipedPoint(tuple(coords), tuple(Fraction(n, L) for n in num), h))
    out.sort(key=lambda p: (p.height, p.point))
    return out
