"""Seeded generators of random polytopes, forms and weights for property checks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .geometry import HalfOpenSimplex, Polytope, affine_rank, pyramid_simplex
from .weights import Certificate, LinearForm, Weight, WeightTerm


def rng_for(seed: int, *salt) -> random.Random:
    """Independent reproducible stream for (seed, salt...)."""
    return random.Random(":".join(map(str, (seed,) + salt)) if salt else seed)


def random_rational(rng: random.Random, lo: int, hi: int, den: int) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_polytope(
    rng: random.Random,
    d: Optional[int] = None,
    max_dim: int = 3,
    lo: int = -3,
    hi: int = 3,
    max_den: int = 3,
    extra: int = 2,
) -> Polytope:
    """Hull of a few random points with one shared denominator in 1..max_den."""
    d = rng.randint(1, max_dim) if d is None else d
    den = rng.randint(1, max_den)
    while True:
        count = rng.randint(1, d + 1 + extra)
        pts = [tuple(random_rational(rng, lo, hi, den) for _ in range(d)) for _ in range(count)]
        if len(set(pts)) == count:
            return Polytope.hull(pts)


def random_full_polytope(rng: random.Random, d: int, **kw) -> Polytope:
    while True:
        P = random_polytope(rng, d, **kw)
        if P.dim == d:
            return P


def lattice_polytope(rng: random.Random, d: int, lo: int = -3, hi: int = 3, count: int = 0) -> Polytope:
    count = count or rng.randint(1, d + 3)
    pts = {tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(count)}
    return Polytope.hull(pts)


def lattice_polygon(rng: random.Random, lo: int = -5, hi: int = 5, max_points: int = 10) -> Polytope:
    """Convex hull of at most max_points random lattice points; two-dimensional."""
    while True:
        P = lattice_polytope(rng, 2, lo, hi, rng.randint(3, max_points))
        if P.dim == 2:
            return P


def random_form(rng: random.Random, d: int, lo: int = -3, hi: int = 3, height: bool = True) -> LinearForm:
    """Random nonzero form on R^(d+1); the height coefficient is 0 unless ``height``."""
    while True:
        c = [rng.randint(lo, hi) for _ in range(d)] + [rng.randint(lo, hi) if height else 0]
        if any(c[:d]) or c[d]:
            return LinearForm(tuple(c))


def random_product(rng: random.Random, d: int, max_factors: int = 3) -> Weight:
    k = rng.randint(0, max_factors)
    return Weight.product([random_form(rng, d) for _ in range(k)])


def shifted_form(rng: random.Random, P: Polytope, lo: int = -3, hi: int = 3) -> LinearForm:
    """l(x) + c*n with c = max over vertices of -l(v): nonnegative on the cone over P."""
    d = P.d
    c = [Fraction(rng.randint(lo, hi)) for _ in range(d)]
    shift = max(-sum(a * x for a, x in zip(c, v)) for v in P.vertices)
    shift += rng.choice([0, 0, Fraction(1, rng.randint(1, 3)), rng.randint(1, 2)])
    return LinearForm(tuple(c) + (shift,))


def rp_weight(rng: random.Random, P: Polytope, max_factors: int = 3, max_terms: int = 2) -> Weight:
    """Sum of positive multiples of products of vertex-shifted forms (one degree)."""
    m = rng.randint(0, max_factors)
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        scalar = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        terms.append(WeightTerm(scalar, tuple(shifted_form(rng, P) for _ in range(m))))
    return Weight(tuple(terms), m)


def squared_product(rng: random.Random, d: int, factors: int = 2) -> Weight:
    """(l_1 ... l_k)^2 written as the product l_1 l_1 ... l_k l_k."""
    forms = [random_form(rng, d) for _ in range(factors)]
    doubled = [f for f in forms for _ in range(2)]
    pairs = tuple((2 * i, 2 * i + 1) for i in range(factors))
    return Weight((WeightTerm(1, tuple(doubled), Certificate.SP, pairs),))


def random_lattice_simplex(rng: random.Random, d: int, r: int, lo: int = -3, hi: int = 3) -> tuple:
    """r+1 affinely independent lattice points in Z^d."""
    while True:
        pts = [tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(r + 1)]
        if affine_rank(pts) == r:
            return tuple(pts)


def random_half_open(rng: random.Random, vertices: tuple) -> HalfOpenSimplex:
    k = len(vertices)
    strict = frozenset(i for i in range(k) if rng.random() < 0.5)
    return HalfOpenSimplex(vertices, strict)


def random_pyramid(rng: random.Random, F: HalfOpenSimplex, s: int, den: int = 1, lo: int = -3, hi: int = 3):
    """s-fold pyramid over F with apexes in (1/den)Z^d; None if F has no room."""
    d = F.d
    if F.dim + s > d:
        return None
    verts = list(F.vertices)
    apexes = []
    while len(apexes) < s:
        a = tuple(random_rational(rng, lo, hi, den) for _ in range(d))
        if affine_rank(verts + [a]) == len(verts):
            verts.append(a)
            apexes.append(a)
    return pyramid_simplex(F, apexes)


def nested_lattice_pair(rng: random.Random, d: int, lo: int = -3, hi: int = 3) -> tuple[Polytope, Polytope]:
    """(P, Q) with P the hull of some lattice points of the lattice polytope Q.

    P may be empty or of any dimension up to dim Q.
    """
    from .oracle import lattice_points

    while True:
        Q = lattice_polytope(rng, d, lo, hi, rng.randint(d + 1, d + 3))
        if Q.dim >= 1:
            break
    pts = lattice_points(Q, 1)
    k = rng.randint(0, min(len(pts), d + 2))
    chosen = rng.sample(pts, k)
    P = Polytope.hull(chosen) if chosen else Polytope.empty(d)
    return P, Q


def nested_rational_pair(rng: random.Random, d: int, max_den: int = 3) -> tuple[Polytope, Polytope]:
    """(P, Q) of equal dimension d with P inside Q.

    P is spanned by vertices of Q, midpoints of pairs of vertices, and
    random grid points of Q.
    """
    Q = random_full_polytope(rng, d, max_den=max_den)
    V = Q.vertices
    pool = set(V)
    pool.update(tuple((a + b) / 2 for a, b in zip(u, v)) for u in V for v in V if u < v)
    den = rng.randint(1, max_den)
    for _ in range(20):
        p = tuple(random_rational(rng, -3, 3, den) for _ in range(d))
        if Q.contains(p):
            pool.add(p)
    pool = sorted(pool)
    while True:
        pts = rng.sample(pool, min(len(pool), d + 1 + rng.randint(0, 1)))
        if affine_rank(pts) == d:
            return Polytope.hull(pts), Q
