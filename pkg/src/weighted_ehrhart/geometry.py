"""Rational polytopes, placing triangulations and half-open decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Iterable, Optional, Sequence

from . import linalg

Point = tuple  # tuple[Fraction, ...]

ANCHOR_BASES = (3, 5, 7, 11, 13, 17, 19, 23)


class GeometryError(ValueError):
    pass


def to_point(coords: Iterable) -> Point:
    return tuple(Fraction(c) for c in coords)


def affine_rank(points: Sequence[Point]) -> int:
    """Affine dimension of the points (-1 for none)."""
    if not points:
        return -1
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    return linalg.rank(diffs) if diffs else 0


def barycentric(cell: Sequence[Point], p: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Affine coordinates of p with respect to affinely independent points.

    Returns None when p is outside the affine hull of ``cell``.
    """
    d = len(p)
    A = [[v[i] for v in cell] for i in range(d)] + [[1] * len(cell)]
    return linalg.solve_rational(A, list(p) + [1])


def _in_hull_of(points: Sequence[Point], p: Point) -> bool:
    for cell in placing_triangulation(points):
        c = barycentric([points[i] for i in cell], p)
        if c is not None and all(x >= 0 for x in c):
            return True
    return False


@dataclass(frozen=True)
class Polytope:
    """Convex hull of an irredundant list of rational vertices.

    ``ambient_dim`` is only consulted when the vertex list is empty.
    """

    vertices: tuple
    ambient_dim: int = field(default=-1, compare=False)

    def __post_init__(self):
        verts = tuple(to_point(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if verts:
            d = len(verts[0])
            if any(len(v) != d for v in verts):
                raise GeometryError("vertices have different lengths")
            if self.ambient_dim not in (-1, d):
                raise GeometryError("ambient_dim does not match vertex length")
            object.__setattr__(self, "ambient_dim", d)
            _check_irredundant(verts)
        elif self.ambient_dim < 0:
            raise GeometryError("the empty polytope needs an explicit ambient_dim")

    @classmethod
    def hull(cls, points: Iterable) -> "Polytope":
        """Convex hull of arbitrary points; non-vertices are dropped."""
        pts = list(dict.fromkeys(to_point(p) for p in points))
        keep = [p for i, p in enumerate(pts) if not _in_hull_of(pts[:i] + pts[i + 1 :], p)]
        return cls(tuple(keep))

    @classmethod
    def empty(cls, d: int) -> "Polytope":
        return cls((), d)

    @property
    def d(self) -> int:
        return self.ambient_dim

    @cached_property
    def dim(self) -> int:
        return affine_rank(self.vertices)

    @cached_property
    def denominator(self) -> int:
        return denominator(self)

    def is_empty(self) -> bool:
        return not self.vertices

    def dilate(self, k) -> "Polytope":
        k = Fraction(k)
        return Polytope(tuple(tuple(k * x for x in v) for v in self.vertices), self.ambient_dim)

    def contains(self, p: Sequence) -> bool:
        p = to_point(p)
        for cell in triangulate(self):
            c = barycentric([self.vertices[i] for i in cell], p)
            if c is not None and all(x >= 0 for x in c):
                return True
        return False


def _check_irredundant(verts):
    if len(set(verts)) != len(verts):
        raise GeometryError("repeated vertex")
    if affine_rank(verts) == len(verts) - 1:
        return
    for i, v in enumerate(verts):
        if _in_hull_of(verts[:i] + verts[i + 1 :], v):
            raise GeometryError(f"vertex {i} {tuple(str(x) for x in v)} is not extreme")


def denominator(P: Polytope) -> int:
    q = 1
    for v in P.vertices:
        for x in v:
            q = lcm(q, x.denominator)
    return q


def point_denominator(points: Iterable[Point]) -> int:
    q = 1
    for v in points:
        for x in v:
            q = lcm(q, Fraction(x).denominator)
    return q


# -- triangulation ------------------------------------------------------------


def placing_triangulation(points: Sequence[Point]) -> list[tuple[int, ...]]:
    """Placing triangulation of the points in the given order.

    Works for any finite point list; points already inside the hull of the
    earlier ones are skipped. Cells are sorted index tuples.
    """
    cells: list[tuple[int, ...]] = []
    for idx, p in enumerate(points):
        if not cells:
            cells = [(idx,)]
            continue
        ref = cells[0]
        if barycentric([points[i] for i in ref], p) is None:
            cells = [c + (idx,) for c in cells]
            continue
        facet_count: dict[tuple[int, ...], int] = {}
        for c in cells:
            for k in range(len(c)):
                f = c[:k] + c[k + 1 :]
                facet_count[f] = facet_count.get(f, 0) + 1
        new = []
        for c in cells:
            coords = None
            for k in range(len(c)):
                f = c[:k] + c[k + 1 :]
                if facet_count[f] != 1:
                    continue
                if coords is None:
                    coords = barycentric([points[i] for i in c], p)
                if coords[k] < 0:
                    new.append(f + (idx,))
        cells.extend(new)
    return cells


@lru_cache(maxsize=512)
def triangulate(P: Polytope) -> tuple[tuple[int, ...], ...]:
    """Triangulation of P without new vertices, as vertex-index tuples.

    Vertices are placed in lexicographic order, so the result only depends
    on the vertex set and its listing order.
    """
    if P.is_empty():
        raise GeometryError("cannot triangulate the empty polytope")
    order = sorted(range(len(P.vertices)), key=lambda i: P.vertices[i])
    if len(P.vertices) == P.dim + 1:
        return (tuple(range(len(P.vertices))),)
    cells = placing_triangulation([P.vertices[i] for i in order])
    return tuple(tuple(sorted(order[i] for i in c)) for c in cells)


@dataclass(frozen=True)
class HalfOpenSimplex:
    """Simplex with the facets opposite the ``strict`` vertex indices removed.

    Equivalently, barycentric coordinate c_i is required to be positive for
    each i in ``strict`` and nonnegative otherwise.
    """

    vertices: tuple
    strict: frozenset = frozenset()

    def __post_init__(self):
        verts = tuple(to_point(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "strict", frozenset(self.strict))
        if not verts:
            raise GeometryError("a simplex needs at least one vertex")
        if affine_rank(verts) != len(verts) - 1:
            raise GeometryError("simplex vertices are affinely dependent")
        if not self.strict <= set(range(len(verts))):
            raise GeometryError("strict index out of range")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def d(self) -> int:
        return len(self.vertices[0])

    @property
    def denominator(self) -> int:
        return point_denominator(self.vertices)

    def contains(self, p: Sequence) -> bool:
        c = barycentric(self.vertices, to_point(p))
        if c is None:
            return False
        return all((x > 0) if i in self.strict else (x >= 0) for i, x in enumerate(c))


def anchor_point(P: Polytope, base: int) -> Point:
    weights = [Fraction(base) ** i for i in range(len(P.vertices))]
    total = sum(weights)
    return tuple(
        sum(w * v[k] for w, v in zip(weights, P.vertices)) / total for k in range(P.d)
    )


def half_open_decomposition(
    P: Polytope, cells: Optional[Sequence[Sequence[int]]] = None
) -> list[HalfOpenSimplex]:
    """Partition P into half-open simplices, one per triangulation cell.

    A facet of a cell is removed when the anchor point lies strictly on the
    far side of its hyperplane. The anchor is a weighted mean of the vertices
    with weights base^i; bases are tried in order until the anchor avoids all
    facet hyperplanes.
    """
    if cells is None:
        cells = triangulate(P)
    cell_points = [[P.vertices[i] for i in c] for c in cells]
    for base in ANCHOR_BASES:
        anchor = anchor_point(P, base)
        out = []
        for pts in cell_points:
            coords = barycentric(pts, anchor)
            if coords is None:
                raise GeometryError("cell does not span the affine hull of P")
            if any(c == 0 for c in coords):
                break
            out.append(HalfOpenSimplex(tuple(pts), frozenset(i for i, c in enumerate(coords) if c < 0)))
        else:
            return out
    raise GeometryError(f"anchor stayed degenerate after {len(ANCHOR_BASES)} attempts")


@lru_cache(maxsize=512)
def decompose(P: Polytope) -> tuple[HalfOpenSimplex, ...]:
    return tuple(half_open_decomposition(P))


def pyramid(P: Polytope, apexes: Iterable) -> Polytope:
    """conv(P and the apexes); every apex must leave the current affine hull."""
    verts = list(P.vertices)
    for a in apexes:
        a = to_point(a)
        if verts and len(a) != len(verts[0]):
            raise GeometryError("apex has the wrong length")
        if verts and affine_rank(verts + [a]) != affine_rank(verts) + 1:
            raise GeometryError(f"apex {tuple(str(x) for x in a)} lies in the affine hull")
        verts.append(a)
    return Polytope(tuple(verts), P.ambient_dim)


def pyramid_simplex(F: HalfOpenSimplex, apexes: Iterable) -> HalfOpenSimplex:
    """Pyramid over a half-open simplex; the new apex facets stay closed."""
    verts = list(F.vertices)
    for a in apexes:
        a = to_point(a)
        if affine_rank(verts + [a]) != len(verts):
            raise GeometryError("apex lies in the affine hull")
        verts.append(a)
    return HalfOpenSimplex(tuple(verts), F.strict)


def linear_form_from_vertex_values(S: Polytope, values: Sequence) -> tuple[Fraction, ...]:
    """Coefficients c in Q^(d+1) with c . (u_i, 1) = values[i] for each vertex u_i."""
    verts = S.vertices
    if len(values) != len(verts):
        raise GeometryError("need one value per vertex")
    A = [list(v) + [1] for v in verts]
    if linalg.rank(A) != len(verts):
        raise GeometryError("homogenized vertices are linearly dependent")
    c = linalg.solve_rational(A, [Fraction(x) for x in values])
    if c is None:
        raise GeometryError("inconsistent vertex values")
    return c


def normalized_volume(points: Sequence[Point]) -> Fraction:
    """r! times the r-volume of a simplex, measured in the lattice of its affine span.

    Only meaningful for full-dimensional simplices (r = d), where it is
    |det (u_i, 1)|.
    """
    M = [list(v) + [1] for v in points]
    return abs(Fraction(linalg.det(M)))
