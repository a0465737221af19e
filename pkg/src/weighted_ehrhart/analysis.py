"""Exact decision procedures for nonnegativity, monotonicity and PSD questions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import linalg
from .geometry import GeometryError, HalfOpenSimplex, Polytope
from .poly import Poly, geometric, poly_gcd, primitive
from .series import HStarResult, hstar
from .weights import Certificate, LinearForm, Weight, WeightTerm


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Any = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.passed


PASS = Verdict(True)


# -- coefficient and ray nonnegativity ----------------------------------------


def check_nonneg_coeffs(p: Poly) -> Verdict:
    """PASS, or the smallest exponent carrying a negative coefficient."""
    for k, c in enumerate(p.coeffs):
        if c < 0:
            return Verdict(False, k, f"coefficient of t^{k} is {c}")
    return PASS


def square_free_factors(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic square-free f_i with p = lc * prod f_i^i."""
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm chain, each member rescaled by a positive constant (signs unchanged)."""
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = primitive(-(seq[-2] % seq[-1]))
        if r.is_zero():
            break
        seq.append(r)
    return [s for s in seq if not s.is_zero()]


def _sign_changes(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations_at(seq: Sequence[Poly], x) -> int:
    return _sign_changes([_sign(s(x)) for s in seq])


def _variations_at_infinity(seq: Sequence[Poly]) -> int:
    return _sign_changes([_sign(s.leading()) for s in seq])


def positive_root_count(p: Poly) -> int:
    """Distinct roots of p in (0, inf), by Sturm's theorem."""
    p = _strip_zero_root(p)
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    return _variations_at(seq, 0) - _variations_at_infinity(seq)


def _strip_zero_root(p: Poly) -> Poly:
    k = 0
    while k < len(p.coeffs) and p.coeffs[k] == 0:
        k += 1
    return Poly(p.coeffs[k:])


def root_bound(p: Poly) -> Fraction:
    lc = abs(p.leading())
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_first_positive_root(p: Poly) -> tuple[Fraction, Fraction]:
    """Interval (a, b] holding exactly the smallest positive root of square-free p."""
    p = _strip_zero_root(p)
    seq = sturm_sequence(p)
    lo, hi = Fraction(0), root_bound(p)

    def count(a, b):
        return _variations_at(seq, a) - _variations_at(seq, b)

    if count(lo, hi) == 0:
        raise ValueError("no positive root")
    while True:
        mid = (lo + hi) / 2
        if p(mid) == 0:
            c_left = count(lo, mid)
            if c_left == 1:
                return (mid, mid)
        c = count(lo, mid)
        if c >= 1:
            hi = mid
            if c == 1 and p(hi) != 0:
                return (lo, hi)
        else:
            lo = mid


def odd_part(p: Poly) -> Poly:
    out = Poly([1])
    for f, mult in square_free_factors(p):
        if mult % 2:
            out = out * f
    return out


def nonneg_on_ray(p: Poly) -> Verdict:
    """Decide p(t) >= 0 for all t >= 0.

    p can only change sign at roots of odd multiplicity, so it suffices to
    count positive roots of the product of the odd-multiplicity square-free
    factors and look at the signs at 0 and at infinity.
    """
    if p.is_zero():
        return PASS
    if p[0] < 0:
        return Verdict(False, Fraction(0), "negative at t = 0")
    o = odd_part(p)
    if positive_root_count(o) > 0:
        a, b = isolate_first_positive_root(o)
        return Verdict(False, (a, b), "sign change at a positive root")
    if p.leading() < 0:
        return Verdict(False, root_bound(p) + 1, "negative leading coefficient")
    return PASS


# -- weight classification ----------------------------------------------------


class WeightClass(enum.Enum):
    RP = "RP"
    SP = "SP"
    UNCERTIFIED = "UNCERTIFIED"


class CertificateError(ValueError):
    pass


def homogenized_vertices(P: Polytope) -> list[tuple]:
    q = P.denominator
    return [tuple(q * x for x in v) + (Fraction(q),) for v in P.vertices]


def _nonneg_on(form: LinearForm, gens) -> bool:
    return all(form(g) >= 0 for g in gens)


def _normalized(form: LinearForm) -> tuple:
    lead = next((c for c in form.coeffs if c), None)
    if lead is None:
        return form.coeffs
    return tuple(c / abs(lead) for c in form.coeffs)


def _term_class(term: WeightTerm, gens) -> WeightClass:
    if term.scalar == 0:
        return WeightClass.RP
    if term.scalar < 0:
        return WeightClass.UNCERTIFIED
    loose = [f for f in term.factors if not _nonneg_on(f, gens)]
    if not loose:
        return WeightClass.RP
    counts: dict[tuple, int] = {}
    for f in loose:
        key = _normalized(f)
        counts[key] = counts.get(key, 0) + 1
    if all(c % 2 == 0 for c in counts.values()):
        return WeightClass.SP
    return WeightClass.UNCERTIFIED


def _check_declared(term: WeightTerm, found: WeightClass, gens) -> None:
    if term.certificate is Certificate.RP and found is not WeightClass.RP:
        raise CertificateError("term declared RP has a factor that is negative on the cone")
    if term.certificate is Certificate.SP:
        if found is WeightClass.UNCERTIFIED:
            raise CertificateError("term declared SP is not a square times nonnegative factors")
        paired = set()
        for i, j in term.pairs:
            if _normalized(term.factors[i]) != _normalized(term.factors[j]):
                raise CertificateError(f"declared pair ({i}, {j}) is not a square")
            paired.update((i, j))
        for i, f in enumerate(term.factors):
            if term.pairs and i not in paired and not _nonneg_on(f, gens):
                raise CertificateError(f"unpaired factor {i} is negative on the cone")


def classify_weight(P: Polytope, w: Weight) -> WeightClass:
    """Certificate check: RP, SP, or UNCERTIFIED (no claim either way).

    Factors are tested on the cone generators (q*u_i, q), which is exact
    because these generate the homogenization of P.
    """
    if P.is_empty():
        return WeightClass.RP
    gens = homogenized_vertices(P)
    result = WeightClass.RP
    for term in w.lift(P.d).terms:
        found = _term_class(term, gens)
        _check_declared(term, found, gens)
        if found is WeightClass.UNCERTIFIED:
            return WeightClass.UNCERTIFIED
        if found is WeightClass.SP:
            result = WeightClass.SP
    return result


# -- monotonicity -------------------------------------------------------------


@dataclass
class MonotonicityReport:
    passed: bool
    left: Poly  # multiplied h* of the inner polytope
    right: Poly  # multiplied h* of the outer polytope
    verdict: Verdict
    inner: Optional[HStarResult] = field(default=None, repr=False)
    outer: Optional[HStarResult] = field(default=None, repr=False)

    def __bool__(self) -> bool:
        return self.passed


def contains_polytope(Q: Polytope, P: Polytope) -> bool:
    return all(Q.contains(v) for v in P.vertices)


def check_monotonicity(
    P: Polytope, Q: Polytope, w: Weight, g: int, mode: str = "coeffwise"
) -> MonotonicityReport:
    """Compare (1 + t^dP + ... + t^(g-dP))^(dim P+m+1) h*_P with the same for Q.

    ``mode`` is "coeffwise" (coefficient-wise comparison) or "ray" (values on
    t >= 0, which needs dim P = dim Q).
    """
    mode = mode.lower()
    if mode not in ("coeffwise", "ray"):
        raise ValueError(f"unknown mode {mode!r}")
    if P.d != Q.d:
        raise GeometryError("polytopes live in different dimensions")
    if not contains_polytope(Q, P):
        raise GeometryError("inner polytope is not contained in the outer one")
    dP = P.denominator if not P.is_empty() else 1
    dQ = Q.denominator if not Q.is_empty() else 1
    if g <= 0 or g % dP or g % dQ:
        raise ValueError(f"g={g} is not a common multiple of {dP} and {dQ}")
    if mode == "ray" and P.dim != Q.dim:
        raise ValueError("ray comparison needs polytopes of the same dimension")
    m = w.degree
    hP, hQ = hstar(P, w), hstar(Q, w)
    left = hP.numerator * geometric(dP, g) ** max(P.dim + m + 1, 0)
    right = hQ.numerator * geometric(dQ, g) ** max(Q.dim + m + 1, 0)
    diff = right - left
    verdict = check_nonneg_coeffs(diff) if mode == "coeffwise" else nonneg_on_ray(diff)
    return MonotonicityReport(verdict.passed, left, right, verdict, hP, hQ)


# -- half-open lattice triangles ----------------------------------------------


def triangle_conditions(H: HalfOpenSimplex, form) -> tuple[bool, bool]:
    """(i) H is neither closed nor open; (ii) ker l meets the relative interiors
    of two sides that are both removed or both kept.

    The side opposite vertex i is removed exactly when i is strict.
    """
    if H.d != 2 or H.dim != 2:
        raise GeometryError("expected a triangle in the plane")
    if H.denominator != 1:
        raise GeometryError("expected lattice vertices")
    if not isinstance(form, LinearForm):
        form = LinearForm(tuple(form))
    form = form.lift(2)
    vals = [form(tuple(v) + (1,)) for v in H.vertices]
    cond_i = 0 < len(H.strict) < 3
    crossing = [i for i in range(3) if vals[(i + 1) % 3] * vals[(i + 2) % 3] < 0]
    cond_ii = any(
        (a in H.strict) == (b in H.strict) for k, a in enumerate(crossing) for b in crossing[k + 1 :]
    )
    return cond_i, cond_ii


# -- rank-2 tensors -------------------------------------------------------------


@dataclass(frozen=True)
class SymMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
            raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def quad(self, v: Sequence) -> Fraction:
        return sum(
            (Fraction(v[i]) * self.entries[i][j] * v[j] for i in range(self.n) for j in range(self.n)),
            Fraction(0),
        )


@dataclass(frozen=True)
class TensorHPoly:
    coefficients: tuple  # SymMatrix per power of t

    def evaluate(self, v: Sequence) -> Poly:
        """The polynomial sum_i (v^T h_i v) t^i."""
        return Poly([M.quad(v) for M in self.coefficients])


def h2_tensor(P: Polytope) -> TensorHPoly:
    """Matrix coefficients h_i with (h_i)_ab = [t^i] h*_{P, x_a x_b}."""
    if P.is_empty() or P.denominator != 1:
        raise GeometryError("h2 tensor needs a nonempty lattice polytope")
    d = P.d
    if P.dim != d:
        raise GeometryError("h2 tensor needs a full-dimensional polytope")
    size = d + 3
    mats = [[[Fraction(0)] * d for _ in range(d)] for _ in range(size)]
    for a in range(d):
        for b in range(a, d):
            w = Weight.product([LinearForm.coordinate(a, d + 1), LinearForm.coordinate(b, d + 1)])
            h = hstar(P, w).numerator
            for i, c in enumerate(h.coeffs):
                mats[i][a][b] = mats[i][b][a] = c
    return TensorHPoly(tuple(SymMatrix(tuple(map(tuple, M))) for M in mats))


def is_psd(M: SymMatrix) -> Verdict:
    """Exact PSD test by symmetric elimination with diagonal pivots.

    Keeps vectors b_i (in original coordinates) whose Gram matrix under M is
    the current Schur complement. A negative diagonal entry, or a zero
    diagonal next to a nonzero off-diagonal entry, yields v with v^T M v < 0.
    """
    n = M.n
    S = [list(r) for r in M.entries]
    B = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    live = list(range(n))
    while live:
        neg = next((i for i in live if S[i][i] < 0), None)
        if neg is not None:
            return _witness(M, B[neg])
        piv = next((i for i in live if S[i][i] > 0), None)
        if piv is None:
            pair = next(((i, j) for i in live for j in live if i < j and S[i][j] != 0), None)
            if pair is None:
                return PASS
            i, j = pair
            s = 1 if S[i][j] > 0 else -1
            return _witness(M, [a - s * b for a, b in zip(B[i], B[j])])
        live.remove(piv)
        p = S[piv][piv]
        for i in live:
            f = S[i][piv] / p
            if f:
                B[i] = [a - f * b for a, b in zip(B[i], B[piv])]
                for j in live:
                    S[i][j] -= f * S[piv][j]
    return PASS


def _witness(M: SymMatrix, v) -> Verdict:
    vec = linalg.clear_denominators(v)
    value = M.quad(vec)
    assert value < 0
    return Verdict(False, vec, f"v^T M v = {value}")
