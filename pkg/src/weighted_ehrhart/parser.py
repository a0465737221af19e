"""Concrete syntax: weight expressions and the JSON polytope format.

Weight grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | base ('^' uint)?
    base   := rational | var | '(' expr ')'
    var    := 'x1' .. 'xd' | 'n'

``n`` is the dilation variable (the height coordinate). Unary minus is an
extension of the bare grammar so that ``-x1`` can be written directly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .geometry import Polytope
from .weights import LinearForm, Weight, WeightTerm, expand_term

HEIGHT = 0  # Var index used for n


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    index: int  # 1..d, or HEIGHT for n


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Union[Num, Var, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+|n)|(.))")


def _tokenize(s: str):
    toks = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m.end() == pos or not m.group(0).strip():
            break
        num, var, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("num", int(num), start))
        elif var is not None:
            toks.append(("var", var, start))
        elif sym in "+-*^/()":
            toks.append((sym, sym, start))
        else:
            raise ParseError(f"unexpected character {sym!r}", start)
        pos = m.end()
    toks.append(("end", None, len(s)))
    return toks


class _Parser:
    def __init__(self, s: str, d: int):
        self.toks = _tokenize(s)
        self.i = 0
        self.d = d

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor())
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("num")
            return Pow(base, tok[1])
        return base

    def base(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.take("num")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                return Num(Fraction(val, den[1]))
            return Num(Fraction(val))
        if kind == "var":
            self.take()
            if val == "n":
                return Var(HEIGHT)
            k = int(val[1:])
            if k < 1 or k > self.d:
                raise ParseError(f"variable {val} out of range for dimension {self.d}", pos)
            return Var(k)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {found}", pos)


def parse_weight(s: str, d: int) -> Node:
    p = _Parser(s, d)
    node = p.expr()
    p.take("end")
    return node


# -- printing -----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def to_string(node: Node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return "n" if node.index == HEIGHT else f"x{node.index}"
    if isinstance(node, Neg):
        inner = to_string(node.arg)
        return "-" + (f"({inner})" if _prec(node.arg) < 3 else inner)
    if isinstance(node, Pow):
        inner = to_string(node.base)
        return (f"({inner})" if _prec(node.base) < 5 else inner) + f"^{node.exp}"
    p = _PREC[node.op]
    left = to_string(node.left)
    right = to_string(node.right)
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# -- lowering to weights ------------------------------------------------------

Terms = list  # list[tuple[Fraction, tuple[LinearForm, ...]]]


def _var_form(index: int, d: int) -> LinearForm:
    k = d if index == HEIGHT else index - 1
    return LinearForm.coordinate(k, d + 1)


def _mul_terms(a: Terms, b: Terms) -> Terms:
    return [(ca * cb, fa + fb) for ca, fa in a for cb, fb in b if ca * cb]


def _merge_linear(terms: Terms, d: int) -> Terms:
    """Collapse a sum of single linear factors into one form; same for constants."""
    if not terms:
        return terms
    degrees = {len(f) for _, f in terms}
    if degrees == {0}:
        c = sum((c for c, _ in terms), Fraction(0))
        return [(c, ())] if c else []
    if degrees == {1}:
        acc = [Fraction(0)] * (d + 1)
        for c, (f,) in terms:
            for k, a in enumerate(f.coeffs):
                acc[k] += c * a
        if not any(acc):
            return []
        return [(Fraction(1), (LinearForm(tuple(acc)),))]
    return terms


def to_terms(node: Node, d: int) -> Terms:
    """Sum of scaled products of linear forms, keeping linear factors intact."""
    if isinstance(node, Num):
        return [(node.value, ())] if node.value else []
    if isinstance(node, Var):
        return [(Fraction(1), (_var_form(node.index, d),))]
    if isinstance(node, Neg):
        return [(-c, f) for c, f in to_terms(node.arg, d)]
    if isinstance(node, Pow):
        base = to_terms(node.base, d)
        if len(base) == 1:
            c, f = base[0]
            return [(c**node.exp, f * node.exp)]
        out: Terms = [(Fraction(1), ())]
        for _ in range(node.exp):
            out = _mul_terms(out, base)
        return out
    left, right = to_terms(node.left, d), to_terms(node.right, d)
    if node.op == "*":
        return _mul_terms(left, right)
    if node.op == "-":
        right = [(-c, f) for c, f in right]
    return _merge_linear(left + right, d)


def weight_parts(node: Node, d: int) -> list[tuple[int, Weight]]:
    """Homogeneous parts of the expression, highest degree first."""
    by_degree: dict[int, list[WeightTerm]] = {}
    for c, factors in to_terms(node, d):
        by_degree.setdefault(len(factors), []).append(WeightTerm(c, factors))
    return [(m, Weight(tuple(by_degree[m]), m)) for m in sorted(by_degree, reverse=True)]


def expand(node: Node, d: int) -> dict[tuple, Fraction]:
    """Monomial expansion; exponent vectors have length d+1 (last entry: n)."""
    out: dict[tuple, Fraction] = {}
    for c, factors in to_terms(node, d):
        if not factors:
            key = (0,) * (d + 1)
            out[key] = out.get(key, Fraction(0)) + c
            continue
        for e, v in expand_term(WeightTerm(c, factors)).items():
            out[e] = out.get(e, Fraction(0)) + v
    return {e: c for e, c in out.items() if c}


# -- polytope files -----------------------------------------------------------


class PolytopeFormatError(ValueError):
    pass


def _entry(x) -> Fraction:
    if isinstance(x, bool):
        raise PolytopeFormatError(f"bad coordinate {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise PolytopeFormatError(f"bad coordinate {x!r}") from None
    raise PolytopeFormatError(f"coordinates must be integers or 'p/q' strings, got {x!r}")


def parse_polytope(doc: str) -> Polytope:
    try:
        data = json.loads(doc)
    except json.JSONDecodeError as e:
        raise PolytopeFormatError(f"malformed JSON: {e}") from None
    if not isinstance(data, dict) or "vertices" not in data:
        raise PolytopeFormatError('expected an object with a "vertices" list')
    rows = data["vertices"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise PolytopeFormatError('"vertices" must be a list of coordinate lists')
    if rows and len({len(r) for r in rows}) != 1:
        raise PolytopeFormatError("ragged vertex rows")
    verts = tuple(tuple(_entry(x) for x in r) for r in rows)
    d = data.get("ambient_dim", len(rows[0]) if rows else -1)
    if not rows and (not isinstance(d, int) or d < 0):
        raise PolytopeFormatError('an empty polytope needs "ambient_dim"')
    try:
        return Polytope(verts, d)
    except ValueError as e:
        raise PolytopeFormatError(str(e)) from None


def _json_number(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def serialize_polytope(P: Polytope) -> str:
    data = {"vertices": [[_json_number(x) for x in v] for v in P.vertices]}
    if P.is_empty():
        data["ambient_dim"] = P.d
    return json.dumps(data)
