"""Command line interface.

Exit status: 0 on success or PASS, 1 when a mathematical check fails
(a witness is printed), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .analysis import check_monotonicity, check_nonneg_coeffs, h2_tensor, is_psd, nonneg_on_ray
from .eulerian import eulerian_poly
from .geometry import GeometryError, Polytope, decompose
from .oracle import ScanTooLarge, verify_series
from .parallelepiped import cone_generators, enumerate_points
from .parser import ParseError, PolytopeFormatError, parse_polytope, parse_weight, weight_parts
from .poly import coefficient_strings, format_poly
from .series import HStarResult, hstar, hstar_mixed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_polytope(path: str) -> Polytope:
    try:
        with open(path) as fh:
            return parse_polytope(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _parts(P: Polytope, text: str):
    return weight_parts(parse_weight(text, P.d), P.d)


def _hstar(P: Polytope, parts) -> HStarResult:
    if len(parts) == 1:
        return hstar(P, parts[0][1])
    return hstar_mixed(P, parts)


def _homogeneous(P: Polytope, text: str):
    parts = _parts(P, text)
    if len(parts) > 1:
        raise UsageError("this check needs a homogeneous weight")
    if not parts:
        raise UsageError("the weight is identically zero")
    return parts[0][1]


def _result_json(R: HStarResult) -> dict:
    return {"numerator": coefficient_strings(R.numerator), "period": R.period, "exponent": R.exponent}


def _result_text(R: HStarResult) -> str:
    base = "t" if R.period == 1 else f"t^{R.period}"
    return f"{format_poly(R.numerator)}\n/ (1 - {base})^{R.exponent}"


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data))
    else:
        print(text)


def _verdict_json(v) -> dict:
    w = v.witness
    if isinstance(w, (tuple, list)):
        w = [str(x) for x in w]
    elif w is not None:
        w = str(w)
    return {"passed": v.passed, "witness": w, "note": v.note}


# -- subcommands ----------------------------------------------------------------


def cmd_hstar(args) -> int:
    P = _load_polytope(args.polytope)
    R = _hstar(P, _parts(P, args.weight))
    _emit(args, _result_text(R), _result_json(R))
    return EXIT_OK


def cmd_series(args) -> int:
    P = _load_polytope(args.polytope)
    R = _hstar(P, _parts(P, args.weight))
    coeffs = R.expand(args.dilations)
    text = "\n".join(f"{n}: {c}" for n, c in enumerate(coeffs))
    _emit(args, text, {**_result_json(R), "series": [str(c) for c in coeffs]})
    return EXIT_OK


def cmd_decompose(args) -> int:
    P = _load_polytope(args.polytope)
    cells = decompose(P)
    q = P.denominator if not P.is_empty() else 1
    out, lines = [], []
    for k, H in enumerate(cells):
        entry = {
            "vertices": [[str(x) for x in v] for v in H.vertices],
            "strict": sorted(H.strict),
        }
        lines.append(f"cell {k}: vertices {[tuple(str(x) for x in v) for v in H.vertices]} strict {sorted(H.strict)}")
        if args.dump_points:
            pts = enumerate_points(cone_generators(H, q))
            entry["points"] = [
                {"point": list(p.point), "lambdas": [str(x) for x in p.lambdas], "height": p.height}
                for p in pts
            ]
            for p in pts:
                lam = ", ".join(str(x) for x in p.lambdas)
                lines.append(f"  point {p.point} height {p.height} lambda ({lam})")
        out.append(entry)
    _emit(args, "\n".join(lines), {"period": q, "cells": out})
    return EXIT_OK


def cmd_eulerian(args) -> int:
    try:
        lam = Fraction(args.LAMBDA)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad lambda {args.LAMBDA!r}") from None
    if args.D < 0:
        raise UsageError("degree must be nonnegative")
    A = eulerian_poly(args.D, lam)
    _emit(args, format_poly(A), {"coefficients": coefficient_strings(A)})
    return EXIT_OK


def _report(args, v, extra: Optional[dict] = None) -> int:
    text = "PASS" if v.passed else f"FAIL: witness {v.witness} ({v.note})"
    data = _verdict_json(v)
    if extra:
        data.update(extra)
    _emit(args, text, data)
    return EXIT_OK if v.passed else EXIT_FAIL


def cmd_check(args) -> int:
    P = _load_polytope(args.polytope)
    if args.kind in ("nonneg", "ray"):
        R = _hstar(P, _parts(P, args.weight))
        test = check_nonneg_coeffs if args.kind == "nonneg" else nonneg_on_ray
        return _report(args, test(R.numerator), {"numerator": coefficient_strings(R.numerator)})
    if args.inside is None:
        raise UsageError("check monotone needs --inside")
    inner = _load_polytope(args.inside)
    w = _homogeneous(P, args.weight)
    g = args.g
    if g is None:
        g = lcm(*(X.denominator for X in (inner, P) if not X.is_empty()), 1)
    rep = check_monotonicity(inner, P, w, g, args.mode)
    extra = {"left": coefficient_strings(rep.left), "right": coefficient_strings(rep.right), "g": g}
    if args.format == "text":
        print(f"inner: {format_poly(rep.left)}")
        print(f"outer: {format_poly(rep.right)}")
    return _report(args, rep.verdict, extra)


def cmd_tensor(args) -> int:
    P = _load_polytope(args.polytope)
    T = h2_tensor(P)
    mats = [[[str(x) for x in row] for row in M.entries] for M in T.coefficients]
    lines = []
    failed = []
    for i, M in enumerate(T.coefficients):
        lines.append(f"h_{i}:")
        lines.extend("  " + " ".join(str(x) for x in row) for row in M.entries)
        if args.psd:
            v = is_psd(M)
            lines.append("  PSD" if v.passed else f"  not PSD: witness {v.witness} ({v.note})")
            if not v.passed:
                failed.append({"index": i, **_verdict_json(v)})
    data = {"coefficients": mats}
    if args.psd:
        data["psd"] = not failed
        data["failures"] = failed
    _emit(args, "\n".join(lines), data)
    return EXIT_FAIL if failed else EXIT_OK


def _verify_random(args) -> int:
    from .randomgen import random_polytope, random_product, rng_for

    seed = 0 if args.seed is None else args.seed
    failures = []
    for i in range(args.random):
        rng = rng_for(seed, "verify", i)
        P = random_polytope(rng)
        w = random_product(rng, P.d)
        rep = verify_series(P, w, args.dilations)
        if not rep.passed:
            failures.append(i)
            if args.format == "text":
                print(f"instance {i}: FAIL at n={rep.first_mismatch} vertices {P.vertices}")
    _emit(
        args,
        f"{args.random - len(failures)}/{args.random} instances PASS (seed {seed})",
        {"seed": seed, "instances": args.random, "failures": failures},
    )
    return EXIT_FAIL if failures else EXIT_OK


def cmd_verify(args) -> int:
    if args.random is not None:
        return _verify_random(args)
    if args.polytope is None or args.weight is None:
        raise UsageError("verify needs --polytope and --weight (or --random K)")
    P = _load_polytope(args.polytope)
    parts = _parts(P, args.weight)
    rep = verify_series(P, parts, args.dilations, result=_hstar(P, parts))
    if rep.passed:
        text = f"PASS: series matches direct sums for n = 0..{args.dilations}"
    else:
        n = rep.first_mismatch
        text = f"FAIL at n={n}: series {rep.computed[n]}, direct sum {rep.expected[n]}"
    data = {
        "passed": rep.passed,
        "first_mismatch": rep.first_mismatch,
        "expected": [str(c) for c in rep.expected],
        "computed": [str(c) for c in rep.computed],
    }
    _emit(args, text, data)
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for random modes")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(
        prog="weighted-ehrhart",
        description="Weighted Ehrhart series and h*-polynomials of rational polytopes.",
        parents=[common],
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hstar", parents=[common], help="weighted h*-polynomial")
    p.add_argument("--polytope", required=True)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_hstar)

    p = sub.add_parser("series", parents=[common], help="series coefficients up to t^N")
    p.add_argument("--polytope", required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--dilations", type=int, required=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("decompose", parents=[common], help="half-open decomposition")
    p.add_argument("--polytope", required=True)
    p.add_argument("--dump-points", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("eulerian", parents=[common], help="generalized Eulerian polynomial")
    p.add_argument("D", type=int)
    p.add_argument("LAMBDA")
    p.set_defaults(func=cmd_eulerian)

    p = sub.add_parser("check", parents=[common], help="nonnegativity and monotonicity checks")
    p.add_argument("kind", choices=("nonneg", "ray", "monotone"))
    p.add_argument("--polytope", required=True)
    p.add_argument("--inside")
    p.add_argument("--weight", required=True)
    p.add_argument("--g", type=int)
    p.add_argument("--mode", choices=("coeffwise", "ray"), default="coeffwise")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tensor", parents=[common], help="h2-tensor polynomial")
    p.add_argument("kind", choices=("h2",))
    p.add_argument("--polytope", required=True)
    p.add_argument("--psd", action="store_true")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("verify", parents=[common], help="compare with brute-force sums")
    p.add_argument("--polytope")
    p.add_argument("--weight")
    p.add_argument("--dilations", type=int, required=True)
    p.add_argument("--random", type=int, metavar="K", help="check K random instances instead")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    args.format = getattr(args, "format", "text")
    args.seed = getattr(args, "seed", None)
    if getattr(args, "dilations", 0) < 0:
        print("error: --dilations must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError, PolytopeFormatError, GeometryError, ScanTooLarge, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
