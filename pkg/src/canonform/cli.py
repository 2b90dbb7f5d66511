"""``canonform`` command line: canonical expansions, check suites, form evaluation.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 refused near a pole.
``--rank`` follows the matrix-size convention for type A (``--algebra A
--rank 3`` is sl_3) and the Lie rank for B, C, D.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

import jsonschema

from . import checks
from . import forms as F
from . import theta as th
from . import trees as tr
from .canonical import CanonicalExpansion, etas, omega_g, product_formula
from .lie import RootSystem, build_root_system
from .shuffle import DualVector, format_fraction

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_POLE = 0, 1, 2, 3
MAX_TOTAL = 6
MAX_LIE_RANK = 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- serialization


def complex_json(c: complex) -> list[float]:
    c = complex(c)
    return [c.real, c.imag]


def parse_complex(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    return complex(float(x[0]), float(x[1]))


def dump(obj: Any, path: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


# ---------------------------------------------------------------- argument handling


def parse_k(text: str) -> tuple[int, ...]:
    try:
        k = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--k expects comma separated integers, got {text!r}")
    if any(x < 0 for x in k) or not any(k):
        raise argparse.ArgumentTypeError(f"--k needs nonnegative entries, not all zero, got {text!r}")
    return k


def root_system(algebra: str, rank: int) -> RootSystem:
    try:
        rs = build_root_system(algebra, rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if rs.rank > MAX_LIE_RANK:
        raise UsageError(f"{rs.name} exceeds the supported Lie rank {MAX_LIE_RANK}")
    return rs


def _check_k(k: Sequence[int], rs: RootSystem, bound: int) -> None:
    if len(k) != rs.rank:
        raise UsageError(f"{rs.name} needs k with {rs.rank} entries, got {len(k)}")
    if sum(k) > bound:
        raise UsageError(f"|k| = {sum(k)} exceeds the bound {bound} (raise it with --max-total)")


def _monomial(rs: RootSystem, p: Sequence[int]) -> str:
    parts = []
    for b, e in zip(rs.roots, p):
        if e:
            parts.append(f"F[{b.label}]" + (f"^{e}" if e > 1 else ""))
    return " ".join(parts)


# ---------------------------------------------------------------- canonical


def canonical_report(exp: CanonicalExpansion) -> dict:
    rs = exp.rs
    eta_list = etas(rs)
    terms = []
    for p, T in exp:
        denom = 1
        for e in p:
            for a in range(2, e + 1):
                denom *= a
        terms.append({
            "p": list(p),
            "monomial": _monomial(rs, p),
            "T": T.to_json(),
            "factorization": {
                "scale": format_fraction(Fraction(1, denom)),
                "eta_powers": [{"root": b.label, "power": e} for b, e in zip(rs.roots, p) if e],
                "verified": product_formula(p, rs, eta_list) == T,
            },
        })
    return {
        "algebra": rs.name,
        "k": list(exp.k),
        "roots": rs.to_json()["positive_roots"],
        "terms": terms,
    }


def expansion_from_json(data: dict, rs: RootSystem, k: Sequence[int]) -> CanonicalExpansion:
    try:
        if data["algebra"] != rs.name or tuple(data["k"]) != tuple(k):
            raise UsageError(f"expansion is for {data['algebra']} k={data['k']}, not {rs.name} k={list(k)}")
        terms = {tuple(t["p"]): DualVector.from_json(t["T"]) for t in data["terms"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed expansion file: {exc}") from exc
    return CanonicalExpansion(tuple(k), rs, terms)


def cmd_canonical(args) -> int:
    rs = root_system(args.algebra, args.rank)
    _check_k(args.k, rs, args.max_total)
    dump(canonical_report(omega_g(args.k, rs)), args.json)
    return EXIT_OK


# ---------------------------------------------------------------- check


def cmd_check(args) -> int:
    report = checks.run_suite(args.suite)
    dump(report, args.json)
    for rep in report["checks"]:
        status = "pass" if rep["pass"] else "FAIL"
        print(f"{status} {rep['check']}", file=sys.stderr)
    return EXIT_OK if report["pass"] else EXIT_FAIL


# ---------------------------------------------------------------- eval

_COMPLEX = {
    "oneOf": [
        {"type": "number"},
        {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    ]
}
POINT_SCHEMA = {
    "type": "object",
    "properties": {
        "tau": _COMPLEX,
        "z": _COMPLEX,
        "lambda": {"type": "array", "items": _COMPLEX},
        "weights": {"type": "array", "items": _COMPLEX},
        "t": {"type": "array", "items": {"type": "array", "items": _COMPLEX}},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "N": {"type": "integer", "minimum": 0},
    },
    "required": ["t"],
    "not": {"required": ["lambda", "weights"]},
    "additionalProperties": False,
}
BATCH_SCHEMA = {
    "type": "object",
    "properties": {"points": {"type": "array", "items": POINT_SCHEMA, "minItems": 1}},
    "required": ["points"],
    "additionalProperties": False,
}


def load_points(data: Any) -> list[dict]:
    schema = BATCH_SCHEMA if isinstance(data, dict) and "points" in data else POINT_SCHEMA
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "top level"
        msg = exc.message if len(exc.message) <= 120 else exc.message[:117] + "..."
        raise UsageError(f"invalid point file at {where}: {msg}") from exc
    return data["points"] if "points" in data else [data]


def point_assignment(point: dict, k: Sequence[int], rs: RootSystem, form: str) -> tuple[F.PointAssignment, Any]:
    t = point["t"]
    if [len(row) for row in t] != list(k):
        raise UsageError(f"t must list {list(k)} values per colour, got {[len(row) for row in t]}")
    values = {(i + 1, j + 1): parse_complex(x) for i, row in enumerate(t) for j, x in enumerate(row)}
    z = parse_complex(point.get("z", 0))
    if form == "rat":
        return F.PointAssignment(k, values, z), None
    if "tau" not in point:
        raise UsageError("the theta form needs tau")
    try:
        ctx = th.ThetaContext(parse_complex(point["tau"]), point.get("tol", 1e-14), point.get("N", 0))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if "lambda" in point:
        try:
            pt = F.PointAssignment.from_lambda(k, rs, [parse_complex(x) for x in point["lambda"]], values, z)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    elif "weights" in point:
        w = [parse_complex(x) for x in point["weights"]]
        if len(w) != rs.rank:
            raise UsageError(f"weights needs {rs.rank} entries, one per colour")
        pt = F.PointAssignment(k, values, z, {v: w[v[0] - 1] for v in tr.vertices_of(k)})
    else:
        raise UsageError("the theta form needs lambda or weights")
    return pt, ctx


def evaluate(exp: CanonicalExpansion, pt: F.PointAssignment, ctx, form: str) -> list[dict]:
    out = []
    for p, T in exp:
        v = F.phi_rat(T, pt) if form == "rat" else F.phi_theta(T, pt, ctx)
        out.append({"p": list(p), "value": complex_json(v)})
    return out


def cmd_eval(args) -> int:
    rs = root_system(args.algebra, args.rank)
    _check_k(args.k, rs, args.max_total)
    points = load_points(_load_json(args.points))
    if args.expansion:
        exp = expansion_from_json(_load_json(args.expansion), rs, args.k)
    else:
        exp = omega_g(args.k, rs)
    results = []
    for n, point in enumerate(points):
        pt, ctx = point_assignment(point, args.k, rs, args.form)
        try:
            values = evaluate(exp, pt, ctx, args.form)
        except F.PoleError as exc:
            print(f"refused: point {n}: {exc}", file=sys.stderr)
            return EXIT_POLE
        results.append({"point": n, "values": values})
    dump({"form": args.form, "algebra": rs.name, "k": list(args.k), "results": results}, args.json)
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="canonform", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def algebra_args(p):
        p.add_argument("--algebra", required=True, choices=["A", "B", "C", "D"], type=str.upper)
        p.add_argument("--rank", required=True, type=int, help="matrix size for A (3 = sl3), Lie rank for B, C, D")
        p.add_argument("--k", required=True, type=parse_k, help="multidegree, e.g. 2,1")
        p.add_argument("--max-total", type=int, default=MAX_TOTAL, help=f"bound on |k| (default {MAX_TOTAL})")

    p = sub.add_parser("canonical", help="PBW expansion of the canonical element")
    algebra_args(p)
    p.add_argument("--json", metavar="OUT", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("check", help="run verification suites")
    p.add_argument("--suite", required=True, choices=["algebra", "elliptic", "cm", "all"])
    p.add_argument("--json", metavar="OUT", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate the rational or theta canonical form at points")
    p.add_argument("--form", required=True, choices=["theta", "rat"])
    algebra_args(p)
    p.add_argument("--points", required=True, help="JSON point file")
    p.add_argument("--expansion", help="JSON written by 'canonform canonical'")
    p.add_argument("--json", metavar="OUT", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_eval)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"canonform: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except F.PoleError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_POLE


if __name__ == "__main__":
    sys.exit(main())
