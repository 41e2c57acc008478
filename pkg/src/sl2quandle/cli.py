"""Command-line entry point: ``sl2quandle {axioms,colorings,torus,longitude,lemmas}``.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error,
3 the search budget was exceeded. Output is JSON by default (floats with
17 significant digits) or CSV with ``--format csv``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import suites
from .diagrams import BudgetExceeded, enumerate_colorings, load_diagram, torus_diagram
from .longitudinal import ATOL, RTOL, longitude_record
from .quandle import ValidationError, builtin, is_involutory, load_quandle, verify_axioms
from .sl2r import mat, mat_det
from .torus import (
    build_family,
    equation_residual,
    family_params,
    hyperbolic_js,
    minus_identity_residual,
    trivial_family,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _number(v: float) -> str:
    if math.isnan(v) or math.isinf(v):
        return "null"
    return format(v, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _number(float(obj))
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def _flatten(obj, prefix: str = "") -> dict:
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}{k}."))
    elif isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            out[prefix[:-1]] = " ".join(_cell(v) for v in obj)
        else:
            for i, v in enumerate(obj):
                out.update(_flatten(v, f"{prefix}{i}."))
    else:
        out[prefix[:-1]] = _cell(obj)
    return out


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return _number(float(v)).replace("null", "")
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    return "" if v is None else str(v)


def to_csv(rows: list[dict]) -> str:
    flat = [_flatten(r) for r in rows]
    fields: list[str] = []
    for row in flat:
        for k in row:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def _emit(args, payload: dict, rows: Optional[list] = None):
    if args.format == "csv":
        sys.stdout.write(to_csv(rows if rows is not None else [payload]))
    else:
        sys.stdout.write(dumps(payload) + "\n")


def _quandle(args):
    if args.file:
        return load_quandle(args.file)
    return builtin(args.builtin)


def _odd_n(n: int):
    if n < 3 or n % 2 == 0:
        raise ValidationError(f"n must be odd and at least 3, got {n}")


def cmd_axioms(args) -> int:
    q = _quandle(args)
    report = verify_axioms(q, max_size=args.max_size)
    kei, pair = is_involutory(q) if report.q2 else (False, None)
    payload = {"quandle": q.name, "size": q.size, **report.to_json(), "involutory": kei,
               "involutory_counterexample": None if pair is None else list(pair)}
    _emit(args, payload)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_colorings(args) -> int:
    q = _quandle(args)
    if args.diagram:
        d = load_diagram(args.diagram)
    else:
        _odd_n(args.n)
        d = torus_diagram(args.n)
    cols = enumerate_colorings(d, q, budget=args.budget, method=args.method)
    payload = {"diagram": d.to_json(), "quandle": q.name, "count": len(cols),
               "colorings": [c.to_json() for c in cols]}
    rows = [{"index": i, "values": c.values} for i, c in enumerate(cols)]
    _emit(args, payload, rows)
    return EXIT_OK


def _family_row(f, tol: float) -> dict:
    row = {"kind": f.kind, "r": f.r, "n": f.n, "j": f.j, "a": float(f.y[0, 0]), "d": float(f.y[1, 1]),
           "b": f.b, "c": f.c, "bc": f.bc, "det": mat_det(f.y),
           "eq1_residual": equation_residual(f.x, f.y, f.k),
           "minus_identity_residual": minus_identity_residual(f) if f.hyperbolic else None}
    residuals = [row["eq1_residual"], abs(row["det"] - 1)]
    if f.hyperbolic:
        residuals.append(row["minus_identity_residual"])
    row["pass"] = all(v <= tol for v in residuals)
    return row


def cmd_torus(args) -> int:
    _odd_n(args.n)
    if args.r <= 0:
        raise ValidationError("r must be positive")
    if args.b == 0:
        raise ValidationError("b must be nonzero")
    js = hyperbolic_js(args.n) if args.j is None else [args.j]
    for j in js:
        family_params(args.r, args.n, j)
    fams = ([] if args.j is not None else [trivial_family(args.r, args.n)])
    fams += [build_family(args.r, args.n, j, args.b) for j in js]
    rows = [_family_row(f, args.tol) for f in fams]
    _emit(args, {"r": args.r, "n": args.n, "families": rows}, rows)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_FAIL


def _parse_matrix(text: str):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"bad matrix {text!r}") from exc
    if len(vals) != 4:
        raise ValidationError("a matrix needs four comma-separated entries a,b,c,d")
    return mat(*vals)


def cmd_longitude(args) -> int:
    _odd_n(args.n)
    if args.r <= 0:
        raise ValidationError("r must be positive")
    g = _parse_matrix(args.g) if args.g else None
    if args.trivial:
        fam = trivial_family(args.r, args.n)
    else:
        if args.j is None:
            raise ValidationError("--j is required unless --trivial is given")
        fam = build_family(args.r, args.n, args.j, args.b)
    rec = longitude_record(fam, g, atol=args.atol, rtol=args.rtol)
    _emit(args, rec.to_json())
    return EXIT_OK if rec.passed else EXIT_FAIL


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v]


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v]


def cmd_lemmas(args) -> int:
    rs, ns = args.r_values, args.n_values
    if not rs or not ns:
        raise ValidationError("the (r, n) grid must be nonempty")
    for n in ns:
        _odd_n(n)
    if any(r <= 0 for r in rs):
        raise ValidationError("r values must be positive")
    names = suites.SUITES if args.lemma == "all" else (args.lemma,)
    results = suites.run_suites(names, rs, ns, m=args.m, instances=args.instances, seed=args.seed)
    payload = {"grid": {"r": rs, "n": ns}, "results": [r.to_json() for r in results]}
    if args.lemma == "roots" and args.m:
        payload["roots"] = [[z.real, z.imag] for z in suites.lambda_solutions(args.m)]
    rows = [{k: v for k, v in r.to_json().items() if k != "failures"} for r in results]
    _emit(args, payload, rows)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # flags are accepted before or after the subcommand; only the top level sets defaults
        g = argparse.ArgumentParser(add_help=False)
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g.add_argument("--tol", type=float, default=dflt(1e-9), help="absolute tolerance for identities")
        g.add_argument("--seed", type=int, default=dflt(0))
        g.add_argument("--format", choices=("json", "csv"), default=dflt("json"))
        return g

    common = global_flags(True)
    parser = argparse.ArgumentParser(
        prog="sl2quandle",
        description="Quandle axioms, torus-knot colorings and SL(2, R) longitudinal values.",
        parents=[global_flags(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def quandle_source(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--builtin", help="trivial:N, dihedral:N, conj-s3, conj-cN, transpositions-s3")
        src.add_argument("--file", help='JSON {"size": n, "table": [[...]]}')

    p = sub.add_parser("axioms", parents=[common], help="check Q1-Q3 exhaustively")
    quandle_source(p)
    p.add_argument("--max-size", type=int, default=None)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("colorings", parents=[common], help="enumerate finite-quandle colorings")
    quandle_source(p)
    p.add_argument("--n", type=int, default=3, help="(2, n)-torus knot, n odd")
    p.add_argument("--diagram", help='JSON {"arcs": n, "crossings": [[over, in, out], ...]}')
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--method", choices=("auto", "brute", "propagate"), default="auto")
    p.set_defaults(func=cmd_colorings)

    p = sub.add_parser("torus", parents=[common], help="S²₁(r) coloring families of a (2, n)-torus knot")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int)
    p.add_argument("--b", type=float, default=1.0)
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("longitude", parents=[common], help="longitudinal value against the closed form")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--g", help="conjugator a,b,c,d")
    p.add_argument("--trivial", action="store_true")
    p.add_argument("--atol", type=float, default=ATOL)
    p.add_argument("--rtol", type=float, default=RTOL)
    p.set_defaults(func=cmd_longitude)

    p = sub.add_parser("lemmas", parents=[common], help="root, power and case-analysis checks")
    p.add_argument("--lemma", choices=("all",) + suites.SUITES, default="all")
    p.add_argument("--m", type=int, help="m for the roots/power checks")
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--r-values", type=_float_list, default=list(suites.DEFAULT_RS))
    p.add_argument("--n-values", type=_int_list, default=list(suites.DEFAULT_NS))
    p.set_defaults(func=cmd_lemmas)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
