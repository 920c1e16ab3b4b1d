"""Command-line front end.

Exit codes: 0 success, 2 input schema error, 3 mathematical precondition
failure, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from .deformation import pt1_basis
from .errors import PipelineError, SchemaError, TropicalTestsDisagree, TropMirrorError
from .mirror import (
    canonical_degeneration,
    groebner_cone,
    nabla_dual_from_hull,
    nabla_from_cone,
    run_pipeline,
    tropical_faces_combinatorial,
    tropical_faces_prevariety,
)
from .polytope import convex_hull, polytope_to_json
from .problem import Problem, load_problem
from .srcomplex import complex_from_json, dualize, ideal_to_complex
from .verify import SUITES, run_suite


def _braces(values) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"


def _fmt_point(p) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc}") from exc


def _tropical_dual(prob: Problem):
    P = prob.partition()
    D = canonical_degeneration(P, prob.toric)
    hull = nabla_dual_from_hull(D)
    cc = tropical_faces_combinatorial(D, hull, prob.toric)
    check = tropical_faces_prevariety(D, nabla_from_cone(groebner_cone(D)), prob.toric, hull)
    if cc != check:
        raise TropicalTestsDisagree("combinatorial and prevariety tests select different faces")
    return cc


def cmd_complex(data: Any) -> tuple[str, dict]:
    prob = load_problem(data)
    c = ideal_to_complex(prob.ideal, prob.toric)
    return c.describe(), c.to_json()


def cmd_pt1(data: Any) -> tuple[str, dict]:
    prob = load_problem(data)
    basis = pt1_basis(prob.ideal, prob.toric)
    hull = convex_hull(basis.alphas(), prob.toric.n)
    fv = hull.face_lattice.fvector()
    lines = [f"{len(basis)} deformation directions, hull of dim {hull.dim} with {len(hull.vertices)} vertices"]
    lines += ["  " + _fmt_point(v) for v in hull.vertices]
    lines.append("F-vector " + _braces(fv))
    out = {"polytope": polytope_to_json(hull), "fvector": list(fv), **basis.to_json()}
    return "\n".join(lines), out


def cmd_tropdef(data: Any) -> tuple[str, dict]:
    cc = _tropical_dual(load_problem(data))
    return cc.describe(), cc.to_json()


def cmd_dualize(data: Any) -> tuple[str, dict]:
    if isinstance(data, dict) and "kind" in data:
        c = dualize(complex_from_json(data))
    else:
        c = dualize(_tropical_dual(load_problem(data)))
    return c.describe(), c.to_json()


def cmd_mirror(data: Any) -> tuple[str, dict]:
    prob = load_problem(data)
    R = run_pipeline(prob.partition(), prob.toric)
    var = R.mirror_toric.var
    lines = [
        "weight polytope vertices:",
        *("  " + _fmt_point(v) for v in R.nabla.vertices),
        "weight polytope F-vector " + _braces(R.nabla.face_lattice.fvector()),
        "hull F-vector " + _braces(R.nabla_dual.face_lattice.fvector()),
        "tropical complex F-vector " + _braces(R.tropical.fvector),
        f"mirror class group {R.mirror_toric.class_group_str()}",
        f"mirror ideal {R.mirror_ideal}",
        f"deformation support: {len(R.xi)} points",
        "first order mirror family:",
        *("  " + g.describe(var) for g in R.family),
    ]
    skipped = R.metadata.get("generatorsWithoutCartierMultiple") or []
    if skipped:
        lines.append(f"{len(skipped)} mirror ideal generators have no Cartier multiple and are left out")
    return "\n".join(lines), R.to_json()


COMMANDS = {
    "complex": cmd_complex,
    "pt1": cmd_pt1,
    "tropdef": cmd_tropdef,
    "dualize": cmd_dualize,
    "mirror": cmd_mirror,
}


def _dump(obj: dict, compact: bool) -> str:
    if compact:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return json.dumps(obj, sort_keys=True, indent=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropmirror", description="Tropical mirror construction for complete intersections.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", "-i", required=True, help="JSON input file, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--compact", action="store_true", help="single-line JSON")
        p.add_argument("--output", "-o", help="write output to this file")
    v = sub.add_parser("verify")
    v.add_argument("suite", nargs="?", default="all", choices=SUITES)
    v.add_argument("--json", action="store_true")
    v.add_argument("--compact", action="store_true")
    v.add_argument("--output", "-o")
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            checks = run_suite(args.suite)
            passed = all(c.passed for c in checks)
            if args.json:
                report = {
                    "suite": args.suite,
                    "passed": passed,
                    "checks": [
                        {"criterion": c.criterion, "name": c.name, "passed": c.passed, "detail": c.detail}
                        for c in checks
                    ],
                }
                _emit(_dump(report, args.compact), args.output)
            else:
                lines = [c.line() for c in checks]
                lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
                _emit("\n".join(lines), args.output)
            return 0 if passed else 1
        data = _read_json(args.input)
        text, obj = COMMANDS[args.command](data)
        _emit(_dump(obj, args.compact) if args.json else text, args.output)
        return 0
    except TropMirrorError as exc:
        label = type(exc.cause).__name__ if isinstance(exc, PipelineError) else type(exc).__name__
        print(f"error ({label}): {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
