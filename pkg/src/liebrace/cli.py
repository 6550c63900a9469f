"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed (with evidence),
2 input or parse errors.  JSON reports are stable-ordered for golden-file
diffing; text reports print floats with 17 significant digits.
Obstruction findings are reported in their own block and do not affect
the exit status.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import lsb, postlie, tablerepro
from .liealg import classify, from_json as liealg_from_json, to_json as liealg_to_json
from .matgrp import InconclusiveExtraction
from .postlie import check_axioms, check_prelie, from_json as postlie_from_json, obstruction_scan

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _expect(cond: bool, path: str, message: str):
    if not cond:
        raise SchemaError(path, message)


def _validate_coeffs(entries, path):
    _expect(isinstance(entries, list), path, "must be a list")
    for n, c in enumerate(entries):
        p = f"{path}[{n}]"
        _expect(isinstance(c, dict), p, "must be an object")
        _expect(isinstance(c.get("k"), int), f"{p}.k", "must be an integer")
        _expect(isinstance(c.get("c"), (str, int)), f"{p}.c", "must be 'p/q' or int")


def _validate_pairs(entries, path, ordered: bool):
    _expect(isinstance(entries, list), path, "must be a list")
    for n, e in enumerate(entries):
        p = f"{path}[{n}]"
        _expect(isinstance(e, dict), p, "must be an object")
        _expect(isinstance(e.get("i"), int), f"{p}.i", "must be an integer")
        _expect(isinstance(e.get("j"), int), f"{p}.j", "must be an integer")
        if ordered:
            _expect(e["i"] < e["j"], f"{p}", "requires i < j (antisymmetric completion)")
        _validate_coeffs(e.get("coeffs"), f"{p}.coeffs")


def validate_liealg(data, path="$"):
    _expect(isinstance(data, dict), path, "must be an object")
    _expect(isinstance(data.get("dim"), int) and data["dim"] >= 0, f"{path}.dim",
            "must be a non-negative integer")
    _validate_pairs(data.get("brackets", []), f"{path}.brackets", ordered=True)


def validate_postlie(data, path="$"):
    _expect(isinstance(data, dict), path, "must be an object")
    _expect("dot" in data, f"{path}.dot", "is required")
    validate_liealg(data["dot"], f"{path}.dot")
    _validate_pairs(data.get("triangle", []), f"{path}.triangle", ordered=False)


_GROUP_KINDS = ("abelian", "heisenberg3", "aff1", "sl", "so", "su2", "an",
                "product", "semidirect")
_ACTIONS = ("aff1_exp", "h3_shear", "h3_dilation", "inner", "su2_adjoint")


def validate_group(data, path="$"):
    _expect(isinstance(data, dict), path, "must be an object")
    kind = data.get("group")
    _expect(kind in _GROUP_KINDS, f"{path}.group",
            f"must be one of {', '.join(_GROUP_KINDS)}")
    if kind == "abelian":
        _expect(isinstance(data.get("n"), int) and data["n"] >= 1, f"{path}.n",
                "must be a positive integer")
    if kind in ("sl", "so", "an"):
        _expect(data.get("n") in (2, 3), f"{path}.n", "must be 2 or 3")
    if kind == "product":
        factors = data.get("factors")
        _expect(isinstance(factors, list) and factors, f"{path}.factors",
                "must be a non-empty list")
        for n, f in enumerate(factors):
            validate_group(f, f"{path}.factors[{n}]")
    if kind == "semidirect":
        for key in ("g1", "g2"):
            _expect(key in data, f"{path}.{key}", "is required")
            validate_group(data[key], f"{path}.{key}")
        _expect(data.get("action") in _ACTIONS, f"{path}.action",
                f"must be one of {', '.join(_ACTIONS)}")


def validate_lsb_spec(data, path="$"):
    _expect(isinstance(data, dict), path, "must be an object")
    kind = data.get("construction")
    kinds = ("trivial", "opposite-trivial", "product", "zappa", "semidirect-twist")
    _expect(kind in kinds, f"{path}.construction",
            f"must be one of {', '.join(kinds)}")
    if kind in ("trivial", "opposite-trivial"):
        _expect("group" in data, f"{path}.group", "is required")
        validate_group(data["group"], f"{path}.group")
    elif kind == "product":
        factors = data.get("factors")
        _expect(isinstance(factors, list) and factors, f"{path}.factors",
                "must be a non-empty list")
        for n, f in enumerate(factors):
            validate_lsb_spec(f, f"{path}.factors[{n}]")
    elif kind == "zappa":
        _expect("group" in data, f"{path}.group", "is required")
        validate_group(data["group"], f"{path}.group")
        _expect(data.get("factorization") in lsb.FACTORIZATIONS,
                f"{path}.factorization",
                f"must be one of {', '.join(lsb.FACTORIZATIONS)}")
    else:
        for key in ("g1", "g2"):
            _expect(key in data, f"{path}.{key}", "is required")
            validate_group(data[key], f"{path}.{key}")
        _expect(data.get("action") in _ACTIONS, f"{path}.action",
                f"must be one of {', '.join(_ACTIONS)}")


def _load_json(path: str):
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError:
        raise SchemaError(path, "file not found")
    except json.JSONDecodeError as e:
        raise SchemaError(path, f"malformed JSON at line {e.lineno}, column {e.colno}")


def _emit(payload: dict, fmt: str, text_lines: list[str]):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _g17(x: float) -> str:
    return f"{x:.17g}"


def _report_lines(reports) -> list[str]:
    lines = []
    for r in reports:
        verdict = "pass" if r.passed else "FAIL"
        lines.append(
            f"{r.check}: {verdict} (max residual {_g17(r.max_residual)}, "
            f"tol {_g17(r.tol)}, {r.samples} samples, seed {r.seed})"
        )
        for key, val in sorted(r.detail.items()):
            if isinstance(val, float):
                lines.append(f"  {key}: {_g17(val)}")
            else:
                lines.append(f"  {key}: {val}")
    return lines


def _obstruction_lines(reports) -> list[str]:
    lines = ["obstructions:"]
    fired = [r for r in reports if r.fired]
    if not fired:
        lines.append("  none fired")
    for r in fired:
        lines.append(f"  {r.rule} fired: {r.detail} [{r.caveat}]")
    return lines


def _cmd_classify(args) -> int:
    data = _load_json(args.file)
    validate_liealg(data)
    g = liealg_from_json(data)
    label = classify(g)
    payload = {"command": "classify", "name": g.name, "dim": g.dim, "label": label}
    lines = [label]
    if label in ("simp", "ssimp"):
        note = ("simp/ssimp split by ad-commutant dimension; valid for "
                "absolutely simple real factors")
        payload["note"] = note
        lines.append(f"note: {note}")
    _emit(payload, args.format, lines)
    return EXIT_OK


def _cmd_check_postlie(args) -> int:
    data = _load_json(args.file)
    validate_postlie(data)
    p = postlie_from_json(data)
    ok, violation = check_axioms(p)
    payload = {
        "command": "check-postlie",
        "dim": p.dim,
        "axioms": {"pass": ok, "violation": list(violation) if violation else None},
    }
    lines = []
    if ok:
        lines.append("post-Lie axioms: pass (exact, all basis triples)")
    else:
        ax, i, j, k = violation
        lines.append(
            f"post-Lie axioms: FAIL at axiom ({ax}) on basis triple "
            f"(e{i + 1}, e{j + 1}, e{k + 1})"
        )
    if p.dot.is_abelian():
        pre = check_prelie(p)
        payload["prelie"] = pre
        lines.append(f"pre-Lie identity (zero dot bracket): {'pass' if pre else 'FAIL'}")
    scan = obstruction_scan(p)
    payload["obstructions"] = [r.to_json() for r in scan]
    lines += _obstruction_lines(scan)
    _emit(payload, args.format, lines)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_obstructions(args) -> int:
    data = _load_json(args.file)
    validate_postlie(data)
    p = postlie_from_json(data)
    scan = obstruction_scan(p)
    payload = {"command": "obstructions",
               "reports": [r.to_json() for r in scan]}
    _emit(payload, args.format, _obstruction_lines(scan))
    return EXIT_OK


def _cmd_check_lsb(args) -> int:
    data = _load_json(args.file)
    validate_lsb_spec(data)
    inst = lsb.realize(data)
    reports = [
        lsb.verify_lsb(inst, args.samples, args.seed, args.tol),
        lsb.verify_lambda_properties(inst, args.samples, args.seed, max(args.tol, 1e-8)),
        lsb.verify_simple_transitivity(inst, args.samples, args.seed, max(args.tol, 1e-8)),
    ]
    ok = all(r.passed for r in reports)
    payload = {
        "command": "check-lsb",
        "instance": inst.name,
        "pass": ok,
        "reports": [r.to_json() for r in reports],
    }
    lines = [f"instance: {inst.name}"] + _report_lines(reports)
    lines.append("overall: " + ("pass" if ok else "FAIL"))
    _emit(payload, args.format, lines)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _tensor_entries(tensor) -> list[dict]:
    from .exactlin import format_rational

    entries = []
    n = len(tensor)
    for i in range(n):
        for j in range(n):
            coeffs = [
                {"k": k, "c": format_rational(v)}
                for k, v in enumerate(tensor[i][j])
                if v != 0
            ]
            if coeffs:
                entries.append({"i": i, "j": j, "coeffs": coeffs})
    return entries


def _cmd_extract(args) -> int:
    data = _load_json(args.file)
    validate_lsb_spec(data)
    inst = lsb.realize(data)
    try:
        ext = lsb.extract_postlie(inst)
    except (InconclusiveExtraction, ValueError) as e:
        payload = {"command": "extract", "instance": inst.name, "error": str(e)}
        _emit(payload, args.format, [f"extraction failed: {e}"])
        return EXIT_CHECK_FAILED
    if args.which == "dot":
        tensor = ext.structure.dot.c
    elif args.which == "circ":
        tensor = ext.circ.c
    else:
        tensor = ext.structure.triangle
    payload = {
        "command": "extract",
        "instance": inst.name,
        "which": args.which,
        "dim": inst.dim,
        "entries": _tensor_entries(tensor),
        "axiom1_residual": ext.axiom1_residual,
        "axioms_pass": ext.axioms_pass,
    }
    lines = [
        f"instance: {inst.name}",
        f"{args.which} tensor ({inst.dim}-dim), nonzero entries:",
    ]
    for e in payload["entries"]:
        terms = ", ".join(f"{c['c']}*e{c['k'] + 1}" for c in e["coeffs"])
        lines.append(f"  (e{e['i'] + 1}, e{e['j'] + 1}) -> {terms}")
    if not payload["entries"]:
        lines.append("  (zero tensor)")
    lines.append(f"axiom (1) float residual: {_g17(ext.axiom1_residual)}")
    lines.append(f"post-Lie axioms (exact): {'pass' if ext.axioms_pass else 'FAIL'}")
    _emit(payload, args.format, lines)
    return EXIT_OK if ext.axioms_pass else EXIT_CHECK_FAILED


def _cmd_table(args) -> int:
    try:
        report = tablerepro.build_table(args.samples, args.seed, args.tol)
    except tablerepro.TableMismatch as e:
        _emit({"command": "table", "error": str(e)}, args.format,
              [f"table construction failed: {e}"])
        return EXIT_CHECK_FAILED
    encoded = tablerepro.encode_grid(report)
    match = None
    if args.golden:
        try:
            with open(args.golden) as f:
                match = f.read() == encoded
        except FileNotFoundError:
            raise SchemaError(args.golden, "file not found")
    payload = report.to_json()
    payload["command"] = "table"
    if match is not None:
        payload["golden_match"] = match
    lines = [report.render_text()]
    if match is not None:
        lines.append(f"golden match: {'yes' if match else 'NO'}")
    _emit(payload, args.format, lines)
    if match is False:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _thread_cap() -> int:
    raw = os.environ.get("LIEBRACE_THREADS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise SchemaError("LIEBRACE_THREADS", f"must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liebrace",
        description="Verification toolkit for Lie skew braces and post-Lie algebras",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a Lie algebra JSON file")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("check-postlie", help="verify post-Lie axioms exactly")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_check_postlie)

    p = sub.add_parser("obstructions", help="run integrability obstruction rules")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_obstructions)

    p = sub.add_parser("check-lsb", help="verify a Lie skew brace construction")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(fn=_cmd_check_lsb)

    p = sub.add_parser("extract", help="extract the post-Lie algebra of a brace")
    p.add_argument("file")
    p.add_argument("--which", choices=("dot", "circ", "triangle"), default="triangle")
    p.set_defaults(fn=_cmd_extract)

    p = sub.add_parser("table", help="reproduce the existence table")
    p.add_argument("--golden", default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(fn=_cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _thread_cap()  # validated; evaluation is sequential and deterministic
        return args.fn(args)
    except SchemaError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValueError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
