"""Command-line front end: classify, witness, table, selftest.

Output is either human-readable text or a byte-stable JSON envelope
(``--json``): sorted keys, no locale dependence, schema_version "1".
Exit codes separate the mathematical answer from operational failure:

    0  member / success          3  proven non-member
    2  usage or input error      4  internal disagreement (bug trap)
    5  witness not found within bounds
    6  search budget exceeded    1  selftest failure
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import selftest
from ._kernels import BACKEND
from .arith import FactorizationTimeout, Place
from .classify import (
    InvalidQuery,
    Query,
    Verdict,
    classify_engine,
    classify_table,
    derive,
    explain,
    in_norm_group_positive,
)
from .witness import (
    BudgetExceeded,
    SearchConfig,
    Witness,
    builtin_witness,
    canonical_simplex,
    search_lattice_witness,
)

SCHEMA_VERSION = "1"

EXIT_MEMBER = 0
EXIT_SELFTEST_FAIL = 1
EXIT_USAGE = 2
EXIT_NON_MEMBER = 3
EXIT_DISAGREE = 4
EXIT_NOT_FOUND = 5
EXIT_BUDGET = 6

_M_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_m(text: str) -> Fraction:
    if not _M_PATTERN.match(text):
        raise ValueError(f"m must be an integer or a fraction p/q, got {text!r}")
    return Fraction(text)


def _frac_str(x: Fraction) -> str:
    return str(x)


def _place_json(v: Place | None):
    if v is None:
        return None
    return "real" if v.is_real else v.p


def _check_json(check) -> dict:
    return {
        "place": _place_json(check.place),
        "kind": check.kind,
        "passed": check.passed,
        "detail": check.detail,
    }


def _verdict_json(v: Verdict) -> dict:
    return {
        "member": v.member,
        "method": v.method,
        "row": v.row,
        "column": v.column,
        "checks": [_check_json(c) for c in v.checks],
    }


def _witness_json(w: Witness) -> dict:
    return {
        "ambient_dim": w.ambient_dim,
        "edge_sq": _frac_str(w.edge_sq),
        "vertices": [[_frac_str(x) for x in v] for v in w.vertices],
    }


def _envelope(command: str, inputs: dict, result: dict | None, error: dict | None) -> dict:
    env = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": inputs,
        "status": "ok" if error is None else "error",
    }
    if error is None:
        env["result"] = result
    else:
        env["error"] = error
    return env


def _emit(env: dict, args, lines: list[str]) -> None:
    if args.quiet:
        return
    if args.json:
        print(json.dumps(env, sort_keys=True, separators=(",", ":")))
    else:
        for line in lines:
            print(line)


def _verdict_lines(v: Verdict, show_checks: bool) -> list[str]:
    lines = [f"member: {'true' if v.member else 'false'}   (method={v.method},"
             f" codim-row={v.row}, d mod 4 = {v.column})"]
    if show_checks:
        if not v.checks:
            lines.append("no conditions to check in this cell")
        for c in v.checks:
            where = "global" if c.place is None else f"place {c.place}"
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {where}: {c.detail}")
    return lines


def _witness_lines(w: Witness) -> list[str]:
    lines = [f"witness in Q^{w.ambient_dim} with edge^2 = {w.edge_sq}:"]
    for v in w.vertices:
        lines.append("  (" + ", ".join(_frac_str(x) for x in v) + ")")
    return lines


def cmd_classify(args) -> int:
    inputs = {"d": args.d, "n": args.n, "m": str(args.m), "method": args.method,
              "explain": args.explain}
    try:
        m = _parse_m(args.m)
        q = Query(args.d, args.n, m)
    except (ValueError, InvalidQuery) as exc:
        env = _envelope("classify", inputs, None, {"code": "usage", "message": str(exc)})
        _emit(env, args, [f"error: {exc}"])
        return EXIT_USAGE

    result: dict = {}
    lines: list[str] = []
    if args.method in ("table", "both"):
        table_v = explain(q) if args.explain else classify_table(q)
        result["table"] = _verdict_json(table_v)
        lines += _verdict_lines(table_v, args.explain)
        member = table_v.member
    if args.method in ("engine", "both"):
        engine_v = classify_engine(q)
        result["engine"] = _verdict_json(engine_v)
        lines += _verdict_lines(engine_v, args.explain)
        member = engine_v.member
    if args.method == "both" and result["table"]["member"] != result["engine"]["member"]:
        env = _envelope("classify", inputs, None, {
            "code": "internal-disagreement",
            "message": "table and engine verdicts differ; this is a bug",
            "table": result["table"],
            "engine": result["engine"],
        })
        _emit(env, args, ["internal error: table and engine disagree"])
        return EXIT_DISAGREE
    env = _envelope("classify", inputs, result, None)
    _emit(env, args, lines)
    return EXIT_MEMBER if member else EXIT_NON_MEMBER


def _builtin_for(d: int, n: int, m: Fraction) -> Witness | None:
    if (d, n, m) == (4, 5, Fraction(10)):
        return builtin_witness()
    if n == d + 1 and m == 2:
        return canonical_simplex(d)
    return None


def cmd_witness(args) -> int:
    inputs = {"d": args.d, "n": args.n, "m": str(args.m), "bound": args.bound,
              "scale_max": args.scale_max, "builtin": args.builtin}
    try:
        m = _parse_m(args.m)
        q = Query(args.d, args.n, m)
        cfg = SearchConfig(args.bound, args.scale_max, args.budget)
    except (ValueError, InvalidQuery) as exc:
        env = _envelope("witness", inputs, None, {"code": "usage", "message": str(exc)})
        _emit(env, args, [f"error: {exc}"])
        return EXIT_USAGE

    if args.builtin:
        w = _builtin_for(args.d, args.n, m)
        if w is None:
            env = _envelope("witness", inputs, None, {
                "code": "usage", "message": "no builtin witness for these parameters"})
            _emit(env, args, ["error: no builtin witness for these parameters"])
            return EXIT_USAGE
        env = _envelope("witness", inputs, {"witness": _witness_json(w)}, None)
        _emit(env, args, _witness_lines(w))
        return EXIT_MEMBER

    verdict = classify_table(q)
    if not verdict.member:
        env = _envelope("witness", inputs, None, {
            "code": "non-member",
            "message": "classification proves no witness exists",
            "verdict": _verdict_json(verdict),
        })
        _emit(env, args, ["no witness: classification proves m is not realizable"]
              + _verdict_lines(verdict, True))
        return EXIT_NON_MEMBER

    try:
        w = search_lattice_witness(args.d, args.n, m, cfg)
    except BudgetExceeded as exc:
        env = _envelope("witness", inputs, None, {"code": "budget", "message": str(exc)})
        _emit(env, args, [f"budget exceeded: {exc}"])
        return EXIT_BUDGET
    if w is None:
        env = _envelope("witness", inputs, None, {
            "code": "not-found",
            "message": "no witness within the configured bounds (not a disproof)",
        })
        _emit(env, args, ["not found within bounds (m is realizable; raise --bound"
                          " or --scale-max)"])
        return EXIT_NOT_FOUND
    env = _envelope("witness", inputs, {"witness": _witness_json(w)}, None)
    _emit(env, args, _witness_lines(w))
    return EXIT_MEMBER


def _cell_label(d: int, c: int) -> str:
    params = derive(Query(d, d + max(c, 0), Fraction(2)))
    s = params.s

    def sub(t: int) -> str:
        return str(t) if 0 <= t <= 9 else "{" + str(t) + "}"

    if c >= 3:
        return "Q_{>0}"
    col = d % 4
    if c == 2:
        if col == 0:
            return f"2H_{sub(s)}"
        if col == 1:
            return f"2U_{sub(s)}"
        return "Q_{>0}"
    if c == 1:
        if col == 0:
            return f"2N_{sub(s)}^+"
        if col == 1:
            return "2N_{-1}^+"
        if col == 2:
            return f"2N_{sub(-s)}^+"
        return "Q_{>0}"
    # c == 0
    if col == 0:
        return "Q_{>0}" if s == 1 else "∅"
    if col == 1:
        if in_norm_group_positive(Fraction(s), -1):
            return f"{2 * s}(Q^×)²" if s > 1 else "2(Q^×)²"
        return "∅"
    if col == 2:
        return "∅"
    return f"{2 * s}(Q^×)²" if s > 1 else "2(Q^×)²"


def cmd_table(args) -> int:
    inputs = {"d": args.d, "dmax": args.dmax, "codim_max": args.codim_max,
              "sample_m": args.sample_m}
    if (args.d is None) == (args.dmax is None):
        msg = "exactly one of --d / --dmax is required"
        env = _envelope("table", inputs, None, {"code": "usage", "message": msg})
        _emit(env, args, [f"error: {msg}"])
        return EXIT_USAGE
    samples: list[Fraction] = []
    if args.sample_m:
        try:
            samples = [_parse_m(tok) for tok in args.sample_m.split(",")]
            if any(v <= 0 for v in samples):
                raise ValueError("sample m values must be positive")
        except ValueError as exc:
            env = _envelope("table", inputs, None, {"code": "usage", "message": str(exc)})
            _emit(env, args, [f"error: {exc}"])
            return EXIT_USAGE

    dims = [args.d] if args.d is not None else list(range(1, args.dmax + 1))
    rows = []
    lines = []
    for d in dims:
        lines.append(f"d = {d} (d mod 4 = {d % 4}, squarefree part of d+1 ="
                     f" {derive(Query(d, d, Fraction(2))).s}):")
        for c in range(0, args.codim_max + 1):
            label = _cell_label(d, c)
            cell: dict = {"d": d, "codim": c, "rule": label}
            if samples:
                cell["samples"] = {
                    str(m): classify_table(Query(d, d + c, m)).member for m in samples
                }
            rows.append(cell)
            sample_text = ""
            if samples:
                marks = [f"{m}:{'in' if cell['samples'][str(m)] else 'out'}"
                         for m in samples]
                sample_text = "   [" + ", ".join(marks) + "]"
            lines.append(f"  n-d = {c}: {label}{sample_text}")
    env = _envelope("table", inputs, {"cells": rows}, None)
    _emit(env, args, lines)
    return 0


def cmd_selftest(args) -> int:
    inputs = {"grid_dmax": args.grid_dmax, "grid_codim": args.grid_codim,
              "m_bound": args.m_bound, "seed": args.seed}
    suites = selftest.run_all(args.grid_dmax, args.grid_codim, args.m_bound, args.seed)
    lines = []
    summary = []
    for name, cases, failures in suites:
        ok = not failures
        summary.append({"suite": name, "cases": cases, "failures": len(failures)})
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}: "
                     f"{cases - len(failures)}/{cases}")
        if failures:
            env = _envelope("selftest", inputs, None, {
                "code": "selftest-failure",
                "message": f"suite '{name}' failed",
                "counterexample": failures[0],
                "summary": summary,
            })
            _emit(env, args, lines + [f"counterexample: {failures[0]}"])
            return EXIT_SELFTEST_FAIL
    env = _envelope("selftest", inputs, {"summary": summary, "backend": BACKEND}, None)
    _emit(env, args, lines + [f"backend: {BACKEND}"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratsimplex",
        description="Decide which squared edge lengths admit a regular"
        " d-simplex with vertices in Q^n, and produce lattice witnesses.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", action="store_true", help="suppress output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common],
                       help="decide membership of (d, n, m)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=str, required=True,
                   help="exact rational, as an integer or p/q")
    p.add_argument("--method", choices=("table", "engine", "both"), default="table")
    p.add_argument("--explain", action="store_true",
                   help="list every consulted place and condition")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", parents=[common],
                       help="search for explicit vertices certifying (d, n, m)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=str, required=True)
    p.add_argument("--bound", type=int, default=3, help="coordinate box half-width")
    p.add_argument("--scale-max", type=int, default=2, dest="scale_max",
                   help="largest denominator scale to try")
    p.add_argument("--budget", type=int, default=2_000_000,
                   help="search node budget")
    p.add_argument("--builtin", action="store_true",
                   help="return a stored construction instead of searching")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("table", parents=[common],
                       help="render the classification rules per (d, codim) cell")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--codim-max", type=int, default=3, dest="codim_max")
    p.add_argument("--sample-m", type=str, default="", dest="sample_m",
                   help="comma-separated m values to evaluate in each cell")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("selftest", parents=[common],
                       help="run the built-in consistency suites")
    p.add_argument("--grid-dmax", type=int, default=8, dest="grid_dmax")
    p.add_argument("--grid-codim", type=int, default=3, dest="grid_codim")
    p.add_argument("--m-bound", type=int, default=20, dest="m_bound")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except FactorizationTimeout as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
