"""Command-line front end: symbol ingestion, certification, report emission.

Commands:
    basis-check   orthonormality / Taylor / reproducing-kernel diagnostics
    certify       run the symmetry certifiers for J, C_lambda or C_p
    generate      materialize a J-symmetric symbol h/(1 + conj(p) z)
    matrix        emit truncated operator matrices

Exit codes: 0 certified, 1 refuted, 2 usage or input error, 3 criteria
disagreement (a structured note in the report names the disagreeing pair).

Reports are JSON.  Everything under the "report" key is deterministic for
fixed inputs and flags; wall time lives outside it.  Floats are serialized
with 17 significant digits and complex values always as {re, im} pairs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .basis import BasisFamily, basis_eval, basis_samples, basis_taylor, gram_matrix, szego_factor
from .certify import (
    CertificationReport,
    NOT_APPLICABLE,
    OBSTRUCTED,
    build_fourier_table,
    cp_probe,
    criterion_coefficients,
    criterion_functional,
    criterion_ko_lee,
    finite_obstruction,
    generate_j_symmetric,
    matrix_symmetry_crosscheck,
)
from .circle import CircleSamples, circle_grid, inner_product, synthesize
from .operators import (
    conjugation_c_lambda,
    realize_conjugation,
    symmetry_residual,
    toeplitz_monomial,
    toeplitz_quadrature,
    toeplitz_rational_closed_form,
)
from .symbols import (
    KIND_FINITE,
    KIND_GENERATED,
    KINDS,
    SymbolSpec,
    evaluate,
)

TOOL_NAME = "toepsym"

DEFAULT_SAMPLES = 4096
DEFAULT_ORDER = 16
DEFAULT_K_MAX = 32
DEFAULT_TOL = 1e-8


class CliError(Exception):
    """Usage or input error; maps to exit code 2."""


# ---------------------------------------------------------------------------
# JSON emission: 17 significant digits, complex as {re, im}


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        return json.dumps(repr(x))
    return format(float(x), ".17g")


def dump_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [
            f"{inner}{json.dumps(str(key))}: {dump_json(item, indent + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        parts = [f"{inner}{dump_json(item, indent + 1)}" for item in value]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(value, np.ndarray):
        return dump_json(value.tolist(), indent)
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        return "{" + f'"re": {_format_float(value.real)}, "im": {_format_float(value.imag)}' + "}"
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    raise TypeError(f"cannot serialize {type(value)!r}")


# ---------------------------------------------------------------------------
# symbol files (strict parse: unknown fields are an error)

_SYMBOL_FIELDS = {"kind", "coeffs", "p", "lambda", "h_coeffs"}
_FIELDS_BY_KIND = {
    "finite": {"required": {"coeffs"}, "optional": {"p", "lambda"}},
    "ex1": {"required": {"p"}, "optional": {"lambda"}},
    "ex2": {"required": {"p"}, "optional": {"lambda"}},
    "analytic_fraction": {"required": {"p"}, "optional": {"lambda"}},
    "generated": {"required": {"h_coeffs", "p"}, "optional": {"coeffs", "lambda"}},
}


def _parse_complex_field(obj, name: str) -> complex:
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise CliError(f"field {name!r} must be an object with exactly re and im")
    re, im = obj["re"], obj["im"]
    if isinstance(re, bool) or isinstance(im, bool) or not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
        raise CliError(f"field {name!r} must hold numbers")
    return complex(re, im)


def _parse_coeff_list(items, name: str) -> dict[int, complex]:
    if not isinstance(items, list):
        raise CliError(f"field {name!r} must be a list")
    out: dict[int, complex] = {}
    for entry in items:
        if not isinstance(entry, dict) or set(entry) != {"n", "re", "im"}:
            raise CliError(f"entries of {name!r} must be objects with exactly n, re, im")
        n = entry["n"]
        if isinstance(n, bool) or not isinstance(n, int):
            raise CliError(f"entries of {name!r} need an integer n")
        if n in out:
            raise CliError(f"duplicate index {n} in {name!r}")
        out[n] = complex(entry["re"], entry["im"])
    return out


def parse_symbol_file(path: str) -> tuple[SymbolSpec, complex | None, complex | None]:
    """Load a symbol file; returns (spec, default p, default lambda)."""
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CliError(f"symbol file not found: {path}")
    except json.JSONDecodeError as exc:
        raise CliError(f"symbol file is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise CliError("symbol file must hold a JSON object")
    unknown = set(raw) - _SYMBOL_FIELDS
    if unknown:
        raise CliError(f"unknown symbol file fields: {sorted(unknown)}")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise CliError(f"kind must be one of {list(KINDS)}, got {kind!r}")
    schema = _FIELDS_BY_KIND[kind]
    present = set(raw) - {"kind"}
    missing = schema["required"] - present
    if missing:
        raise CliError(f"kind {kind!r} requires fields {sorted(missing)}")
    stray = present - schema["required"] - schema["optional"]
    if stray:
        raise CliError(f"fields {sorted(stray)} are not allowed for kind {kind!r}")

    p = _parse_complex_field(raw["p"], "p") if "p" in raw else None
    lam = _parse_complex_field(raw["lambda"], "lambda") if "lambda" in raw else None
    coeffs = _parse_coeff_list(raw["coeffs"], "coeffs") if "coeffs" in raw else None
    h_coeffs = _parse_coeff_list(raw["h_coeffs"], "h_coeffs") if "h_coeffs" in raw else None
    try:
        if kind == "finite":
            spec = SymbolSpec(KIND_FINITE, coeffs=coeffs)
        elif kind == "generated":
            spec = SymbolSpec(KIND_GENERATED, coeffs=coeffs, p=p, h_coeffs=h_coeffs)
        else:
            spec = SymbolSpec(kind, p=p)
    except ValueError as exc:
        raise CliError(str(exc))
    return spec, p, lam


def _coeff_list(table_coeffs: dict[int, complex]) -> list[dict]:
    return [
        {"n": n, "re": c.real, "im": c.imag}
        for n, c in sorted(table_coeffs.items())
    ]


# ---------------------------------------------------------------------------
# flag parsing


def _complex_flag(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected re or re,im, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="certify complex symmetry of truncated Toeplitz operators on H^2",
    )
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(sp, symbol_required: bool):
        if symbol_required:
            sp.add_argument("--symbol", required=True, help="symbol file (JSON)")
        sp.add_argument("--p", type=_complex_flag, default=None, help="pole, re or re,im")
        sp.add_argument("--lambda", dest="lam", type=_complex_flag, default=None, help="unimodular lambda, re,im")
        sp.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order")
        sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="quadrature grid size")
        sp.add_argument("--k-max", dest="k_max", type=int, default=DEFAULT_K_MAX, help="coefficient window for criteria")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="verdict tolerance")
        sp.add_argument("--out", default=None, help="output file (report; generated symbol for `generate`)")

    sp = sub.add_parser("basis-check", help="orthonormality and kernel diagnostics for R_n(p)")
    add_shared(sp, symbol_required=False)

    sp = sub.add_parser("certify", help="run the symmetry certifiers for one symbol")
    sp.add_argument("--conjugation", required=True, choices=["J", "Clambda", "Cp"])
    add_shared(sp, symbol_required=True)

    sp = sub.add_parser("generate", help="build a J-symmetric symbol from an even h")
    add_shared(sp, symbol_required=True)

    sp = sub.add_parser("matrix", help="emit a truncated Toeplitz matrix")
    sp.add_argument("--basis", required=True, choices=["monomial", "rational", "closed_form"])
    add_shared(sp, symbol_required=True)

    return parser


# ---------------------------------------------------------------------------
# commands


def _require(value, name: str):
    if value is None:
        raise CliError(f"missing parameter: {name}")
    return value


def _complex_matrix(entries: np.ndarray) -> dict:
    return {"re": entries.real.tolist(), "im": entries.imag.tolist()}


def cmd_basis_check(args) -> tuple[int, dict]:
    p = _require(args.p, "--p")
    n_max = args.order
    if not 1 <= n_max <= 64:
        raise CliError("order must lie in [1, 64] for basis-check")
    try:
        family = BasisFamily(p, n_max)
    except ValueError as exc:
        raise CliError(str(exc))
    if args.samples < 8 * n_max:
        raise CliError("grid too coarse")

    gram = gram_matrix(family, args.samples)
    gram_dev = float(np.max(np.abs(gram.entries - np.eye(n_max))))

    terms = max(64, 8 * n_max)
    points = circle_grid(32)
    taylor_dev = 0.0
    for n in range(n_max):
        coeffs = basis_taylor(family, n, terms)
        synth = np.polynomial.polynomial.polyval(points, coeffs)
        taylor_dev = max(taylor_dev, float(np.max(np.abs(synth - basis_eval(family, n, points)))))

    # reproducing-kernel spot check with a fixed cubic
    g_coeffs = np.array([1.0, 0.5, 1.0 / 3.0, 0.25], dtype=complex)
    z = circle_grid(args.samples)
    g_samples = CircleSamples(np.polynomial.polynomial.polyval(z, g_coeffs), args.samples)
    r0_samples = CircleSamples(basis_samples(family, args.samples)[0], args.samples)
    g_at_p = complex(np.polynomial.polynomial.polyval(np.array(family.p), g_coeffs))
    szego_dev = abs(inner_product(g_samples, r0_samples) - szego_factor(family.p) * g_at_p)

    verdicts = {
        "gram": gram_dev <= args.tol,
        "taylor_consistency": taylor_dev <= args.tol,
        "szego_evaluation": szego_dev <= args.tol,
    }
    report = {
        "parameters": {
            "p": family.p,
            "order": n_max,
            "samples": args.samples,
            "tol": args.tol,
            "taylor_terms": terms,
            "taylor_tail_bound": abs(family.p) ** terms,
        },
        "verdicts": {**verdicts, "all": all(verdicts.values())},
        "residuals": {
            "gram_deviation": gram_dev,
            "taylor_consistency": taylor_dev,
            "szego_evaluation": float(szego_dev),
        },
        "notes": [],
    }
    return (0 if all(verdicts.values()) else 1), report


def _certify_j(symbol, p, args) -> tuple[int, dict]:
    obstruction = finite_obstruction(symbol, p) if symbol.kind == KIND_FINITE else NOT_APPLICABLE
    table = build_fourier_table(symbol, args.k_max + 1, args.samples)
    ok_ii, res_ii = criterion_coefficients(table, p, args.k_max, args.tol)
    ok_iii, res_iii = criterion_functional(symbol, p, args.samples, min(args.tol, 1e-10))
    cross = matrix_symmetry_crosscheck(symbol, p, args.order, args.samples, tol=args.tol)

    report = CertificationReport(
        verdicts={
            "obstruction": obstruction,
            "coefficients": ok_ii,
            "functional": ok_iii,
            "closed_form_symmetry": cross.verdicts["closed_form_symmetry"],
            "quadrature_symmetry": cross.verdicts["quadrature_symmetry"],
        },
        residuals={
            "coefficients": [float(r) for r in res_ii],
            "coefficients_max": float(np.max(res_ii)),
            "functional": res_iii,
            "closed_form_symmetry": cross.residuals["closed_form_symmetry"],
            "quadrature_symmetry": cross.residuals["quadrature_symmetry"],
        },
        parameters={
            "conjugation": "J",
            "p": p,
            "order": args.order,
            "samples": args.samples,
            "k_max": args.k_max,
            "tol": args.tol,
        },
        notes=list(cross.notes),
    )
    if ok_ii != ok_iii:
        report.notes.append(
            {
                "kind": "criteria_disagreement",
                "pair": ["coefficients", "functional"],
                "verdicts": {"coefficients": ok_ii, "functional": ok_iii},
                "residuals": {"coefficients": float(np.max(res_ii)), "functional": res_iii},
                "residual_gap": abs(float(np.max(res_ii)) - res_iii),
            }
        )

    if obstruction == OBSTRUCTED and (ok_ii or ok_iii):
        code = 3  # exact refutation contradicted by a tolerance verdict
    elif ok_ii != ok_iii:
        code = 3
    elif obstruction == OBSTRUCTED or not ok_ii:
        code = 1
    elif report.verdicts["quadrature_symmetry"] and report.verdicts["closed_form_symmetry"]:
        code = 0
    else:
        code = 3
    return code, report.as_dict()


def _certify_clambda(symbol, lam, args) -> tuple[int, dict]:
    k = max(args.k_max, args.order - 1)
    table = build_fourier_table(symbol, k, args.samples)
    ok, res = criterion_ko_lee(table, lam, args.k_max, args.tol)
    matrix = toeplitz_monomial(table, args.order)
    realization = realize_conjugation(conjugation_c_lambda(lam), args.order)
    residual = symmetry_residual(matrix, realization, max(1, args.order // 2))
    ok_matrix = residual <= args.tol
    report = CertificationReport(
        verdicts={"ko_lee": ok, "monomial_symmetry": ok_matrix},
        residuals={
            "ko_lee": [float(r) for r in res],
            "ko_lee_max": float(np.max(res)),
            "monomial_symmetry": residual,
        },
        parameters={
            "conjugation": "Clambda",
            "lambda": lam,
            "order": args.order,
            "samples": args.samples,
            "k_max": args.k_max,
            "tol": args.tol,
        },
    )
    if ok != ok_matrix:
        report.notes.append(
            {
                "kind": "criteria_disagreement",
                "pair": ["ko_lee", "monomial_symmetry"],
                "verdicts": {"ko_lee": ok, "monomial_symmetry": ok_matrix},
                "residuals": {"ko_lee": float(np.max(res)), "monomial_symmetry": residual},
                "residual_gap": abs(float(np.max(res)) - residual),
            }
        )
        return 3, report.as_dict()
    return (0 if ok else 1), report.as_dict()


def _certify_cp(symbol, p, args) -> tuple[int, dict]:
    probe = cp_probe(symbol, p, args.order, args.samples, tol=args.tol)
    probe.parameters["conjugation"] = "Cp"
    code = 0 if probe.verdicts["symmetric_at_refined_order"] else 1
    return code, probe.as_dict()


def cmd_certify(args) -> tuple[int, dict]:
    symbol, file_p, file_lam = parse_symbol_file(args.symbol)
    if args.conjugation == "J":
        p = args.p if args.p is not None else file_p
        return _certify_j(symbol, _require(p, "--p"), args)
    if args.conjugation == "Clambda":
        lam = args.lam if args.lam is not None else file_lam
        return _certify_clambda(symbol, _require(lam, "--lambda"), args)
    p = args.p if args.p is not None else file_p
    return _certify_cp(symbol, _require(p, "--p"), args)


def cmd_generate(args) -> tuple[int, dict]:
    symbol, file_p, _ = parse_symbol_file(args.symbol)
    if symbol.kind != KIND_FINITE:
        raise CliError("generate expects a finite symbol file holding the even h coefficients")
    p = args.p if args.p is not None else file_p
    p = _require(p, "--p")
    try:
        table = generate_j_symmetric(symbol.coeffs, p, args.k_max)
    except ValueError as exc:
        raise CliError(str(exc))
    k_check = args.k_max // 2
    ok, res = criterion_coefficients(table, p, k_check, args.tol)

    if args.out is not None:
        symbol_doc = {
            "kind": "generated",
            "p": complex(p),
            "h_coeffs": _coeff_list(symbol.coeffs),
        }
        Path(args.out).write_text(dump_json(symbol_doc) + "\n")

    report = {
        "parameters": {"p": complex(p), "k_window": args.k_max, "k_max_checked": k_check, "tol": args.tol},
        "verdicts": {"coefficients": ok},
        "residuals": {"coefficients_max": float(np.max(res))},
        "coefficients": _coeff_list(table.coeffs),
        "notes": [],
    }
    return (0 if ok else 1), report


def cmd_matrix(args) -> tuple[int, dict]:
    symbol, file_p, _ = parse_symbol_file(args.symbol)
    order = args.order
    needs_p = args.basis in ("rational", "closed_form")
    p = args.p if args.p is not None else file_p
    if needs_p:
        p = _require(p, "--p")
    report: dict = {
        "parameters": {
            "basis": args.basis,
            "order": order,
            "samples": args.samples,
            "p": complex(p) if needs_p else None,
        },
        "verdicts": {},
        "residuals": {},
        "notes": [],
    }
    if args.basis == "monomial":
        table = build_fourier_table(symbol, order, args.samples)
        matrix = toeplitz_monomial(table, order)
        report["matrix"] = _complex_matrix(matrix.entries)
    elif args.basis == "closed_form":
        table = build_fourier_table(symbol, order, args.samples)
        matrix = toeplitz_rational_closed_form(table, p, order)
        report["matrix"] = _complex_matrix(matrix.entries)
    else:
        quad = toeplitz_quadrature(symbol, "rational", p, order, args.samples)
        table = build_fourier_table(symbol, order, args.samples)
        closed = toeplitz_rational_closed_form(table, p, order)
        gap = float(np.max(np.abs(quad.entries - closed.entries)))
        report["matrix"] = _complex_matrix(quad.entries)
        report["closed_form_matrix"] = _complex_matrix(closed.entries)
        report["residuals"]["max_entry_gap"] = gap
    return 0, report


# ---------------------------------------------------------------------------
# dispatch

_COMMANDS = {
    "basis-check": cmd_basis_check,
    "certify": cmd_certify,
    "generate": cmd_generate,
    "matrix": cmd_matrix,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        code, report = _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    envelope = {
        "tool": {"name": TOOL_NAME, "version": __version__},
        "command": argv,
        "exit_code": code,
        "report": report,
        "wall_time_seconds": time.perf_counter() - started,
    }
    text = dump_json(envelope) + "\n"
    if args.command != "generate" and args.out is not None:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def entry():  # console script
    sys.exit(main())
