"""Command-line surface for the uncertainty toolkit.

Subcommands
-----------
moments         uncertainty report (JSON) for a piecewise-polynomial descriptor
dict-table      CSV table of the two reference envelope families
rect-scan       CSV scan of the iterated-boxcar family rect^p
symmetry-check  reflection decomposition and convexity-bound report (JSON)
spectrum-sample CSV samples of the Fourier transform for plotting
verify          run the full verification suite and report pass/fail lines

Functions enter as JSON descriptors with rational-string coefficients,

    {"breakpoints": ["-1", "0", "1"], "pieces": [["1", "1"], ["1", "-1"]]}

read from a file argument or, with ``-``, from stdin.  Every exact rational
in any output is printed as a string that parses back to the identical
value; float columns use the shortest round-trip representation.  Exit
codes: 0 on success, 1 when a verification check fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import spectrum, verify
from .bspline import rect_scan
from .dictionaries import dict_table
from .moments import (
    AtomParams,
    ZeroFunctionError,
    atom_report,
    ext_json_float,
    ext_str,
    report,
)
from .piecewise import PiecewisePoly, SupportError
from .poly import rat, rat_str
from .symmetry import ClassViolationError, reflections, theorem_bound_check

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class InputError(Exception):
    """Unusable input: malformed descriptor, bad rational, zero function."""


def _load_function(path: str) -> PiecewisePoly:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc}") from exc
    try:
        return PiecewisePoly.from_json(text)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad function descriptor in {path!r}: {exc}") from exc


def _parse_rat(text: str, flag: str):
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{flag} expects a rational, got {text!r}: {exc}") from exc


def _emit_json(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_moments(args: argparse.Namespace) -> int:
    f = _load_function(args.input)
    if args.t is not None or args.xi is not None or args.u is not None:
        params = AtomParams.of(
            _parse_rat(args.t or "1", "--t"),
            _parse_rat(args.xi or "0", "--xi"),
            _parse_rat(args.u or "0", "--u"),
        )
        rep = atom_report(f, params, class_tol=args.class_tol)
    else:
        rep = report(f, class_tol=args.class_tol)
    _emit_json(rep.to_json_dict())
    return EXIT_OK


def _cmd_dict_table(args: argparse.Namespace) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["family", "n", "sigma_x2", "sigma_w2", "U", "U_float"])
    for r in dict_table(args.family, args.n_max):
        writer.writerow(
            [
                r.family,
                r.n,
                rat_str(r.sigma_x2),
                ext_str(r.sigma_w2),
                ext_str(r.uncertainty),
                repr(r.uncertainty_float),
            ]
        )
    return EXIT_OK


def _cmd_rect_scan(args: argparse.Namespace) -> int:
    if args.p_min < 2 or args.p_max < args.p_min:
        raise InputError("need 2 <= p-min <= p-max")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["p", "u_p", "nu_p", "U", "U_float"])
    for r in rect_scan(args.p_min, args.p_max):
        writer.writerow(
            [
                r.p,
                rat_str(r.u_p),
                rat_str(r.nu_p),
                rat_str(r.uncertainty),
                repr(r.uncertainty_float),
            ]
        )
    return EXIT_OK


def _cmd_symmetry_check(args: argparse.Namespace) -> int:
    f = _load_function(args.input)
    pair = reflections(f, args.axis)
    payload = {
        "axis": args.axis,
        "axis_value": rat_str(pair.axis),
        "axis_float": float(pair.axis),
        "w": rat_str(pair.w),
        "w_float": float(pair.w),
        "f_s": pair.f_s.to_json_dict(),
        "f_d": pair.f_d.to_json_dict(),
    }
    bound = theorem_bound_check(
        f, center=not args.no_centering, class_tol=args.class_tol
    )
    payload["bound"] = {
        "centered": bound.centered,
        "axis": rat_str(bound.axis),
        "axis_float": float(bound.axis),
        "w": rat_str(bound.w),
        "w_float": float(bound.w),
        "uncertainty": ext_str(bound.uncertainty),
        "uncertainty_float": ext_json_float(bound.uncertainty),
        "uncertainty_s": ext_str(bound.uncertainty_s),
        "uncertainty_s_float": ext_json_float(bound.uncertainty_s),
        "uncertainty_d": ext_str(bound.uncertainty_d),
        "uncertainty_d_float": ext_json_float(bound.uncertainty_d),
        "cs_rhs": bound.cs_rhs,
        "cs_ok": bound.cs_ok,
        "min_ok": bound.min_ok,
        "decompositions_ok": bound.decompositions_ok,
        "ok": bound.ok,
    }
    _emit_json(payload)
    return EXIT_OK


def _cmd_spectrum_sample(args: argparse.Namespace) -> int:
    f = _load_function(args.input)
    if args.count < 2:
        raise InputError("--count must be at least 2")
    grid = np.linspace(args.omega_min, args.omega_max, args.count)
    values = spectrum.fourier_eval(f, grid)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["omega", "re", "im", "abs2"])
    for w, v in zip(grid, values):
        v = complex(v)
        writer.writerow(
            [repr(float(w)), repr(v.real), repr(v.imag), repr(abs(v) ** 2)]
        )
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verify.run_checks(args.filter)
    for res in results:
        print(res.line())
    failed = sum(1 for res in results if not res.ok)
    if not results:
        print(f"no checks match filter {args.filter!r}", file=sys.stderr)
        return EXIT_USAGE
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwuncert",
        description="exact uncertainty products of piecewise polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="uncertainty report for a descriptor")
    p.add_argument("input", help="descriptor path, or - for stdin")
    p.add_argument("--t", help="atom scale (rational, > 0)")
    p.add_argument("--xi", help="atom modulation frequency in units of 2*pi")
    p.add_argument("--u", help="atom shift (rational)")
    p.add_argument("--class-tol", type=float, default=0.0,
                   help="tolerance for boundary-zero / continuity checks")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("dict-table", help="closed-form envelope family table")
    p.add_argument("--family", choices=["G", "F"], default="G")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=_cmd_dict_table)

    p = sub.add_parser("rect-scan", help="iterated-boxcar uncertainty scan")
    p.add_argument("--p-min", type=int, default=2)
    p.add_argument("--p-max", type=int, default=64)
    p.set_defaults(func=_cmd_rect_scan)

    p = sub.add_parser("symmetry-check",
                       help="reflection halves and convexity bounds")
    p.add_argument("input", help="descriptor path, or - for stdin")
    p.add_argument("--axis", choices=["origin", "barycenter"],
                   default="barycenter",
                   help="reflection axis for the reported decomposition")
    p.add_argument("--no-centering", action="store_true",
                   help="run the bound check about the origin instead of "
                        "the barycenter")
    p.add_argument("--class-tol", type=float, default=0.0)
    p.set_defaults(func=_cmd_symmetry_check)

    p = sub.add_parser("spectrum-sample",
                       help="sample the Fourier transform on a grid")
    p.add_argument("input", help="descriptor path, or - for stdin")
    p.add_argument("--omega-min", type=float, default=-20.0)
    p.add_argument("--omega-max", type=float, default=20.0)
    p.add_argument("--count", type=int, default=401)
    p.set_defaults(func=_cmd_spectrum_sample)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--filter", default="",
                   help="only run check groups whose name contains this")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors and 0 on --help; keep both
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, ZeroFunctionError, ClassViolationError, SupportError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
