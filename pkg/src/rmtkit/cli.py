"""Command-line interface.

Three subcommands: ``verify`` runs a single identity (catalog pair or
user-supplied expressions), ``corpus`` runs the built-in regression cases,
``residue`` demonstrates pole-residue convergence.

Exit codes: 0 pass, 1 verification failure, 2 input error.  Results go to
standard output (a fixed-width table, or JSON lines with ``--json``);
diagnostics go to standard error.  All numbers are printed with 15
significant digits and records serialise keys in a fixed order, so output
is reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import transforms
from .corpus import builtin_cases, run_corpus, scale_tolerances
from .errors import ExprSyntaxError, RmtError
from .expr import evaluate, parse
from .quadrature import QuadratureConfig
from .sequences import PLAIN, SeriesPair, catalog_get, catalog_ids
from .transforms import IdentityReport, nth_derivative_fd

__all__ = ["main"]

_IDENTITIES = ("frullani", "lemma2", "rmt", "hardy")

# OutputRecord keys, in the documented emission order.
_RECORD_KEYS = (
    "command",
    "inputs",
    "lhs_value",
    "lhs_error",
    "rhs_value",
    "discrepancy",
    "passed",
    "evaluations",
    "warnings",
)


class _InputError(Exception):
    """User input problem; maps to exit code 2."""


def _fmt(value: float) -> str:
    if value != value:  # NaN
        return "nan"
    return f"{value:.15g}"


def _json_float(value: float):
    if not math.isfinite(value):
        return None
    return float(f"{value:.15g}")


def _record(command: str, inputs: dict, report: IdentityReport) -> dict:
    return {
        "command": command,
        "inputs": {k: str(v) for k, v in inputs.items()},
        "lhs_value": _json_float(report.lhs.value),
        "lhs_error": _json_float(report.lhs.error_estimate),
        "rhs_value": _json_float(report.rhs),
        "discrepancy": _json_float(report.abs_discrepancy),
        "passed": report.passed,
        "evaluations": report.lhs.evaluations,
        "warnings": list(report.warnings),
    }


def _emit_json(record: dict) -> None:
    assert tuple(record) == _RECORD_KEYS
    sys.stdout.write(json.dumps(record, separators=(",", ":")) + "\n")


_TABLE_COLUMNS = (
    ("identity", 22),
    ("lhs_value", 22),
    ("lhs_error", 12),
    ("rhs_value", 22),
    ("discrepancy", 12),
    ("status", 6),
)


def _table_header() -> str:
    return "  ".join(name.ljust(width) for name, width in _TABLE_COLUMNS)


def _table_row(identity: str, report: IdentityReport) -> str:
    cells = (
        identity.ljust(22),
        _fmt(report.lhs.value).ljust(22),
        f"{report.lhs.error_estimate:.2e}".ljust(12),
        _fmt(report.rhs).ljust(22),
        f"{report.abs_discrepancy:.2e}".ljust(12),
        ("pass" if report.passed else "FAIL").ljust(6),
    )
    row = "  ".join(cells)
    if report.warnings:
        row += "  [" + "; ".join(report.warnings) + "]"
    return row


def _parse_params(items: list[str]) -> dict[str, float]:
    params = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise _InputError(f"--param expects NAME=VALUE, got {item!r}")
        try:
            params[name] = float(value)
        except ValueError:
            raise _InputError(f"--param {name}: {value!r} is not a number") from None
    return params


def _quad_config(args: argparse.Namespace) -> QuadratureConfig:
    try:
        return QuadratureConfig(
            abs_tol=args.abs_tol,
            rel_tol=args.rel_tol,
            max_subdivisions=args.max_subdivisions,
            max_tail_panels=args.max_tail_panels,
        )
    except ValueError as exc:
        raise _InputError(str(exc)) from None


def _expression_pair(args: argparse.Namespace, identity: str) -> SeriesPair:
    if not args.closed_form:
        raise _InputError("--phi requires --closed-form as well")
    try:
        phi_node = parse(args.phi)
        closed_node = parse(args.closed_form)
    except ExprSyntaxError as exc:
        raise _InputError(f"--phi/--closed-form: {exc}") from None
    bindings = dict(args.params)

    def phi(k: float) -> float:
        return evaluate(phi_node, {**bindings, "k": k})

    def closed(x: float) -> float:
        return evaluate(closed_node, {**bindings, "x": x})

    if args.fd_derivatives:

        def derivative(order: int, x: float) -> float:
            if order == 0:
                return closed(x)
            return nth_derivative_fd(closed, x, order, args.fd_step).value

        derivative_max = 6
    else:

        def derivative(order: int, x: float) -> float:
            return closed(x) if order == 0 else math.nan

        derivative_max = 0

    f0 = args.f0 if args.f0 is not None else phi(0.0)
    finf = args.finf if args.finf is not None else 0.0
    return SeriesPair(
        phi=phi,
        closed_form=closed,
        derivative=derivative,
        derivative_max=derivative_max,
        f_at_zero=f0,
        f_at_infinity=finf,
        convergence_radius=math.inf,
        param_bindings=bindings,
        nonstandard=(phi(0.0) == 0.0),
        presentation=PLAIN if identity == "hardy" else "factorial",
        phi_plain=phi if identity == "hardy" else None,
        label="expression pair",
    )


def _build_pair(args: argparse.Namespace, identity: str) -> SeriesPair:
    if args.phi:
        if args.catalog:
            raise _InputError("--catalog and --phi are mutually exclusive")
        return _expression_pair(args, identity)
    if not args.catalog:
        raise _InputError("select a pair with --catalog or --phi/--closed-form")
    return catalog_get(args.catalog, **args.params)


def _cmd_verify(args: argparse.Namespace) -> int:
    identity = args.identity
    args.params = _parse_params(args.param)
    cfg = _quad_config(args)
    tol = args.tol

    if identity == "hardy" and args.s is not None:
        if abs(args.s - round(args.s)) < 1e-12 or not 0.0 < args.s < 1.0:
            raise _InputError("--s: s must be non-integer in (0,1)")

    pair = _build_pair(args, identity)
    inputs: dict = {"identity": identity}
    if args.catalog:
        inputs["catalog"] = args.catalog
    else:
        inputs["phi"] = args.phi
        inputs["closed_form"] = args.closed_form
    inputs.update({k: _fmt(v) for k, v in args.params.items()})

    if identity == "frullani":
        if args.alpha is None or args.beta is None:
            raise _InputError("frullani requires --alpha and --beta")
        if args.alpha <= 0 or args.beta <= 0:
            raise _InputError("--alpha/--beta must be positive")
        inputs["alpha"] = _fmt(args.alpha)
        inputs["beta"] = _fmt(args.beta)
        report = transforms.frullani(
            pair.closed_form,
            pair.f_at_zero,
            pair.f_at_infinity,
            args.alpha,
            args.beta,
            cfg,
            tolerance=tol,
        )
    elif identity == "lemma2":
        if args.n is None:
            raise _InputError("lemma2 requires --n")
        if args.n > pair.derivative_max:
            raise _InputError(
                f"--n: derivative order {args.n} unavailable for this pair"
                + ("" if args.catalog else " (use --fd-derivatives)")
            )
        inputs["n"] = str(args.n)
        report = transforms.lemma2(pair, args.n, cfg, tolerance=tol)
    else:
        if args.s is None:
            raise _InputError(f"{identity} requires --s")
        inputs["s"] = _fmt(args.s)
        op = transforms.rmt if identity == "rmt" else transforms.hardy
        report = op(pair, args.s, cfg, tolerance=tol)

    if args.json:
        _emit_json(_record("verify", inputs, report))
    else:
        print(_table_header())
        print(_table_row(report.identity, report))
    return 0 if report.passed else 1


def _cmd_corpus(args: argparse.Namespace) -> int:
    cfg = _quad_config(args)
    cases = builtin_cases()
    if args.filter:
        cases = [c for c in cases if args.filter in c.name]
    if args.tol_scale is not None:
        if args.tol_scale <= 0:
            raise _InputError("--tol-scale must be positive")
        cases = scale_tolerances(cases, args.tol_scale)
    results = run_corpus(cases, cfg)
    passed = sum(1 for _, rep in results if rep.passed)
    if args.json:
        for case, rep in results:
            inputs = {"case": case.name, "kind": case.kind, "catalog": case.catalog_id}
            inputs.update({k: _fmt(v) for k, v in case.params.items()})
            if case.kind != "frullani":
                inputs["order"] = _fmt(case.order)
            _emit_json(_record("corpus", inputs, rep))
    else:
        name_w = max([len(c.name) for c, _ in results], default=8) + 2
        header = "name".ljust(name_w) + "  " + _table_header()
        print(header)
        for case, rep in results:
            print(case.name.ljust(name_w) + "  " + _table_row(rep.identity, rep))
        print(f"summary: {passed}/{len(results)} passed")
    return 0 if passed == len(results) else 1


def _cmd_residue(args: argparse.Namespace) -> int:
    if args.m < 0:
        raise _InputError("--m must be a non-negative integer")
    if not 0 < args.eps <= 1e-2:
        raise _InputError("--eps must lie in (0, 1e-2]")
    params = _parse_params(args.param)
    pair = catalog_get(args.catalog, **params)
    if pair.nonstandard:
        raise _InputError(
            f"--catalog: {args.catalog!r} has phi(0) = 0 and no pole expansion here"
        )
    rows = []
    for eps in (args.eps, args.eps / 10.0):
        left, right = transforms.residue_check(pair, args.m, eps)
        rows.append((eps, left, right, abs(left - right)))
    converging = rows[1][3] <= rows[0][3] or rows[1][3] < 1e-12
    if args.json:
        for eps, left, right, diff in rows:
            base = {"catalog": args.catalog, "m": str(args.m), "eps": _fmt(eps)}
            base.update({k: _fmt(v) for k, v in params.items()})
            record = {
                "command": "residue",
                "inputs": base,
                "lhs_value": _json_float(left),
                "lhs_error": _json_float(diff),
                "rhs_value": _json_float(right),
                "discrepancy": _json_float(diff),
                "passed": converging,
                "evaluations": 2,
                "warnings": [],
            }
            _emit_json(record)
    else:
        print("eps           left                    right                   abs_diff")
        for eps, left, right, diff in rows:
            print(
                f"{_fmt(eps):<12}  {_fmt(left):<22}  {_fmt(right):<22}  {diff:.6e}"
            )
        print(f"converging: {'yes' if converging else 'no'}")
    return 0 if converging else 1


def _build_argparser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="rmtkit",
        description="Numerically cross-verify classical integral identities.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_quad_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--abs-tol", type=float, default=1e-12)
        p.add_argument("--rel-tol", type=float, default=1e-10)
        p.add_argument("--max-subdivisions", type=int, default=2000)
        p.add_argument("--max-tail-panels", type=int, default=60)
        p.add_argument("--json", action="store_true", help="emit JSON lines")

    verify = sub.add_parser("verify", help="check a single identity")
    verify.add_argument("identity", choices=_IDENTITIES)
    verify.add_argument("--catalog", help=f"pair id ({', '.join(catalog_ids())})")
    verify.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    verify.add_argument("--phi", help="coefficient expression in k")
    verify.add_argument("--closed-form", help="closed-form expression in x")
    verify.add_argument("--s", type=float, help="exponent for rmt/hardy")
    verify.add_argument("--n", type=int, help="derivative order for lemma2")
    verify.add_argument("--alpha", type=float, help="frullani scale")
    verify.add_argument("--beta", type=float, help="frullani scale")
    verify.add_argument("--f0", type=float, help="limit at 0 for expression pairs")
    verify.add_argument("--finf", type=float, help="limit at infinity for expression pairs")
    verify.add_argument(
        "--fd-derivatives",
        action="store_true",
        help="give expression pairs finite-difference derivatives (orders 1..6)",
    )
    verify.add_argument("--fd-step", type=float, default=0.05)
    verify.add_argument("--tol", type=float, default=None, help="identity tolerance")
    add_quad_flags(verify)
    verify.set_defaults(func=_cmd_verify)

    corpus = sub.add_parser("corpus", help="run the built-in cases")
    corpus.add_argument("--filter", help="substring filter on case names")
    corpus.add_argument("--tol-scale", type=float, default=None)
    add_quad_flags(corpus)
    corpus.set_defaults(func=_cmd_corpus)

    residue = sub.add_parser("residue", help="pole residue convergence")
    residue.add_argument("--catalog", required=True)
    residue.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    residue.add_argument("--m", type=int, required=True, help="pole index")
    residue.add_argument("--eps", type=float, default=1e-4)
    residue.add_argument("--json", action="store_true")
    residue.set_defaults(func=_cmd_residue)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = _build_argparser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RmtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OverflowError as exc:
        print(f"error: overflow: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
