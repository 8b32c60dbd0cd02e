# affinealg/src/cli/main.py
"""
main.py – command-line entry point (``python -m src.cli``).

Subcommands
-----------
classify     model class and witness isomorphism of an algebra
mul          product of two polynomials
normal-form  normal form of one expression
binomial     binomial theorems in the Weyl, shift and quantum-plane models
center       central elements (or a centralizer) up to a degree
iso          classifying isomorphism, verified
bench        multiplication-cache benchmark, optionally archived
selftest     engine agreement over every table row

Exit codes: 0 on success, 1 on a computational error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Callable, Final, Sequence

from src.cli.bench import (
    DEFAULT_SEED,
    default_workloads,
    report_dict,
    request_table,
    run_bench,
    to_csv,
)
from src.cli.expr import parse_poly
from src.cli.selftest import run_selftest
from src.core.algebra import AlgebraParams, ModelClass, class_invariant, classify, model_params
from src.core.center import DegreeWindow, center_basis, centralizer_basis
from src.core.coeffs import SYMBOLS, FieldMode
from src.core.errors import AffineAlgebraError, ExprSyntaxError, InvalidParameters, UnknownSymbol
from src.core.identities import bracket_pow, shift_binomial, weyl_binomial_defect, weyl_power_defect
from src.core.isomorphism import iso_from_model, isomorphism_residual, table_map, verify_isomorphism
from src.core.ncpoly import CacheStrategy, Engine, NcPoly, mul, pow
from src.infrastructure.database.bench_store import list_runs, save_report
from src.utils.logging import get_logger

log = get_logger(__name__)

#: Parameter texts of the ``--algebra`` presets; symbol names stay symbolic.
_PRESETS: Final[dict[str, tuple[str, str, str, str]]] = {
    "commutative": ("1", "0", "0", "0"),
    "weyl": ("1", "0", "0", "1"),
    "shift": ("1", "0", "1", "0"),
    "quantum": ("q", "0", "0", "0"),
    "qweyl": ("q", "0", "0", "1"),
    "generic": SYMBOLS,
}


class _UsageError(Exception):
    """Raised by the argument parser instead of exiting."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.prog}: {message}")


#: argparse reads "-1/2" as an option string, so such values are glued to their flag.
_NEGATIVE_SCALAR: Final = re.compile(r"-(\d+(/\d+)?|\d*\.\d+)")
_SCALAR_FLAGS: Final = frozenset(f"--{name}" for name in SYMBOLS)


def _glue_negative_scalars(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--beta -1/2`` as ``--beta=-1/2``; other tokens pass through."""
    out: list[str] = []
    for token in argv:
        if out and out[-1] in _SCALAR_FLAGS and _NEGATIVE_SCALAR.fullmatch(token):
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


# --------------------------------------------------------------------------- #
# Algebra and field selection
# --------------------------------------------------------------------------- #


def algebra_from_args(args: argparse.Namespace) -> AlgebraParams:
    """
    Build the algebra named by ``--algebra`` and the parameter flags.

    Flags override the preset; without a preset every omitted parameter is
    symbolic.  Any symbolic parameter puts the algebra over
    QQ(q, alpha, beta, gamma), which cannot be combined with ``--p``.
    """
    texts = list(_PRESETS[args.algebra or "generic"])
    for i, name in enumerate(SYMBOLS):
        value = getattr(args, name)
        if value is not None:
            texts[i] = value
    symbolic = any(t.strip() in SYMBOLS for t in texts)
    if symbolic and args.p is not None:
        raise InvalidParameters("GF(p) needs explicit values for every parameter")
    if symbolic:
        mode = FieldMode.function_field()
    elif args.p is not None:
        mode = FieldMode.prime(args.p)
    else:
        mode = FieldMode.rational()
    q, alpha, beta, gamma = (mode.parse_scalar(t) for t in texts)
    return AlgebraParams(q, alpha, beta, gamma, field=mode)


def _field_from_args(args: argparse.Namespace) -> FieldMode:
    return FieldMode.prime(args.p) if args.p is not None else FieldMode.rational()


def _poly_json(f: NcPoly) -> dict[str, Any]:
    return {
        "text": str(f),
        "terms": [{"x": a, "y": b, "coeff": str(f.coefficient(a, b))} for a, b in f.monomials()],
    }


def _emit(args: argparse.Namespace, text: str, payload: dict[str, Any]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# --------------------------------------------------------------------------- #
# Subcommands
# --------------------------------------------------------------------------- #


def _cmd_classify(args: argparse.Namespace) -> int:
    alg = algebra_from_args(args)
    cls = classify(alg)
    m = iso_from_model(alg)
    payload = {
        "algebra": str(alg),
        "class": cls.value,
        "relation": cls.relation,
        "invariant": str(class_invariant(alg).gamma_prime),
        "map": {"X": str(m.image_x), "Y": str(m.image_y)},
    }
    _emit(args, f"{cls.value}\n{cls.relation}\n{m}", payload)
    return 0


def _cmd_mul(args: argparse.Namespace) -> int:
    alg = algebra_from_args(args)
    engine = Engine(args.engine)
    f = parse_poly(args.left, alg, engine)
    g = parse_poly(args.right, alg, engine)
    product = mul(f, g, engine)
    _emit(args, str(product), _poly_json(product))
    return 0


def _cmd_normal_form(args: argparse.Namespace) -> int:
    alg = algebra_from_args(args)
    f = parse_poly(args.expr, alg, Engine(args.engine))
    _emit(args, str(f), _poly_json(f))
    return 0


def _cmd_binomial(args: argparse.Namespace) -> int:
    n = args.n
    mode = _field_from_args(args)
    engine = Engine(args.engine)
    if args.kind == "weyl":
        computed = weyl_power_defect(n, mode, engine)
        expected = weyl_binomial_defect(n, mode)
        label = f"(x+y)^{n} - [x+y]^{n}"
    elif args.kind == "shift":
        alg = model_params(ModelClass.SHIFT, mode)
        computed = pow(NcPoly.x(alg) + NcPoly.y(alg), n, engine)
        expected = shift_binomial(n, mode)
        label = f"(x+y)^{n}"
    else:
        if args.q is None:
            mode = FieldMode.function_field()
            q = mode.symbol("q")
        else:
            q = mode.parse_scalar(args.q)
        alg = model_params(ModelClass.QUANTUM_PLANE, mode, q)
        x, y = NcPoly.x(alg), NcPoly.y(alg)
        computed = pow(x + y, n, engine)
        expected = bracket_pow(x, y, n, alg.q)
        label = f"(x+y)^{n}"
    equal = computed == expected
    payload = {"kind": args.kind, "n": n, "lhs": label, "value": _poly_json(computed), "matches": equal}
    _emit(args, f"{label} = {computed}\nmatches: {str(equal).lower()}", payload)
    return 0 if equal else 1


def _cmd_center(args: argparse.Namespace) -> int:
    alg = algebra_from_args(args)
    window = DegreeWindow(args.degree)
    if args.of is not None:
        basis = centralizer_basis(parse_poly(args.of, alg, Engine(args.engine)), window)
        title = f"centralizer of {args.of} up to degree {args.degree}"
    else:
        basis = center_basis(alg, window)
        title = f"center up to degree {args.degree}"
    payload = {"algebra": str(alg), "degree": args.degree, "basis": [str(f) for f in basis]}
    lines = [f"{title}: {len(basis)} element(s)"] + [f"  {f}" for f in basis]
    _emit(args, "\n".join(lines), payload)
    return 0


def _cmd_iso(args: argparse.Namespace) -> int:
    alg = algebra_from_args(args)
    if args.table:
        cls, m = table_map(alg)
    else:
        cls, m = classify(alg), iso_from_model(alg)
    verified = verify_isomorphism(m)
    payload: dict[str, Any] = {
        "class": cls.value,
        "map": {"X": str(m.image_x), "Y": str(m.image_y)},
        "verified": verified,
    }
    lines = [cls.value, str(m), f"verified: {str(verified).lower()}"]
    if not verified:
        residual = isomorphism_residual(m)
        payload["residual"] = str(residual)
        lines.append(f"residual: {residual}")
    _emit(args, "\n".join(lines), payload)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.history:
        for row in list_runs(args.db):
            print(
                f"{row.id:>4}  {row.created_at}  {row.workload:<16} {row.strategy:<19} "
                f"{row.wall_ms:>10.1f} ms  peak {row.peak_entries}"
            )
        return 0
    explicit = args.algebra is not None or any(getattr(args, s) is not None for s in SYMBOLS)
    alg = algebra_from_args(args) if explicit else None
    workloads = default_workloads(alg, seed=args.seed)
    if args.workload != "all":
        workloads = [w for w in workloads if w.name == args.workload]
    strategies = list(CacheStrategy) if args.strategy == "all" else [CacheStrategy(args.strategy)]
    reports = []
    for workload in workloads:
        for strategy in strategies:
            report = run_bench(workload, strategy, args.clear_above)
            reports.append(report)
            if args.store:
                save_report(report, args.db)
    if args.json:
        print(json.dumps([report_dict(r) for r in reports], indent=2))
        return 0
    for report in reports:
        if args.csv:
            print(f"# {report.workload} {report.strategy.value}")
            print(to_csv(report), end="")
            continue
        print(
            f"{report.workload} / {report.strategy.value}: {report.wall_ms:.1f} ms, "
            f"peak {report.peak_entries} entries"
        )
        print(request_table(report.requests))
    return 0


def _cmd_selftest(args: argparse.Namespace) -> int:
    results = run_selftest(args.max_degree)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{r.row:<20} {status} ({r.checked} comparisons)")
        for engine, m, n in r.mismatches:
            print(f"    {engine} differs at y^{m} x^{n}")
    return 0 if all(r.ok for r in results) else 1


# --------------------------------------------------------------------------- #
# Parser
# --------------------------------------------------------------------------- #


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--algebra", choices=sorted(_PRESETS), help="preset parameter values")
    for name in SYMBOLS:
        common.add_argument(f"--{name}", metavar="P/R", help=f"exact rational value of {name}")
    common.add_argument("--p", type=int, help="work over GF(p) instead of QQ")
    common.add_argument("--engine", choices=[e.value for e in Engine], default=Engine.AUTO.value)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="affinealg", description="Normal forms in K<x,y | yx = q*xy + alpha*x + beta*y + gamma>.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="model class and witness map")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("mul", parents=[common], help="product of two expressions")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_mul)

    p = sub.add_parser("normal-form", parents=[common], help="normal form of an expression")
    p.add_argument("expr")
    p.set_defaults(handler=_cmd_normal_form)

    p = sub.add_parser("binomial", parents=[common], help="binomial theorems of the models")
    p.add_argument("n", type=int)
    p.add_argument("--kind", choices=("weyl", "shift", "quantum"), default="weyl")
    p.set_defaults(handler=_cmd_binomial)

    p = sub.add_parser("center", parents=[common], help="central elements up to a degree")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--of", metavar="EXPR", help="centralizer of EXPR instead of the center")
    p.set_defaults(handler=_cmd_center)

    p = sub.add_parser("iso", parents=[common], help="classifying isomorphism, verified")
    p.add_argument("--table", action="store_true", help="use the literal table substitution")
    p.set_defaults(handler=_cmd_iso)

    p = sub.add_parser("bench", parents=[common], help="multiplication-cache benchmark")
    p.add_argument("--strategy", choices=["all"] + [s.value for s in CacheStrategy], default="all")
    p.add_argument("--workload", choices=("all", "powers", "random-products", "binomial"), default="all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--clear-above", type=int, metavar="D", help="drop entries with m + n > D after each operation")
    p.add_argument("--csv", action="store_true", help="request matrices as CSV")
    p.add_argument("--store", action="store_true", help="archive the runs")
    p.add_argument("--history", action="store_true", help="list archived runs and exit")
    p.add_argument("--db", help="archive file (default: the project archive)")
    p.set_defaults(handler=_cmd_bench)

    p = sub.add_parser("selftest", help="engine agreement over every table row")
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(handler=_cmd_selftest)

    return parser


# --------------------------------------------------------------------------- #
# Entry point
# --------------------------------------------------------------------------- #


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(_glue_negative_scalars(sys.argv[1:] if argv is None else argv))
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    handler: Callable[[argparse.Namespace], int] = args.handler
    log.info("running %s", args.command)
    try:
        return handler(args)
    except (ExprSyntaxError, UnknownSymbol) as exc:
        log.error("%s: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AffineAlgebraError as exc:
        log.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
