"""Command-line front end: ``reglab <command> [options]``.

Every invocation reads at most one or two JSON documents, prints exactly one
JSON document on standard output and exits with one of

    0  ok
    1  selftest ran but a check failed
    2  parse error or invalid input
    3  evaluation outside the series-reachable locus
    4  window or precision exhausted
    5  condition check failed

Errors are reported as ``{"error": {"code": ..., "message": ...}}``.
Defaults for the numeric flags can be set with REGLAB_PRIME,
REGLAB_PRECISION, REGLAB_LOG_BRANCH, REGLAB_TRUNCATION and REGLAB_SEED.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks
from .index import InvalidIntegral, NotAPrime, make_triple_data, triple_index
from .p1geom import NotAPrimeOnEnd, ResidueDiscCollision, WideOpen, global_triple_index, wide_open_ends
from .padic import PadicField, PrecisionError
from .polylog import Unreachable, li2, lmod2, ltwo
from .ratfunc import NotSplit, RationalFunction
from .regulator import (
    ConditionCheckError,
    NotExact,
    check_ccond_numeric,
    check_ocond,
    check_ocond_tilde,
    check_special_units,
    regmap_thm1,
    regmap_thm2,
    regmap_thm3,
    regmap_thm4a,
    regmap_thm4b,
)
from .serialize import (
    ParseError,
    element_from_json,
    expression_from_json,
    omega_from_json,
    padic_from_json,
    padic_to_json,
    point_from_json,
    point_to_json,
    ratfunc_from_json,
    triple_data_from_json,
    wide_open_from_json,
    wide_open_to_json,
)
from .series import WindowExhausted

EXIT_OK, EXIT_SELFTEST, EXIT_PARSE, EXIT_UNREACHABLE, EXIT_WINDOW, EXIT_CONDITION = 0, 1, 2, 3, 4, 5

FORMULAS = {
    "thm1": regmap_thm1,
    "thm2": regmap_thm2,
    "thm3": regmap_thm3,
    "thm4a": regmap_thm4a,
    "thm4b": regmap_thm4b,
}


class CommandError(Exception):
    """Carries an exit status and a machine-readable code up to :func:`main`."""

    def __init__(self, status, code, message):
        super().__init__(message)
        self.status, self.code = status, code


# exception type -> (exit status, error code); first match wins
_ERRORS = [
    ((ParseError, json.JSONDecodeError, NotAPrime, NotAPrimeOnEnd, InvalidIntegral, NotExact,
      ResidueDiscCollision, OSError), EXIT_PARSE, "parse"),
    ((Unreachable,), EXIT_UNREACHABLE, "unreachable"),
    ((WindowExhausted, PrecisionError), EXIT_WINDOW, "window"),
    ((NotSplit, ConditionCheckError), EXIT_CONDITION, "condition"),
    ((ValueError,), EXIT_PARSE, "parse"),
]


def _env(name, default):
    return os.environ.get("REGLAB_" + name, default)


def _int_env(name, default):
    raw = _env(name, None)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise CommandError(EXIT_PARSE, "parse", f"REGLAB_{name} must be an integer, got {raw!r}")


def _load(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _field(args) -> PadicField:
    branch = args.log_branch
    if isinstance(branch, str):
        try:
            branch = json.loads(branch)
        except json.JSONDecodeError:
            pass  # a bare "a/b" is not JSON
    try:
        base = PadicField(args.prime, args.precision)
        return PadicField(args.prime, args.precision, padic_from_json(base, branch))
    except ValueError as exc:
        raise CommandError(EXIT_PARSE, "parse", str(exc))


def _config(args, field) -> dict:
    return {"prime": field.p, "precision": field.prec, "log_branch": padic_to_json(field.log_branch),
            "truncation": args.truncation, "seed": args.seed}


def _value(x) -> dict:
    return {"value": padic_to_json(x), "precision": x.prec}


# -- commands -------------------------------------------------------------------

def cmd_dilog(args, field):
    fn = {"li2": li2, "lmod2": lmod2, "ltwo": ltwo}[args.command]
    z = point_from_json(args.z)
    result = fn(z, field)
    return {"z": point_to_json(z), "route": result.route, **_value(result.value)}


def cmd_triple_index(args, field):
    F, G, H, overrides = triple_data_from_json(field, _load(args.data))
    data = make_triple_data(F, G, H, **overrides)
    return {"supplied_integrals": sorted(overrides), **_value(triple_index(data))}


def _wide_open(doc, field, functions) -> WideOpen:
    if isinstance(doc, dict) and "points" in doc:
        return wide_open_from_json(field.p, doc["points"])
    if not functions:
        raise ParseError("cannot infer the removed points; give \"points\"")
    return wide_open_ends(functions, field.p)


def cmd_global_index(args, field):
    doc = _load(args.spec)
    if not isinstance(doc, dict):
        raise ParseError("global-index: expected an object with F, G, H")
    exprs = {}
    rationals = []
    for k in ("F", "G", "H"):
        raw = doc.get(k)
        if raw is None:
            raise ParseError(f"global-index: missing {k}")
        if isinstance(raw, (str, int)) or (isinstance(raw, dict) and ("factors" in raw or "num" in raw)):
            f = ratfunc_from_json(raw)
            rationals.append(f)
            exprs[k] = f
        else:
            exprs[k] = expression_from_json(field, raw)
    aux = {k: expression_from_json(field, doc[k]) for k in ("I_GdH", "I_FdH", "I_FdG") if k in doc}
    U = _wide_open(doc, field, rationals if len(rationals) == 3 else None)
    rep = global_triple_index(exprs["F"], exprs["G"], exprs["H"], U, field, truncation=args.truncation,
                              report=True, **aux)
    return {
        "wide_open": wide_open_to_json(U),
        "local": [{"end": point_to_json(end.point), **_value(v)} for end, v in rep.local],
        "nonzero_local_terms": rep.nonzero_local_terms(),
        **_value(rep.value),
    }


def _element_and_open(doc, field):
    alpha = element_from_json(doc)
    functions = []
    for _, g, f in alpha.terms:
        functions += [g, 1 - g, f]
    functions = [h for h in functions if isinstance(h, RationalFunction) and not h.is_constant()]
    return alpha, _wide_open(doc, field, functions)


def _ccond_entry(r) -> dict:
    total = r["lmod2_sum"]
    return {"point": point_to_json(r["point"]), "lmod2_sum": None if total is None else padic_to_json(total),
            "wedge_zero": r["wedge_zero"], "status": r["status"]}


def cmd_check_element(args, field):
    alpha, U = _element_and_open(_load(args.element), field)
    ocond, tilde = check_ocond(alpha), check_ocond_tilde(alpha)
    ccond = check_ccond_numeric(alpha, field)
    report = {
        "wide_open": wide_open_to_json(U),
        "special_units": check_special_units(alpha, U),
        "ocond": ocond,
        "ocond_tilde": tilde,
        "ccond": [_ccond_entry(r) for r in ccond],
    }
    report["closed"] = ocond or tilde
    return report


def cmd_regulator(args, field):
    alpha, U = _element_and_open(_load(args.element), field)
    omega = omega_from_json(_load(args.omega))
    if not check_special_units(alpha, U):
        raise CommandError(EXIT_CONDITION, "condition", "some g, 1 - g or f is not a unit on the wide open")
    if args.formula in ("thm1", "thm2") and not check_ocond(alpha):
        raise CommandError(EXIT_CONDITION, "condition", f"{args.formula} needs an element satisfying Ocond")
    if args.formula in ("thm4a", "thm4b") and not check_ocond_tilde(alpha):
        raise CommandError(EXIT_CONDITION, "condition",
                           f"{args.formula} needs an element satisfying the tilde condition")
    rep = FORMULAS[args.formula](alpha, omega, U, field, truncation=args.truncation, report=True)
    return {
        "formula": args.formula,
        "wide_open": wide_open_to_json(U),
        "local_terms": [{"label": _label(lbl), **_value(v)} for lbl, v in rep.local_terms],
        "nonzero_local_terms": rep.nonzero_local_terms(),
        **_value(rep.value),
    }


def _label(lbl):
    if isinstance(lbl, tuple):
        return [_label(x) for x in lbl]
    if isinstance(lbl, (int, str)):
        return lbl
    return point_to_json(lbl)


def cmd_selftest(args, field):
    names = [args.suite] if args.suite else list(checks.SUITES)
    results = []
    for name in names:
        for r in checks.run_suite(name, seed=args.seed, prime=field.p, precision=field.prec, full=args.full):
            results.append({"suite": name, **r.to_json()})
    passed = all(r["passed"] for r in results)
    return {"passed": passed, "checks": results}


COMMANDS = {
    "li2": cmd_dilog,
    "lmod2": cmd_dilog,
    "ltwo": cmd_dilog,
    "triple-index": cmd_triple_index,
    "global-index": cmd_global_index,
    "check-element": cmd_check_element,
    "regulator": cmd_regulator,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=_int_env("PRIME", 7))
    common.add_argument("--precision", type=int, default=_int_env("PRECISION", 20),
                        help="absolute p-adic precision N")
    common.add_argument("--log-branch", default=_env("LOG_BRANCH", "0"),
                        help="value of log p: an integer, a/b or a JSON p-adic literal")
    common.add_argument("--truncation", type=int, default=_int_env("TRUNCATION", 64),
                        help="largest series window tried before giving up")
    common.add_argument("--seed", type=int, default=_int_env("SEED", 0))

    parser = argparse.ArgumentParser(prog="reglab", description="p-adic indices, dilogarithms and regulators")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("li2", "lmod2", "ltwo"):
        p = sub.add_parser(name, parents=[common], help=f"evaluate {name} at a rational point")
        p.add_argument("z", help="a rational number or inf")
    p = sub.add_parser("triple-index", parents=[common], help="local triple index of series data")
    p.add_argument("data", help="JSON file with F, G, H and optional I_GdH, I_FdH, I_FdG")
    p = sub.add_parser("global-index", parents=[common], help="sum of local triple indices over the ends")
    p.add_argument("spec", help="JSON file with F, G, H and optional points")
    p = sub.add_parser("check-element", parents=[common], help="closedness and boundary checks")
    p.add_argument("element", help="JSON file with a list of {c, g, f} terms")
    p = sub.add_parser("regulator", parents=[common], help="evaluate a regulator formula")
    p.add_argument("--formula", choices=sorted(FORMULAS), required=True)
    p.add_argument("element")
    p.add_argument("omega", help="JSON file with {\"exact\": h} or {\"form\": r}")
    p = sub.add_parser("selftest", parents=[common], help="run the seeded self-test suites")
    p.add_argument("--suite", choices=sorted(checks.SUITES))
    p.add_argument("--full", action="store_true", help="run at acceptance size")
    return parser


def _classify(exc):
    for types, status, code in _ERRORS:
        if isinstance(exc, types):
            return status, code
    return None


def run(argv=None) -> tuple[int, dict]:
    """Parse ``argv`` and execute; returns (exit status, report)."""
    try:
        args = build_parser().parse_args(argv)
        field = _field(args)
        body = COMMANDS[args.command](args, field)
    except CommandError as exc:
        return exc.status, {"error": {"code": exc.code, "message": str(exc)}}
    except Exception as exc:
        kind = _classify(exc)
        if kind is None:
            raise
        status, code = kind
        return status, {"error": {"code": code, "message": str(exc)}}
    status = EXIT_OK
    if args.command == "selftest" and not body["passed"]:
        status = EXIT_SELFTEST
    if args.command == "check-element" and not body["closed"]:
        status = EXIT_CONDITION
    return status, {"command": args.command, "config": _config(args, field), **body}


def main(argv=None) -> int:
    status, report = run(argv)
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
