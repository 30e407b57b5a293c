"""Command-line front end.

Subcommands: ``params``, ``curve``, ``relation``, ``region``, ``optimize``,
``algebraic``, ``verify``.  Input terms are JSON files with polynomial
strings; all output is deterministic JSON (rationals as "p/q" strings,
never floats) or CSV.  Exit codes: 0 success, 1 no relation found,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .polyarith import BiPoly, ParseError, parse_poly, parse_rational, poly_str
from .hyperexp import HyperexpTerm, TermError, greek_params, validate
from .ansatz import ShapeError
from . import bounds
from .telescope import (
    NAIVE,
    SHAPED,
    RegionReport,
    TelescopingRelation,
    minimal_order_relation,
    region_scan,
    telescope_at,
    verify_relation,
)
from .algebraic import AlgebraicInput, annihilates, series_solve, to_hyperexp

_METRIC_NAMES = {
    "order": bounds.ORDER,
    "cost": bounds.COST,
    "size": bounds.SIZE_PQ,
    "tsize": bounds.SIZE_P,
    "rec": bounds.REC_ORDER,
    "degree": bounds.DEGREE,
}


class InputError(Exception):
    pass


def _rat_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def load_term(path: str) -> HyperexpTerm:
    data = _load_json(path)
    try:
        c0 = parse_poly(data.get("c0", "1"))
        a = parse_poly(data.get("a", "0"))
        b = parse_poly(data.get("b", "1"))
        factors = tuple(
            (parse_poly(f["poly"]), parse_rational(f["exponent"]))
            for f in data.get("factors", ()))
        return HyperexpTerm(c0=c0, a=a, b=b, factors=factors)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: malformed term file ({exc})") from None
    except (ParseError, TermError) as exc:
        raise InputError(f"{path}: {exc}") from None


def relation_to_json(rel: TelescopingRelation) -> dict:
    return {
        "order": rel.r,
        "degree": rel.d,
        "telescoper": [poly_str(p) for p in rel.p],
        "certificate": {
            "numerator": poly_str(rel.q_num),
            "denominator_power": rel.q_denom_power,
        },
    }


def relation_from_json(data: dict) -> TelescopingRelation:
    try:
        p = tuple(parse_poly(s) for s in data["telescoper"])
        cert = data["certificate"]
        return TelescopingRelation(int(data["order"]), int(data["degree"]), p,
                                   parse_poly(cert["numerator"]),
                                   int(cert["denominator_power"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed relation JSON: {exc}") from None


def _emit(obj, out_path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    _write(text, out_path)


def _write(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def emit_region_csv(report: RegionReport, sink) -> None:
    """Rows "r,d_min" in ascending order of r; LF endings, no padding."""
    sink.write("r,d_min\n")
    for r in sorted(report.boundary):
        sink.write(f"{r},{report.boundary[r]}\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_params(args) -> int:
    term = load_term(args.term)
    warnings = validate(term)
    p = greek_params(term)
    _emit({
        "alpha": p.alpha, "beta": p.beta, "gamma": p.gamma,
        "omega": _rat_str(p.omega), "omega_is_nat": p.omega_is_nat,
        "delta": p.delta, "delta_true": p.delta_true,
        "eta": _rat_str(p.eta),
        "phi1": p.phi1, "phi2": p.phi2, "phi3": p.phi3,
        "degx_c0": p.degx_c0, "degy_c0": p.degy_c0,
        "warnings": warnings,
    }, args.output)
    return 0


def _cmd_curve(args) -> int:
    term = load_term(args.term)
    validate(term)
    c = bounds.curve(greek_params(term))
    _emit({
        "psi": c.psi, "vartheta": c.vartheta, "varphi": c.varphi,
        "varphi_prime": c.varphi_prime,
        "minimal_order": c.psi + 1,
        "minimal_degree": c.vartheta + 1,
    }, args.output)
    return 0


def _cmd_relation(args) -> int:
    term = load_term(args.term)
    validate(term)
    mode = NAIVE if args.mode == "naive" else SHAPED
    try:
        if args.order is not None:
            if args.degree is None:
                raise InputError("--degree is required with --order")
            rel = telescope_at(term, args.order, args.degree, mode=mode,
                               w_override=args.w)
        else:
            rel = minimal_order_relation(term, args.rmax)
    except ShapeError as exc:
        raise InputError(str(exc)) from None
    if rel is None:
        sys.stderr.write("no relation found\n")
        return 1
    _emit(relation_to_json(rel), args.output)
    return 0


def _cmd_region(args) -> int:
    term = load_term(args.term)
    validate(term)
    report = region_scan(term, r_max=args.rmax, d_max=args.dmax, r_min=args.rmin)
    if args.format == "csv":
        import io
        buf = io.StringIO()
        emit_region_csv(report, buf)
        _write(buf.getvalue(), args.output)
    else:
        _emit({
            "r_min": report.r_range[0], "r_max": report.r_range[1],
            "d_max": report.d_range[1],
            "boundary": {str(r): d for r, d in sorted(report.boundary.items())},
        }, args.output)
    return 0


def _cmd_optimize(args) -> int:
    term = load_term(args.term)
    validate(term)
    rep = bounds.optimize_metric(greek_params(term), _METRIC_NAMES[args.metric],
                                 args.rcap)
    _emit({
        "metric": args.metric,
        "r": rep.r_opt,
        "d": rep.d_opt,
        "value": _rat_str(rep.value),
    }, args.output)
    return 0


def _cmd_algebraic(args) -> int:
    data = _load_json(args.input)
    try:
        m = parse_poly(data["m"])
    except KeyError:
        raise InputError(f"{args.input}: expected a JSON object with an 'm' entry")
    except ParseError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    try:
        inp = AlgebraicInput(m, parse_rational(args.a0))
    except (ValueError, ParseError) as exc:
        raise InputError(str(exc)) from None
    from .polyarith import degree as _deg
    tau_x = max(int(_deg(m, "x")), 1)
    tau_y = int(_deg(m, "y"))
    part1, part2, part3 = bounds.algebraic_size_formulas(tau_x, tau_y)
    series = series_solve(inp, args.terms)
    term = to_hyperexp(inp)
    rel = telescope_at(term, part1[0], part1[1])
    out = {
        "predicted": {
            "minimal_order": list(part1),
            "double_order": list(part2),
            "recurrence": list(part3),
        },
        "series": [_rat_str(c) for c in series.coeffs],
    }
    if rel is None:
        out["telescoper"] = None
        _emit(out, args.output)
        sys.stderr.write("no relation found\n")
        return 1
    out["telescoper"] = relation_to_json(rel)
    out["annihilates"] = annihilates(rel.p, series)
    _emit(out, args.output)
    return 0


def _cmd_verify(args) -> int:
    term = load_term(args.term)
    rel = relation_from_json(_load_json(args.relation))
    ok = verify_relation(term, rel)
    _emit({"verified": ok}, args.output)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="telescoper",
        description="Telescoping relations for bivariate hyperexponential terms, "
                    "with order/degree trade-off curves.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    p = sub.add_parser("params", help="measured parameters of a term")
    p.add_argument("term")
    add_common(p)
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser("curve", help="existence-curve coefficients")
    p.add_argument("term")
    add_common(p)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("relation", help="compute a telescoping relation")
    p.add_argument("term")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--rmax", type=int, default=8,
                   help="order cap for the minimal-order search (when --order is omitted)")
    p.add_argument("--mode", choices=("shaped", "naive"), default="shaped")
    p.add_argument("--w", type=int, default=None, help="override the shape cutoff")
    add_common(p)
    p.set_defaults(func=_cmd_relation)

    p = sub.add_parser("region", help="minimal feasible degree per order")
    p.add_argument("term")
    p.add_argument("--rmin", type=int, default=1)
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    add_common(p)
    p.set_defaults(func=_cmd_region)

    p = sub.add_parser("optimize", help="order minimizing an output metric")
    p.add_argument("term")
    p.add_argument("--metric", choices=sorted(_METRIC_NAMES), required=True)
    p.add_argument("--rcap", type=int, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("algebraic",
                       help="series, predicted sizes, and telescoper for an algebraic function")
    p.add_argument("input", help="JSON file with the minimal polynomial under 'm'")
    p.add_argument("--a0", required=True, help="initial value (rational)")
    p.add_argument("--terms", type=int, default=40, help="series truncation order")
    add_common(p)
    p.set_defaults(func=_cmd_algebraic)

    p = sub.add_parser("verify", help="re-verify a relation JSON against a term")
    p.add_argument("term")
    p.add_argument("relation")
    add_common(p)
    p.set_defaults(func=_cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, TermError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
