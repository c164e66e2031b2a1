"""Command line front end: ``padic-lambda <subcommand> [options]``.

Numeric inputs are exact rationals written ``m/n`` (or integers).  Reports are
printed as JSON (default) or CSV; ``--output`` writes them to a file instead.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import dynamics, gibbs, subshift
from .errors import BadParameter, PadicError
from .padic import DEFAULT_PRECISION, parse_literal
from .residues import Polynomial, kth_roots_of_minus_one_mod_p, poly_roots_Qp


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated integers: {text!r}") from exc


def rational_list(text: str) -> list[Fraction]:
    return [rational(v) for v in text.split(",")]


# -- shared option groups ---------------------------------------------------------

def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", help="write the report to this path")
    sp.add_argument("--format", choices=("json", "csv"), default="json")


def _add_model(sp: argparse.ArgumentParser, lam: bool = True) -> None:
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--rho", type=rational, required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--N", type=int, help="Ising coupling exponent")
    if lam:
        group.add_argument("--lambda", dest="lam", type=int_list,
                           help="interaction table l11,l1m,lm1,lmm")


def _params(args) -> gibbs.ModelParams:
    if getattr(args, "lam", None) is not None:
        if len(args.lam) != 4:
            raise BadParameter("--lambda needs four integers")
        return gibbs.ModelParams(args.p, args.k, args.rho,
                                 gibbs.InteractionSpec.from_table(args.lam), args.precision)
    return gibbs.ModelParams.ising(args.p, args.k, args.rho, args.N, args.precision)


def _add_map(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--map", choices=("ising", "lambda", "small_rho_f", "g"), default="ising")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--rho", type=rational)
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--lambda", dest="lam", type=int_list)
    for name in ("A", "C", "a", "b", "c"):
        sp.add_argument(f"--{name}", type=rational)


def _map(args) -> dynamics.RationalMapOnQp:
    def need(*names):
        missing = [n for n in names if getattr(args, n) is None]
        if missing:
            raise BadParameter(f"--map {args.map} needs " + ", ".join("--" + n for n in missing))
    if args.map == "ising":
        need("rho")
        return dynamics.make_ising_potts(args.p, args.k, args.rho, args.N, args.precision)
    if args.map == "lambda":
        need("rho", "lam")
        return dynamics.make_lambda_TI(args.p, args.k, args.rho, args.lam, args.precision)
    if args.map == "small_rho_f":
        need("A", "C")
        return dynamics.make_small_rho_f(args.p, args.A, args.C, args.precision)
    need("a", "b", "c")
    return dynamics.make_Ep_regime_g(args.p, args.a, args.b, args.c, args.precision)


# -- subcommands ------------------------------------------------------------------------
# each returns (json payload, csv header, csv rows)

Result = tuple[dict, list[str], list[list]]


def cmd_norm(args) -> Result:
    x = parse_literal(str(args.value), args.p, args.precision)
    norm = x.norm()
    payload = {"p": args.p, "value": str(args.value), "exponent": norm.exponent,
               "norm": str(norm), "literal": x.literal(), "digits": x.to_dict()}
    return payload, ["p", "value", "exponent", "norm"], \
        [[args.p, str(args.value), norm.exponent, str(norm)]]


def cmd_roots(args) -> Result:
    if args.poly is not None:
        search = poly_roots_Qp(Polynomial(args.poly), args.p, precision=args.precision)
        payload = {"p": args.p, "poly": [str(c) for c in args.poly], **search.to_dict()}
        rows = [[r.valuation, r.literal()] for r in search.roots]
        return payload, ["valuation", "root"], rows
    if args.k is None:
        raise BadParameter("roots needs --k or --poly")
    report = kth_roots_of_minus_one_mod_p(args.p, args.k)
    return report.to_dict(), ["residue"], [[r] for r in sorted(report.roots_mod_p)]


def cmd_fixpoints(args) -> Result:
    fmap = _map(args)
    window = "regime" if args.window == "regime" else None
    search = dynamics.fixed_points(fmap, window)
    payload = {"map": fmap.to_dict(), **search.to_dict()}
    rows = [[r.point.literal(), r.valuation, r.classification.value,
             r.multiplier_norm.exponent] for r in search.points]
    return payload, ["point", "valuation", "class", "multiplier_exponent"], rows


def cmd_orbit(args) -> Result:
    fmap = _map(args)
    trace = dynamics.iterate_orbit(fmap, args.x0, args.steps, args.tol, args.target)
    payload = {"map": fmap.to_dict(), **trace.to_dict()}
    rows = [[i, x.literal()] for i, x in enumerate(trace.iterates)]
    return payload, ["step", "x"], rows


def cmd_subshift(args) -> Result:
    setup = subshift.build_ising_repeller(args.p, args.k, args.rho, args.N, args.precision)
    setup.seed = args.seed
    subshift.scaling_exponents(setup, args.samples)
    inc = subshift.incidence_matrix(setup)
    conj = subshift.verify_shift_conjugacy(setup, args.m)
    payload = {"setup": setup.to_dict(), "incidence": inc.to_dict(),
               "sampled_incidence": subshift.sampled_incidence_matrix(setup),
               "conjugacy": conj.to_dict()}
    rows = [[r.m, r.trace, r.periodic_points_in_X, r.match] for r in conj.rows]
    return payload, ["m", "trace", "periodic_points_in_X", "match"], rows


def _census(params: gibbs.ModelParams) -> gibbs.MeasureCensus:
    if params.interaction.is_ising:
        return gibbs.ti_census_ising(params)
    return gibbs.lambda_k2_analysis(params)


def cmd_census(args) -> Result:
    census = _census(_params(args))
    payload = census.to_dict()
    payload["count"] = census.count
    rows = [[e.h.literal(), e.fixed_point.classification.value if e.fixed_point else "",
             e.boundedness.bounded] for e in census.entries]
    return payload, ["h", "class", "bounded"], rows


def _fields(args, params: gibbs.ModelParams) -> list:
    if args.h is not None:
        return [gibbs.TranslationInvariant(parse_literal(str(args.h), params.prime,
                                                         params.precision))]
    if args.m and args.m > 1:
        return gibbs.hm_periodic_fields(params, args.m, verify_depth=0)
    return [gibbs.TranslationInvariant(e.h) for e in _census(params).entries]


def cmd_compat(args) -> Result:
    params = _params(args)
    reports = []
    for fld in _fields(args, params):
        rep = gibbs.check_compatibility(params, args.n, fld)
        reports.append({"field": fld.to_dict(), **rep.to_dict()})
    rows = [[r["field"].get("h") or ";".join(r["field"]["cycle"]), r["n"], r["holds"],
             r["worst_discrepancy_valuation"]] for r in reports]
    return {"params": params.to_dict(), "reports": reports}, \
        ["field", "n", "holds", "worst_discrepancy_valuation"], rows


def cmd_bounded(args) -> Result:
    params = _params(args)
    classify = gibbs.boundedness_classify if params.interaction.is_ising \
        else gibbs.boundedness_generic
    if args.h is not None:
        hs = [parse_literal(str(args.h), params.prime, params.precision)]
    else:
        hs = [e.h for e in _census(params).entries]
    reports = [classify(params, h, args.depth) for h in hs]
    rows = [[i, n + 1, v] for i, r in enumerate(reports) for n, v in enumerate(r.profile)]
    return {"params": params.to_dict(), "reports": [r.to_dict() for r in reports]}, \
        ["field", "n", "valuation_of_measure_norm"], rows


def cmd_periodic(args) -> Result:
    params = _params(args)
    fields = gibbs.hm_periodic_fields(params, args.m, args.verify_depth)
    rows = [[i, j, h.literal()] for i, f in enumerate(fields)
            for j, h in enumerate(getattr(f, "cycle", (getattr(f, "h", None),)))]
    return {"params": params.to_dict(), "m": args.m,
            "fields": [f.to_dict() for f in fields]}, ["field", "level", "h"], rows


# -- parser and dispatch ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-lambda",
                                     description="p-adic lambda-model analyses on Cayley trees")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("norm", help="p-adic norm of a rational")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--value", type=rational, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("roots", help="k-th roots of -1 mod p, or roots of a polynomial in Q_p")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--poly", type=rational_list,
                    help="coefficients c0,c1,... from the constant term up")
    _add_common(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("fixpoints", help="fixed points and their classes")
    _add_map(sp)
    sp.add_argument("--window", choices=("regime", "newton"), default="regime")
    _add_common(sp)
    sp.set_defaults(func=cmd_fixpoints)

    sp = sub.add_parser("orbit", help="iterate a map from a starting point")
    _add_map(sp)
    sp.add_argument("--x0", type=rational, required=True)
    sp.add_argument("--steps", type=int, default=50)
    sp.add_argument("--tol", type=int, help="stop when |x_n - target| < p^-tol")
    sp.add_argument("--target", type=rational)
    _add_common(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("subshift", help="repeller cover, incidence matrix, conjugacy table")
    _add_model(sp, lam=False)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--samples", type=int, default=subshift.DEFAULT_SAMPLES)
    _add_common(sp)
    sp.set_defaults(func=cmd_subshift)

    sp = sub.add_parser("census", help="translation-invariant measures and phase verdict")
    _add_model(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("compat", help="brute-force compatibility check")
    _add_model(sp)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--h", type=rational, help="field value; default: every census field")
    sp.add_argument("--m", type=int, default=1, help="use the m-periodic fields")
    _add_common(sp)
    sp.set_defaults(func=cmd_compat)

    sp = sub.add_parser("bounded", help="boundedness verdict and valuation profile")
    _add_model(sp)
    sp.add_argument("--h", type=rational, help="field value; default: every census field")
    sp.add_argument("--depth", type=int, default=gibbs.PROFILE_DEPTH)
    _add_common(sp)
    sp.set_defaults(func=cmd_bounded)

    sp = sub.add_parser("periodic", help="level-periodic fields from m-cycles")
    _add_model(sp, lam=False)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--verify-depth", type=int, default=2)
    _add_common(sp)
    sp.set_defaults(func=cmd_periodic)
    return parser


def render(result: Result, fmt: str) -> str:
    payload, header, rows = result
    if fmt == "json":
        return json.dumps(payload, indent=2, default=str) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func: Callable[..., Result] = args.func
    try:
        text = render(func(args), args.format)
    except PadicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ZeroDivisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
