"""Command-line driver.

Exit codes: 0 success, 1 verification or domain failure (the error class name
is printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analysis, solutions
from .errors import InvalidWeight, ModularError, UnsupportedClass
from .forms import FORM_IDS, FORMS, catalog
from .operators import as_weight, kz_apply
from .qseries import QSeries, to_json_dict


def _weight(text: str) -> Fraction:
    try:
        return as_weight(text)
    except InvalidWeight as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"{text} must be at least 1")
    return n


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"{text} must be nonnegative")
    return n


# -- output ----------------------------------------------------------------


def _grid(s: QSeries) -> Fraction:
    # unit steps in q, refined when the support needs a finer lattice
    return Fraction(1) if s.step is None else Fraction(1, s.step.denominator)


def _rows(s: QSeries, terms: int | None = None):
    step = _grid(s)
    e = s.lead
    n = 0
    while e < s.trunc and (terms is None or n < terms):
        yield e, s[e]
        e += step
        n += 1


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def emit_series(s: QSeries, cfg, terms: int | None = None) -> str:
    if cfg.format == "json":
        return json.dumps(to_json_dict(s, cfg.exp_den))
    if cfg.format == "csv":
        den = cfg.exp_den or s.exp_den
        lines = ["exp_num,exp_den,coeff_num,coeff_den"]
        for e, c in _rows(s, terms):
            num = e * den
            if num.denominator != 1:
                raise InvalidWeight(f"--exp-den {den} cannot represent exponent {e}")
            lines.append(f"{num.numerator},{den},{c.numerator},{c.denominator}")
        return "\n".join(lines)
    body = ", ".join(_fmt(c) for _, c in _rows(s, terms))
    return body if s.lead == 0 else f"q^{s.lead}: {body}"


def emit_record(record: dict, cfg) -> str:
    if cfg.format == "json":
        return json.dumps(record)
    if cfg.format == "csv":
        keys = list(record)
        return ",".join(keys) + "\n" + ",".join(str(record[k]) for k in keys)
    return "\n".join(f"{k}: {v}" for k, v in record.items())


# -- subcommands -----------------------------------------------------------


def _family_lead(k: Fraction, kind: str) -> Fraction:
    return Fraction(0) if kind == "normalized" else (k + 1) / 6


def cmd_expand(args) -> int:
    lead = FORMS[args.form].lead
    s = catalog(args.form, lead + args.terms)
    print(emit_series(s, args, args.terms))
    return 0


def cmd_solve(args) -> int:
    k = as_weight(args.k, allow_negative=False)
    trunc = _family_lead(k, args.kind) + args.terms
    s = solutions.known_solution(k, trunc, args.kind)
    print(emit_series(s, args, args.terms))
    if args.verify:
        res = kz_apply(s, k)
        if not res.vanishes:
            print(f"IdentityFailure: residual nonzero at q^{res.vanish_order}", file=sys.stderr)
            return 1
    return 0


def cmd_verify(args) -> int:
    rep = solutions.verify_family(args.k, args.family, args.terms)
    print(emit_record(rep.to_dict(), args))
    return 0 if rep.verified else 1


def cmd_ladder(args) -> int:
    k = as_weight(args.k)
    trunc = _family_lead(k, args.kind) + args.terms + 1
    if args.kind == "quasi":
        if k != 5:
            raise UnsupportedClass("the quasimodular ladder starts at k=5")
        fk = solutions.quasimodular_solution(0, trunc)
        state = solutions.ascend_ladder(k, fk, QSeries([1], trunc=trunc), args.steps, mu0=-1)
    else:
        fk = solutions.known_solution(k, trunc, args.kind)
        state = solutions.ascend_ladder(k, fk, solutions.ladder_seed(k, fk), args.steps)
    ok = True
    out = []
    for i, (w, s) in enumerate(state.rungs):
        rec = {"weight": str(w), "mu": str(state.mus[i]) if i < len(state.mus) else "",
               "series": emit_series(s, args, min(args.terms, 8)) if args.format == "text"
               else to_json_dict(s, args.exp_den)}
        if args.verify:
            res = kz_apply(s, w)
            rec["residual_vanishes"] = res.vanishes
            ok &= res.vanishes
        out.append(rec)
    if args.format == "json":
        print(json.dumps(out))
    else:
        for rec in out:
            tail = f"  residual_vanishes={rec['residual_vanishes']}" if args.verify else ""
            mu = f"  mu={rec['mu']}" if rec["mu"] else ""
            print(f"k={rec['weight']}{mu}{tail}\n  {rec['series']}")
    return 0 if ok else 1


def cmd_oracle(args) -> int:
    k = as_weight(args.k)
    rho = Fraction(0) if args.branch == "zero" else (k + 1) / 6
    s = solutions.frobenius_solve(k, args.branch, rho + args.terms)
    print(emit_series(s, args, args.terms))
    if args.verify and not kz_apply(s, k).vanishes:
        print("IdentityFailure: oracle residual nonzero", file=sys.stderr)
        return 1
    return 0


def cmd_positivity(args) -> int:
    k = as_weight(args.k, allow_negative=False)
    lead = _family_lead(k, args.kind)
    s = solutions.known_solution(k, lead + args.terms, args.kind)
    rep = analysis.check_positivity(s, lead + args.terms - 1)
    rec = {"weight": str(k), "kind": args.kind, "status": rep.status,
           "checked_through": str(rep.checked_through),
           "first_nonpositive": None if rep.first_nonpositive is None else str(rep.first_nonpositive),
           "coefficient": None if rep.coefficient is None else str(rep.coefficient)}
    print(emit_record(rec, args))
    return 0 if rep.all_positive else 1


CF_TARGETS = {"e4p-over-e6": (analysis.e4p_over_e6, False), "atkin": (analysis.atkin_target, False)}


def cmd_cf(args) -> int:
    build, const = CF_TARGETS[args.target]
    cs = analysis.expand_in_inv_j(build(args.depth + 2), args.depth, const)
    if args.format == "json":
        print(json.dumps([[str(c.numerator), str(c.denominator)] for c in cs]))
    elif args.format == "csv":
        print("index,coeff_num,coeff_den")
        print("\n".join(f"{i + 1},{c.numerator},{c.denominator}" for i, c in enumerate(cs)))
    else:
        print(", ".join(_fmt(c) for c in cs))
    return 0


def _monomial_text(i: int, a: int, b: int) -> str:
    parts = [f"{name}^{e}" if e > 1 else name for name, e in (("E2", i), ("E4", a), ("E6", b)) if e]
    return "*".join(parts) or "1"


def cmd_decompose(args) -> int:
    dec = analysis.decompose_family_solution(args.n)
    coeffs = sorted(dec.coefficients().items())
    if args.format == "json":
        print(json.dumps({"weight": dec.weight,
                          "terms": [{"E2": i, "E4": a, "E6": b, "coeff": [str(c.numerator), str(c.denominator)]}
                                    for (i, a, b), c in coeffs]}))
    elif args.format == "csv":
        print("e2_power,e4_power,e6_power,coeff_num,coeff_den")
        print("\n".join(f"{i},{a},{b},{c.numerator},{c.denominator}" for (i, a, b), c in coeffs))
    else:
        print(" + ".join(f"({_fmt(c)})*{_monomial_text(i, a, b)}" for (i, a, b), c in coeffs))
    return 0


def cmd_suite(args) -> int:
    results = analysis.identity_suite(args.order, jobs=args.jobs)
    if args.format == "json":
        print(json.dumps([{"name": r.name, "passed": r.passed, "through": r.through,
                           "first_mismatch": None if r.first_mismatch is None else str(r.first_mismatch)}
                          for r in results]))
    else:
        for r in results:
            print(r)
    return 0 if all(r.passed for r in results) else 1


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--terms", type=_positive, default=100, help="number of coefficients (default 100)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--json", dest="format", action="store_const", const="json",
                        help="shorthand for --format json")
    common.add_argument("--exp-den", type=_positive, default=None,
                        help="exponent denominator for json/csv output")
    common.add_argument("--verify", action="store_true")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")

    p = argparse.ArgumentParser(prog="hypmodular", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", parents=[common], help="q-expansion of a catalog form")
    s.add_argument("form", choices=FORM_IDS, metavar="FORM")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("solve", parents=[common], help="closed-form solution of weight k")
    s.add_argument("--k", type=_weight, required=True)
    s.add_argument("--kind", choices=("normalized", "cuspidal", "quasi"), default="normalized")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", parents=[common], help="check a family against the equation")
    s.add_argument("--k", type=_weight, required=True)
    s.add_argument("--family", choices=("normalized", "cuspidal", "quasi"), default="normalized")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("ladder", parents=[common], help="weight k -> k+6 recursion")
    s.add_argument("--k", type=_weight, required=True)
    s.add_argument("--steps", type=_nonneg, default=3)
    s.add_argument("--kind", choices=("normalized", "cuspidal", "quasi"), default="normalized")
    s.set_defaults(func=cmd_ladder)

    s = sub.add_parser("oracle", parents=[common], help="series-recurrence solution")
    s.add_argument("--k", type=_weight, required=True)
    s.add_argument("--branch", choices=("zero", "cusp"), default="zero")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("positivity", parents=[common], help="scan coefficients for positivity")
    s.add_argument("--k", type=_weight, required=True)
    s.add_argument("--kind", choices=("normalized", "cuspidal", "quasi"), default="cuspidal")
    s.set_defaults(func=cmd_positivity)

    s = sub.add_parser("cf", parents=[common], help="expansion in powers of 1/j")
    s.add_argument("--target", choices=tuple(CF_TARGETS), required=True)
    s.add_argument("--depth", type=_positive, default=3)
    s.set_defaults(func=cmd_cf)

    s = sub.add_parser("decompose", parents=[common], help="E2, E4, E6 decomposition for k = 6n+5")
    s.add_argument("--n", type=_nonneg, required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("suite", parents=[common], help="run the identity suite")
    s.add_argument("--order", type=_positive, default=200)
    s.set_defaults(func=cmd_suite)
    return p


def dispatch(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)   # exits with 2 on usage errors
    try:
        return args.func(args)
    except ModularError as err:
        msg = str(err)
        name = type(err).__name__
        if name == "NoneKnown":
            msg = "no known modular solution (none is conjectured to exist)"
        print(f"{name}: {msg}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())
