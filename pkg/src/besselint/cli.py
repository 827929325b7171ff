"""Command-line front end.

Every evaluation prints one JSON object per line on stdout.  Exit codes:
0 success, 1 usage error, 2 domain error, 3 formula inapplicable or no
admissible reduction, 4 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import closed_form as cf
from . import reduce4, verify
from .errors import DomainError, FormulaInapplicable
from .oracle import bessel_product_integral

EXIT_USAGE, EXIT_DOMAIN, EXIT_INAPPLICABLE, EXIT_VERIFY = 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def momentum(text: str) -> Fraction:
    """Parse a decimal or fraction string exactly, e.g. ``0.7`` -> 7/10."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"invalid momentum {text!r}") from None


def _coefficient_text(c) -> str:
    return str(c) if isinstance(c, Fraction) else repr(float(c))


def _echo(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, list):
        return [_echo(v) for v in value]
    return value


def pi_record(kind: str, inputs: dict, pv: cf.PiValue) -> dict:
    return {
        "kind": kind,
        "inputs": {k: _echo(v) for k, v in inputs.items()},
        "value": pv.value,
        "pi_coefficient": _coefficient_text(pv.coefficient),
        "k_monomial": dict(sorted(pv.k_monomial.items())),
        "is_exact": pv.is_exact,
    }


def float_record(kind: str, inputs: dict, value: float) -> dict:
    return {
        "kind": kind,
        "inputs": {k: _echo(v) for k, v in inputs.items()},
        "value": value,
        "pi_coefficient": repr(value / math.pi),
        "k_monomial": {},
        "is_exact": False,
    }


def _attach_oracle(record, orders, ks):
    rep = bessel_product_integral(orders, [float(k) for k in ks])
    diff = abs(record["value"] - rep.value)
    scale = abs(rep.value)
    record["oracle"] = {
        "value": rep.value,
        "error_estimate": rep.error_estimate,
        "rel_diff": diff / scale if scale > 0 else diff,
    }
    return record


def _eval(args) -> list[dict]:
    tol = args.edge_tol
    what = args.what
    if what == "one":
        k = momentum(args.k)
        return [pi_record("one", {"L": args.L, "k": k}, cf.integral_one_bessel_line(args.L, k))]
    if what == "j0-half":
        k = momentum(args.k)
        return [pi_record("one", {"L": 0, "k": k, "half_line": True}, cf.integral_j0_halfline(k))]
    if what == "two-half":
        k1, k2 = map(momentum, args.k)
        return [pi_record("two_halfline", {"L": args.L, "k": [k1, k2]},
                          cf.integral_two_bessel_halfline(args.L, k1, k2))]
    if what == "ortho":
        L, Lp = args.L
        return [pi_record("orthogonality", {"L": [L, Lp]}, cf.orthogonality_value(L, Lp))]
    if what == "shifted":
        value = cf.shifted_cross_integral(args.L, args.l, args.y)
        return [float_record("shifted", {"L": args.L, "l": args.l, "y": args.y}, value)]
    if what == "triple":
        ks = [momentum(k) for k in args.k]
        rec = pi_record("triple", {"L": args.L, "k": ks}, cf.triple_integral(*args.L, *ks, edge_tol=tol))
        return [_attach_oracle(rec, args.L, ks) if args.verify else rec]
    if what == "triple-special":
        ks = [momentum(k) for k in args.k]
        return [pi_record("triple_special", {"lambda": args.lam, "k": ks},
                          cf.triple_integral_special(args.lam, *ks, edge_tol=tol))]
    if what == "quad":
        ks = [momentum(k) for k in args.k]
        inputs = {"L": args.L, "k": ks}
        try:
            pv = reduce4.quad_bessel_integral(args.L, ks)
        except FormulaInapplicable:
            if args.verify:
                rep = bessel_product_integral(args.L, [float(k) for k in ks])
                rec = float_record("oracle", inputs, rep.value)
                rec["oracle"] = {"value": rep.value, "error_estimate": rep.error_estimate,
                                 "rel_diff": 0.0}
                _emit([rec], args.format)
            raise
        rec = pi_record("quad", inputs, pv)
        return [_attach_oracle(rec, args.L, ks) if args.verify else rec]
    raise AssertionError(what)


def _emit(records, fmt="json", out=None):
    out = out or sys.stdout
    if fmt == "csv":
        flat = [_flatten(r) for r in records]
        keys = []
        for r in flat:
            keys.extend(k for k in r if k not in keys)
        writer = csv.DictWriter(out, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
    else:
        for r in records:
            out.write(json.dumps(r) + "\n")
    out.flush()


def _flatten(record, prefix=""):
    flat = {}
    for k, v in record.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            flat[key] = " ".join(str(x) for x in v)
        else:
            flat[key] = v
    return flat


def _verify(args) -> int:
    records = list(verify.run(args.suite, args.tol))
    failed = [r for r in records if not r["passed"]]
    for r in failed:
        print(f"FAILED {r['suite']}/{r['check']}: {r}", file=sys.stderr)
    summary = {"suite": args.suite, "check": "summary", "passed": not failed,
               "total": len(records), "failures": len(failed)}
    if args.format == "csv":
        _emit(records + [summary], "csv")
    else:
        _emit(records + [summary])
    return 0 if not failed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--edge-tol", type=float, default=argparse.SUPPRESS,
                        help="|Delta -+ 1| below this counts as the window edge")

    parser = _Parser(prog="besselint", parents=[common],
                     description="Closed-form integrals of spherical Bessel function products.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", parents=[common], help="evaluate one closed form")
    kinds = ev.add_subparsers(dest="what", required=True, parser_class=_Parser)

    p = kinds.add_parser("one", parents=[common], help="full-line integral of j_L(k r)")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--k", required=True)

    p = kinds.add_parser("j0-half", parents=[common], help="half-line integral of j_0(k r)")
    p.add_argument("--k", required=True)

    p = kinds.add_parser("two-half", parents=[common], help="half-line j_L(k1 r) j_L(k2 r)")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--k", nargs=2, required=True)

    p = kinds.add_parser("ortho", parents=[common], help="full-line j_L j_L'")
    p.add_argument("--L", type=int, nargs=2, required=True)

    p = kinds.add_parser("shifted", parents=[common], help="full-line j_L(x - y) j_l(x)")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--y", type=float, required=True)

    p = kinds.add_parser("triple", parents=[common], help="r^2 times three Bessel functions")
    p.add_argument("--L", type=int, nargs=3, required=True)
    p.add_argument("--k", nargs=3, required=True)
    p.add_argument("--verify", action="store_true", help="attach a direct quadrature")

    p = kinds.add_parser("triple-special", parents=[common], help="r^2 j_lam j_lam j_0")
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--k", nargs=3, required=True)

    p = kinds.add_parser("quad", parents=[common], help="r^2 times four Bessel functions")
    p.add_argument("--L", type=int, nargs=4, required=True)
    p.add_argument("--k", nargs=4, required=True)
    p.add_argument("--verify", action="store_true", help="attach a direct quadrature")

    vp = sub.add_parser("verify", parents=[common], help="run verification sweeps")
    vp.add_argument("--suite", choices=("all", *verify.SUITES), default="all")
    vp.add_argument("--tol", type=float, default=None,
                    help="override the tolerance of the numeric comparisons")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = getattr(args, "format", "json")
    args.edge_tol = getattr(args, "edge_tol", cf.EDGE_TOL)
    try:
        if args.command == "verify":
            return _verify(args)
        _emit(_eval(args), args.format)
        return 0
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except FormulaInapplicable as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INAPPLICABLE


if __name__ == "__main__":
    sys.exit(main())
