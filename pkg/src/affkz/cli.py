"""Command-line interface.

Subcommands:
    ope           singular part of the product of two parsed fields
    pf            noncommutative pfaffian in PBW normal form
    center        centrality check for the distinguished elements
    verify-paper  run every identity check and report the verdicts
    kz emit       write the fourth-order correlator equation to a file
    kz eval       apply the equation's right-hand side to a test state

All symbolic commands keep the level k as a formal variable; only
`kz eval` takes a numeric value.  `--format records` output is line
oriented and byte-stable for fixed flags and seed.
"""

import argparse
import sys
from fractions import Fraction

from .liealg import so_algebra, sl_algebra
from .uea import UEA
from .ope import contract
from . import printer, parser, suite, kz


def _algebra(family, N):
    return so_algebra(N) if family == "so" else sl_algebra(N)


def _cmd_ope(args):
    alg = _algebra(args.algebra, args.N)
    A = parser.parse(args.exprA, alg)
    B = parser.parse(args.exprB, alg)
    res = contract(A, B, regular_depth=args.depth)
    if args.format == "latex":
        print(printer.ope_latex(res))
    elif args.format == "records":
        print("ope\talgebra=%s\tN=%d\tdepth=%d" % (args.algebra, args.N, args.depth))
        for m in sorted(res.coefficients, reverse=True):
            print("coeff\tm=%d\tfield=%s" % (m, printer.field_str(res.coefficients[m])))
    else:
        print(printer.ope_str(res))
    return 0


def _cmd_pf(args):
    idx = []
    for chunk in args.indices:
        idx.extend(int(x) for x in chunk.split(","))
    alg = so_algebra(args.N)
    el = UEA(alg).pfaffian(idx)
    if args.format == "records":
        print("pf\tN=%d\tI=%s\telement=%s"
              % (args.N, ",".join(str(i) for i in idx), el))
    else:
        print(el)
    return 0


_CENTER_BUILDERS = {
    "C2": lambda U: U.capelli(2),
    "C4": lambda U: U.capelli(4),
    "gelfand3": lambda U: U.gelfand_third(),
}


def _cmd_center(args):
    alg = _algebra(args.algebra, args.N)
    U = UEA(alg)
    if args.element == "gelfand3" and alg.family != "sl":
        print("error: gelfand3 lives over sl_N", file=sys.stderr)
        return 2
    if args.element in ("C2", "C4") and alg.family != "so":
        print("error: %s lives over so_N" % args.element, file=sys.stderr)
        return 2
    el = _CENTER_BUILDERS[args.element](U)
    central, witness = el.is_central()
    if central:
        print("central: yes")
        return 0
    comm = el.commutator(U.generator(witness))
    print("central: no")
    print("witness: generator %s, commutator %s" % (alg.labels[witness], comm))
    return 1


def _cmd_verify(args):
    report = suite.run_all(so_N=args.N, sl_N=args.sl_N, seed=args.seed)
    out = suite.FORMATTERS[args.format](report)
    print(out, end="" if out.endswith("\n") else "\n")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(out if out.endswith("\n") else out + "\n")
    return 0 if report.ok else 1


def _cmd_kz_emit(args):
    J = tuple(int(x) for x in args.J.split(","))
    eq = kz.emit_equation(args.N, args.r, J)
    text = kz.serialize(eq)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print("wrote %d terms to %s" % (len(eq.rhs), args.out))
    else:
        print(text, end="")
    return 0


def _cmd_kz_eval(args):
    J = tuple(int(x) for x in args.J.split(","))
    points = [Fraction(p) for p in args.points.split(",")]
    eq = kz.emit_equation(args.N, args.r, J)
    if args.state == "zero":
        state = {}
    else:
        state = kz.random_state(args.N, args.r, seed=args.seed)
    result = kz.evaluate_rhs(eq, Fraction(args.k), points, state)
    if args.format == "records":
        print("kzeval\tN=%d\tr=%d\tk=%s\tpoints=%s\tstate=%s\tseed=%d"
              % (args.N, args.r, args.k, args.points, args.state, args.seed))
        for key in sorted(result):
            wedge = ",".join(str(i) for i in key[0])
            rest = ",".join(str(b) for b in key[1:])
            print("entry\twedge=%s\tadj=%s\tvalue=%s" % (wedge, rest or "-",
                                                         result[key]))
        print("summary\tentries=%d" % len(result))
    else:
        if not result:
            print("0")
        for key in sorted(result):
            print("%s : %s" % (key, result[key]))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="affkz",
                                 description="exact current-algebra OPE tools")
    ap.add_argument("--format", choices=("text", "records", "latex"),
                    default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ope", help="singular part of a field product")
    p.add_argument("--algebra", choices=("so", "sl"), required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--depth", type=int, default=0,
                   help="extra regular coefficients to keep")
    p.add_argument("exprA")
    p.add_argument("exprB")
    p.set_defaults(func=_cmd_ope)

    p = sub.add_parser("pf", help="noncommutative pfaffian in PBW form")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("indices", nargs="+")
    p.set_defaults(func=_cmd_pf)

    p = sub.add_parser("center", help="centrality check with witness")
    p.add_argument("--algebra", choices=("so", "sl"), required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--element", choices=sorted(_CENTER_BUILDERS), required=True)
    p.set_defaults(func=_cmd_center)

    p = sub.add_parser("verify-paper", help="run the full identity suite")
    p.add_argument("--N", type=int, default=6)
    p.add_argument("--sl-N", type=int, default=3, dest="sl_N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("kz", help="fourth-order correlator equation")
    ksub = p.add_subparsers(dest="kz_command", required=True)

    pe = ksub.add_parser("emit", help="expand and serialize the equation")
    pe.add_argument("--N", type=int, required=True)
    pe.add_argument("--r", type=int, required=True)
    pe.add_argument("--J", required=True, help="comma-separated 4-subset")
    pe.add_argument("--out", default=None)
    pe.set_defaults(func=_cmd_kz_emit)

    pv = ksub.add_parser("eval", help="evaluate the right-hand side exactly")
    pv.add_argument("--N", type=int, required=True)
    pv.add_argument("--r", type=int, required=True)
    pv.add_argument("--J", default="1,2,3,4")
    pv.add_argument("--k", required=True, help="rational level value")
    pv.add_argument("--points", required=True, help="comma-separated rationals")
    pv.add_argument("--state", choices=("random", "zero"), default="random")
    pv.add_argument("--seed", type=int, default=0)
    pv.set_defaults(func=_cmd_kz_eval)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (parser.ParseError, suite.SuiteError, kz.KZError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
