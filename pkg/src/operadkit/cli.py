"""Command-line front end.

Exit status: 0 success or pass, 1 a mathematical check failed, 2 the input
could not be parsed (or bad usage), 3 the input violates a contract.
"""

import argparse
import json
import os
import sys

from . import jsonio
from .cobar import cobar_differential, d_squared_check
from .free_operad import ParseError
from .presentation import PRESETS, dumps, koszul_dual, loads, preset
from .rewriting import confluence_report, count_normal_forms, orient
from .transfer import ContractError, TransferConfig, build_retract, transfer, verify_infinity_relations

OK, FAILED, MALFORMED, CONTRACT = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, status, message):
        super().__init__(message)
        self.status = status


def _presentation(arg):
    """A preset name or a path to a presentation file."""
    if arg in PRESETS:
        return preset(arg)
    if os.path.isfile(arg):
        try:
            with open(arg, encoding="utf-8") as fh:
                return loads(fh.read())
        except ParseError as exc:
            raise _Fail(MALFORMED, f"{arg}: {exc}") from None
        except ValueError as exc:
            raise _Fail(CONTRACT, f"{arg}: {exc}") from None
    raise _Fail(MALFORMED, f"unknown preset or file {arg!r}; presets: {', '.join(PRESETS)}")


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(MALFORMED, f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_dims(args, out):
    rs = orient(_presentation(args.presentation))
    out.write(" ".join(str(count_normal_forms(rs, n)) for n in range(1, args.n + 1)) + "\n")
    return OK


def cmd_dual(args, out):
    out.write(dumps(koszul_dual(_presentation(args.presentation))))
    return OK


def cmd_confluence(args, out):
    kinds = ("chain", "sibling") if args.all_overlaps else ("chain",)
    report = confluence_report(orient(_presentation(args.presentation)), kinds)
    out.write(report.render() + "\n")
    return OK if report.passed else FAILED


def cmd_differential(args, out):
    if args.i < 0 or args.j < 0 or args.i + args.j < 1:
        raise _Fail(CONTRACT, "need i, j >= 0 and i + j >= 1")
    out.write(cobar_differential(args.i, args.j).render() + "\n")
    return OK


def cmd_d2check(args, out):
    if args.n < 2:
        raise _Fail(CONTRACT, "N must be at least 2")
    res = d_squared_check(args.n)
    if res:
        out.write(f"PASS: d∘d = 0 on all {res.checked} generators of arity <= {args.n}\n")
        return OK
    out.write(f"FAIL: {json.dumps(res.witness, sort_keys=True, ensure_ascii=False)}\n")
    return FAILED


def cmd_transfer(args, out):
    alg = jsonio.load_algebra(_read(args.algebra))
    if args.weight < 1:
        raise _Fail(CONTRACT, "--weight must be at least 1")
    r = build_retract(alg.complex)
    t = transfer(alg, r, args.weight, TransferConfig(max_weight=max(8, args.weight)))
    _write(args.out, jsonio.dumps(jsonio.structure_to_data(t)))
    if args.complex_out:
        _write(args.complex_out, jsonio.dumps(jsonio.complex_to_data(r.small)))
    out.write(f"wrote m[i,j] for 1 <= i+j <= {args.weight} on a {r.small.dim}-dimensional complex to {args.out}\n")
    return OK


def cmd_verify(args, out):
    V = jsonio.load_complex(_read(args.complex))
    t = jsonio.load_structure(_read(args.structure), V)
    n_max = args.arity or t.max_arity()
    if n_max < 2:
        out.write("PASS: nothing to check below arity 2\n")
        return OK
    res = verify_infinity_relations(t, V, n_max)
    if res:
        out.write(f"PASS: relations hold on {res.checked} basis tuples through arity {n_max}\n")
        return OK
    out.write(f"FAIL: {json.dumps(res.witness, sort_keys=True, ensure_ascii=False)}\n")
    return FAILED


def build_parser():
    parser = argparse.ArgumentParser(prog="operadkit", description="Computations with the operads ²As and As².")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    p = sub.add_parser("dims", help="normal-form counts per arity")
    p.add_argument("presentation", help=f"preset ({', '.join(PRESETS)}) or presentation file")
    p.add_argument("n", type=int, help="largest arity")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("dual", help="relators of the Koszul dual")
    p.add_argument("presentation")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("confluence", help="critical monomial report")
    p.add_argument("presentation")
    p.add_argument("--all-overlaps", action="store_true", help="include sibling overlaps as well")
    p.set_defaults(func=cmd_confluence)

    p = sub.add_parser("differential", help="print the cobar differential of m[i,j]")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(func=cmd_differential)

    p = sub.add_parser("d2check", help="check d∘d = 0 through arity N")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_d2check)

    p = sub.add_parser("transfer", help="transfer an algebra onto its homology")
    p.add_argument("--algebra", required=True, help="algebra JSON")
    p.add_argument("--weight", required=True, type=int, help="largest i + j")
    p.add_argument("--out", required=True, help="where to write the structure JSON")
    p.add_argument("--complex-out", help="also write the small complex JSON here")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("verify", help="check the infinity relations of a structure")
    p.add_argument("--structure", required=True)
    p.add_argument("--complex", required=True, help="complex JSON of the structure's space")
    p.add_argument("--arity", type=int, help="largest arity to check (default: all present)")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except _Fail as exc:
        print(f"operadkit: {exc}", file=sys.stderr)
        return exc.status
    except jsonio.MalformedInput as exc:
        print(f"operadkit: {exc}", file=sys.stderr)
        return MALFORMED
    except ContractError as exc:
        print(f"operadkit: {exc}", file=sys.stderr)
        return CONTRACT


def main():
    sys.exit(run())
