"""Command-line front end: ``kneser-lab <command> [options]``.

Codes and families are read from a file argument or from stdin ("-") and
written in the same text formats, so commands compose through pipes.

Exit codes: 0 pass, 1 violation, 2 budget exceeded or inconclusive,
64 usage error, 65 malformed or out-of-domain input, 70 internal check failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence, TextIO

from . import bridge, constructions, families, kneser, search
from .codes import LinearCode, format_code, parse_code, power, schur_product
from .errors import BudgetExceeded, FormatError, InternalCheckError, KneserLabError
from .families import SetFamily, format_family, parse_family
from .field import PrimeField, parse_vector
from .report import SCHEMA, TheoremReport, VerificationReport, dumps

EXIT_OK, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_SOFTWARE = 64, 65, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _code(path: str) -> LinearCode:
    return parse_code(_read(path))


def _family(path: str) -> SetFamily:
    return parse_family(_read(path))


def _code_dict(c: LinearCode) -> dict:
    return {"p": c.p, "n": c.n, "dim": c.dim, "basis": [list(r) for r in c.basis]}


# -- output helpers -----------------------------------------------------------


def _emit_code(args, c: LinearCode, out: TextIO) -> int:
    if args.json:
        out.write(dumps({"schema": SCHEMA, "code": _code_dict(c)}) + "\n")
    else:
        out.write(format_code(c))
    return EXIT_OK


def _emit_family(args, f: SetFamily, out: TextIO) -> int:
    if args.json:
        out.write(dumps({"schema": SCHEMA, "family": f.to_dict()}) + "\n")
    else:
        out.write(format_family(f))
    return EXIT_OK


def _text_report(rep: VerificationReport) -> str:
    lines = []
    if isinstance(rep, TheoremReport):
        params = " ".join(f"{k}={v}" for k, v in rep.params.items())
        lines.append(f"{rep.theorem} {params}: {rep.status.upper()}"
                     + (" (inconclusive)" if rep.inconclusive else ""))
        lines.append(f"  scanned: {rep.universe}")
        lines.append(f"  max: {rep.max_found}  bound: {rep.bound}  attained: {rep.attained}"
                     f"  extremal: {rep.n_extremal}")
    else:
        lines.append(f"{rep.check}: {rep.status.upper()}")
    for key in sorted(rep.details):
        lines.append(f"  {key}: {dumps(rep.details[key])}")
    if rep.witness is not None:
        lines.append(f"  witness: {dumps(rep.witness)}")
    return "\n".join(lines) + "\n"


def _emit_report(args, rep: VerificationReport, out: TextIO) -> int:
    out.write(rep.to_json() + "\n" if args.json else _text_report(rep))
    if isinstance(rep, TheoremReport) and rep.inconclusive:
        return EXIT_BUDGET
    return EXIT_OK if rep.passed else EXIT_FAIL


def _emit_dict(args, name: str, payload: dict, out: TextIO) -> int:
    if args.json:
        out.write(dumps({"schema": SCHEMA, name: payload}) + "\n")
    else:
        for key in sorted(payload):
            out.write(f"{key}: {dumps(payload[key])}\n")
    return EXIT_OK


# -- commands -------------------------------------------------------------------


def cmd_product(args, out):
    return _emit_code(args, schur_product(_code(args.a), _code(args.b)), out)


def cmd_power(args, out):
    return _emit_code(args, power(_code(args.input), args.k), out)


def cmd_stabilizer(args, out):
    return _emit_code(args, kneser.stabilizer(_code(args.input)), out)


def cmd_decompose(args, out):
    dec = kneser.decompose(_code(args.input))
    if args.json:
        out.write(dumps(dec.to_dict()) + "\n")
        return EXIT_OK
    out.write(f"m: {dec.m}\n")
    for part, comp in zip(dec.parts, dec.components):
        out.write(f"part {' '.join(map(str, part))}: dim {comp.dim}\n")
    return EXIT_OK


def cmd_kneser(args, out):
    return _emit_report(args, kneser.kneser_check(_code(args.a), _code(args.b)), out)


def cmd_growth(args, out):
    return _emit_report(args, kneser.growth_check(_code(args.input), args.t), out)


def cmd_atoms(args, out):
    part = families.atoms(_family(args.input))
    if args.json:
        out.write(dumps({"schema": SCHEMA, **part.to_dict()}) + "\n")
    else:
        for a in part.atoms:
            out.write(f"{' '.join(map(str, a))}\t(size {len(a)})\n")
    return EXIT_OK


def cmd_closure(args, out):
    return _emit_family(args, families.product_family(_family(args.input), args.k), out)


def cmd_check_divisible(args, out):
    return _emit_report(args, families.is_kwise_divisible(_family(args.input), args.k, args.l), out)


def cmd_restrict(args, out):
    return _emit_family(args, families.restrict(_family(args.input), args.set), out)


def cmd_binary_points(args, out):
    return _emit_family(args, bridge.family_of_points(_code(args.input)), out)


def cmd_bridge_check(args, out):
    return _emit_report(args, bridge.bridge_check(_family(args.input), args.k, args.p).to_report(), out)


def cmd_lift_check(args, out):
    fam = _family(args.input)
    v = parse_vector(args.v, PrimeField(args.p))
    rep = bridge.prime_power_lift_check(fam, args.k, args.p, args.alpha, v)
    return _emit_report(args, rep, out)


def cmd_split(args, out):
    res = bridge.split_family(_family(args.input), args.k, args.p)
    return _emit_dict(args, "split", res.to_dict(), out)


def cmd_tphi(args, out):
    rep = bridge.tphi_atom_report(_family(args.input), args.t, args.p, args.alpha, args.l, args.k)
    return _emit_report(args, rep, out)


def cmd_construct(args, out):
    if args.kind == "atomic":
        if not args.sizes:
            raise UsageError("construct atomic needs --sizes")
        return _emit_family(args, constructions.atomic_family(args.sizes), out)
    if args.kind == "hadamard12":
        h = constructions.paley_hadamard_12()
        if args.json:
            out.write(dumps({"schema": SCHEMA, "matrix": [list(r) for r in h.entries]}) + "\n")
        else:
            out.write(constructions.format_matrix(h))
        return EXIT_OK
    return _emit_family(args, constructions.frankl_odlyzko_family(args.m), out)


def cmd_verify(args, out):
    w = args.threads
    if args.target == "suite":
        rep = search.random_property_suite(args.trials, args.seed, workers=w)
    elif args.target == "theorem1":
        rep = search.verify_theorem1(_need(args, "p"), _need(args, "n"), workers=w)
    elif args.target == "theorem2":
        rep = search.verify_theorem2(_need(args, "p"), _need(args, "n"), workers=w)
    elif args.target == "theorem4":
        rep = search.verify_theorem4(_need(args, "l"), _need(args, "n"), workers=w)
    else:
        rep = search.improved_odlyzko_sweep(args.p or 3, _need(args, "n"), workers=w)
    return _emit_report(args, rep, out)


def _need(args, name: str) -> int:
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"verify {args.target} needs --{name}")
    return val


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--threads", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    parser = _Parser(prog="kneser-lab", description="Schur products of codes and divisible set families.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    def code_in(sp):
        sp.add_argument("input", nargs="?", default="-", help="code file (default stdin)")

    def fam_in(sp):
        sp.add_argument("input", nargs="?", default="-", help="family file (default stdin)")

    sp = add("product", cmd_product, "Schur product of two codes")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("power", cmd_power, "k-th Schur power of a code")
    code_in(sp)
    sp.add_argument("--k", type=int, required=True)
    code_in(add("stabilizer", cmd_stabilizer, "stabilizer of a code"))
    code_in(add("decompose", cmd_decompose, "disjoint-support decomposition of a full-support code"))
    sp = add("kneser", cmd_kneser, "check Kneser's inequality for two codes")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("growth", cmd_growth, "check the growth inequality for powers of a code")
    code_in(sp)
    sp.add_argument("--t", type=int, required=True)
    fam_in(add("atoms", cmd_atoms, "atoms of a family"))
    sp = add("closure", cmd_closure, "F^k, all intersections of k members")
    fam_in(sp)
    sp.add_argument("--k", type=int, required=True)
    sp = add("check-divisible", cmd_check_divisible, "k-wise l-divisibility of a family")
    fam_in(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp = add("restrict", cmd_restrict, "restrict a family to a coordinate set")
    fam_in(sp)
    sp.add_argument("--set", type=_int_list, required=True, help="0-based indices, e.g. 0,1,4")
    code_in(add("binary-points", cmd_binary_points, "the {0,1}-vectors of a code, as a family"))
    sp = add("bridge-check", cmd_bridge_check, "divisibility versus orthogonality of V^<k>")
    fam_in(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp = add("lift-check", cmd_lift_check, "p^alpha divisibility of a binary vector of V^<k>")
    fam_in(sp)
    for flag in ("--k", "--p", "--alpha"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--v", required=True, help="the binary vector, e.g. 11110000")
    sp = add("split", cmd_split, "split a family along the stabilizer of V^<k>")
    fam_in(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp = add("tphi", cmd_tphi, "atoms outside the big components of V^<t>")
    fam_in(sp)
    for flag in ("--t", "--p", "--alpha", "--l", "--k"):
        sp.add_argument(flag, type=int, required=True)
    sp = add("construct", cmd_construct, "built-in families and matrices")
    sp.add_argument("kind", choices=("atomic", "hadamard12", "frankl-odlyzko"))
    sp.add_argument("--sizes", type=_int_list)
    sp.add_argument("--m", type=int, default=1)
    sp = add("verify", cmd_verify, "exhaustive sweeps and the random property suite")
    sp.add_argument("target", choices=("theorem1", "theorem2", "theorem4", "suite", "improved-odlyzko"))
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--l", type=int)
    sp.add_argument("--trials", type=int, default=10000)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc} (estimate {exc.estimate}, budget {exc.budget})", file=sys.stderr)
        return EXIT_BUDGET
    except InternalCheckError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_SOFTWARE
    except (FormatError, KneserLabError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
