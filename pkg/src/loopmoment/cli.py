"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 a verification did not give the
expected answer.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from ._util import NORMALIZATION, frac_str
from .cartan import build_root_system

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def _add_rs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", required=True, dest="type_label", help="Lie type A-G")
    p.add_argument("--rank", required=True, type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="loopmoment", description="Moment polytopes and Betti series of loop groups")
    parser.add_argument("--version", action="version", version=f"loopmoment {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", help="write the report here instead of stdout")
        return p

    p = add("polytope", "lattice vertices of the truncated moment polyhedron")
    _add_rs(p)
    p.add_argument("--emax", type=_fraction, required=True)

    p = add("cells", "Bruhat cells of the affine Grassmannian by dimension")
    _add_rs(p)
    p.add_argument("--max-length", type=int, required=True)

    p = add("series", "Z/2 Poincare series")
    _add_rs(p)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--halve", action="store_true", help="apply degree halving")

    p = add("verify-convexity", "compare tau-fixed and full moment images on lattice vertices")
    _add_rs(p)
    p.add_argument("--involution", required=True,
                   help="preset name (maximal_rank, su_n_cp) or path to a JSON matrix file")
    p.add_argument("--emax", type=_fraction, required=True)
    p.add_argument("--expect", choices=["equal", "strict"])

    p = add("verify-betti", "compare halved loop-group series with a closed form")
    _add_rs(p)
    p.add_argument("--against", choices=["cp", "su"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--expect", help="equal or discrepancy@q")

    p = add("involution-check", "exact checks of a Lie algebra involution")
    p.add_argument("--algebra", choices=["su", "so", "sp"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--preset", choices=["table", "cp"], default="table")

    p = add("loop-residuals", "compatibility and fixedness residuals on random loops (CSV)")
    p.add_argument("--n", type=int, default=2, help="SU(n)")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--N", type=int, default=64, dest="samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12)

    p = add("cell-conjugation-check", "exact tau-equivariance of Bruhat-cell coordinates")
    p.add_argument("--n", type=int, default=2, help="SU(n)")
    p.add_argument("--max-length", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=50, dest="n_random")
    return parser


def _config(args) -> dict:
    return {k: (frac_str(v) if isinstance(v, Fraction) else v)
            for k, v in sorted(vars(args).items()) if k != "out"}


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(args, result: dict) -> str:
    doc = {"command": args.command, "config": _config(args), "normalization": NORMALIZATION,
           "version": __version__, "result": result}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _rs(args):
    return build_root_system(args.type_label, args.rank)


def _load_lattice_involution(source: str, rs):
    from .involution import PRESETS, lattice_involution_from_json, lattice_involution_preset

    if source in PRESETS:
        return lattice_involution_preset(source, rs)
    try:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise UsageError(f"involution {source!r} is neither a preset nor a readable file: {e}")
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed involution matrix file {source!r}: {e}")
    try:
        return lattice_involution_from_json(data, rs)
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"malformed involution matrix file {source!r}: {e}")


def _cmd_polytope(args):
    from .moment import polytope_vertices

    return polytope_vertices(_rs(args), args.emax).to_json(), True


def _cmd_cells(args):
    from .affine import enumerate_cells

    table = enumerate_cells(_rs(args), args.max_length)
    out = table.to_json()
    out["counts"] = list(table.counts())
    return out, True


def _cmd_series(args):
    from .betti import halve, omega_g_series

    s = omega_g_series(_rs(args), args.max_degree * (2 if args.halve else 1))
    return (halve(s) if args.halve else s).to_json(), True


def _cmd_verify_convexity(args):
    from .involution import verify_convexity

    rs = _rs(args)
    iota = _load_lattice_involution(args.involution, rs)
    rep = verify_convexity(rs, iota, args.emax)
    out = rep.to_json()
    out["involution"] = iota.to_json()
    ok = args.expect is None or rep.verdict == args.expect
    if ok and rep.verdict == "strict":
        ok = bool(rep.witness_extreme)
    return out, ok


def _cmd_verify_betti(args):
    from .betti import compare, cp_loop_series, halve, omega_g_series, su_closed_form

    if args.expect is not None and args.expect != "equal" and not (
            args.expect.startswith("discrepancy@") and args.expect[12:].isdigit()):
        raise UsageError(f"--expect must be 'equal' or 'discrepancy@<degree>', got {args.expect!r}")
    rs = _rs(args)
    d = args.max_degree
    if args.against == "cp":
        a = halve(omega_g_series(rs, 2 * d))
        b = cp_loop_series(args.n, d)
    else:
        a = omega_g_series(rs, d)
        b = su_closed_form(args.n, d)
    cmp = compare(a, b, d)
    out = {"a": a.to_json(), "b": b.to_json(), **cmp.to_json()}
    return out, args.expect is None or cmp.verdict == args.expect


def _cmd_involution_check(args):
    from .involution import check_lie_involution, cp_involution, table_involution

    if args.preset == "cp":
        if args.algebra != "su":
            raise UsageError("--preset cp needs --algebra su")
        inv = cp_involution(args.n)
        rep = check_lie_involution(inv, minus_block=[0])
    else:
        inv = table_involution(args.algebra, args.n)
        rep = check_lie_involution(inv)
    return rep.to_json(), rep.ok


def _cmd_loop_residuals(args):
    from .involution import table_involution
    from .loops import residual_sweep, write_sweep_csv
    from .realization import SpecialUnitary

    real = SpecialUnitary(args.n)
    rows = residual_sweep(real.root_system(), real, table_involution("su", args.n),
                          args.count, args.samples, seed=args.seed)
    buf = io.StringIO()
    write_sweep_csv(rows, buf)
    return buf.getvalue(), all(r.residual_compat <= args.tol for r in rows)


def _cmd_cell_conjugation(args):
    from .affine import enumerate_reduced_words
    from .alg_loops import cell_check_sweep
    from .realization import SpecialUnitary

    real = SpecialUnitary(args.n)
    rs = real.root_system()
    words = enumerate_reduced_words(rs, args.max_length)
    xis = [(0,) * rs.rank, rs.coroot(rs.highest_root)]
    checks = cell_check_sweep(rs, real, words, xis, args.seed, args.n_random)
    failures = [c.to_json() for c in checks if not c.holds]
    out = {"words": len(words), "checks": len(checks), "failures": failures,
           "holds": not failures}
    return out, not failures


COMMANDS = {
    "polytope": _cmd_polytope,
    "cells": _cmd_cells,
    "series": _cmd_series,
    "verify-convexity": _cmd_verify_convexity,
    "verify-betti": _cmd_verify_betti,
    "involution-check": _cmd_involution_check,
    "loop-residuals": _cmd_loop_residuals,
    "cell-conjugation-check": _cmd_cell_conjugation,
}


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result, ok = COMMANDS[args.command](args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"loopmoment: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = result if isinstance(result, str) else _report(args, result)
    _emit(text, args)
    if not ok:
        print(f"loopmoment: {args.command}: verification did not match expectation",
              file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def main() -> None:
    sys.exit(run())
