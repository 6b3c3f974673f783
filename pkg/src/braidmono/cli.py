"""Command-line front end: generate, verify, compare and lift factorizations.

Exit codes: 0 success, 1 verification failure, 2 input or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import factorization as fz
from . import monodromy as mono
from . import pencil as pen
from .braid_core import BraidInputError, BraidWord
from .doubling import (
    assemble_transverse,
    conics_factorization,
    degree_doubling,
    delta_2n_identity,
    lines_factorization,
    regeneration_triple,
    smooth_curve_factorization,
    v2_branch_factorization,
)

OK, FAILED, BAD_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # raise so run() returns instead of exiting
        raise BraidInputError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise BraidInputError(f"cannot read {path}: {exc.strerror}") from exc


def _write(text: str, out: str | None, stdout: TextIO) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def _need(value: int | None, flag: str) -> int:
    if value is None:
        raise BraidInputError(f"missing {flag}")
    return value


def _fk(path: str | None, d: int) -> fz.Factorization | None:
    if path is None:
        if d == 0:
            return None
        raise BraidInputError("missing --fk")
    return fz.loads(_read(path))


def _gen(args, stdout: TextIO) -> int:
    kind = args.kind
    if kind == "lines":
        f = lines_factorization(_need(args.d, "--d"))
    elif kind == "smooth":
        f = smooth_curve_factorization(_need(args.d, "--d"))
    elif kind == "conics":
        f = conics_factorization(_need(args.d, "--d"))
    elif kind == "v2":
        f = v2_branch_factorization()
    elif kind == "regen":
        f = regeneration_triple()
    elif kind == "delta2n":
        f = delta_2n_identity(_need(args.n, "--n"))
    elif kind == "assemble":
        if args.fk is None or args.fq is None:
            raise BraidInputError("assemble needs --fk and --fq")
        f = assemble_transverse(fz.loads(_read(args.fk)), fz.loads(_read(args.fq)))
    else:  # double
        d, n = _need(args.d, "--d"), _need(args.n, "--n")
        f = degree_doubling(_fk(args.fk, d), mono.theta_std(d, n), d, n)
    _write(fz.dumps(f), args.out, stdout)
    return OK


def _verify(args, stdout: TextIO) -> int:
    f = fz.loads(_read(args.file))
    if args.target == "delta2":
        f = fz.Factorization(f.strands, f.factors)
    elif args.target is not None:
        f = f.with_target(BraidWord.parse(f.strands, args.target))
    k = fz.first_mismatch(f)
    if k is None:
        stdout.write("CERTIFIED\n")
        return OK
    got = fz.product_table(f)[k - 1]
    stdout.write(f"MISMATCH at generator {k}: product sends g{k} to "
                 f"{' '.join(('g' if x > 0 else 'G') + str(abs(x)) for x in got) or '1'}\n")
    return FAILED


def _theta_check(args, stdout: TextIO) -> int:
    f = fz.loads(_read(args.file))
    theta = mono.loads(_read(args.theta))
    if theta.degree != f.strands:
        raise BraidInputError(f"representation has {theta.degree} generators, factorization {f.strands} strands")
    results = mono.check_factorization(theta, f)
    for res in results:
        stdout.write(res.describe(theta) + "\n")
    bad = sum(1 for r in results if not r.ok)
    stdout.write(f"{len(results) - bad}/{len(results)} factors compatible\n")
    return FAILED if bad else OK


def _hurwitz(args, stdout: TextIO) -> int:
    f1, f2 = fz.loads(_read(args.f1)), fz.loads(_read(args.f2))
    res = fz.hurwitz_equivalent_bounded(f1, f2, args.depth, args.max_states, args.max_complexity)
    if not res.equivalent:
        stdout.write(f"NOT FOUND (depth {args.depth}, {res.explored} states)\n")
        return FAILED
    stdout.write(f"EQUIVALENT in {len(res.moves)} moves\n")
    for i, direction in res.moves:
        stdout.write(f"move {i} {direction}\n")
    return OK


def _pencil(args, stdout: TextIO) -> int:
    d, n = _need(args.d, "--d"), _need(args.n, "--n")
    p = pen.pencil_doubling(_fk(args.fk, d), mono.theta_std(d, n), d, n, reorder=args.reorder)
    text = pen.dumps(p)
    m = p.product_matrix()
    text += "product:\n" + "".join(" ".join(str(int(x)) for x in row) + "\n" for row in m)
    identity = all(int(m[i, j]) == (i == j) for i in range(m.shape[0]) for j in range(m.shape[1]))
    text += "IDENTITY\n" if identity else "NOT IDENTITY\n"
    _write(text, args.out, stdout)
    return OK if identity else FAILED


def _stats(args, stdout: TextIO) -> int:
    f = fz.loads(_read(args.file))
    census = f.census()
    stdout.write(f"strands: {f.strands}\nfactors: {len(f)}\n")
    for r in fz.ALLOWED_R:
        stdout.write(f"r={r} ({fz.KIND[r]}): {census[r]}\n")
    stdout.write(f"exponent sum: {f.exponent_sum()}\n")
    perm = fz.product(f).permutation()
    stdout.write(f"strand permutation: {' '.join(map(str, perm))}\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="braidmono", description="Braid monodromy factorizations and their doubling.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a factorization")
    g.add_argument("kind", choices=["lines", "smooth", "conics", "v2", "regen", "assemble", "delta2n", "double"])
    g.add_argument("--d", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--fk", help="input factorization file (double, assemble)")
    g.add_argument("--fq", help="second input factorization file (assemble)")
    g.add_argument("--out")
    g.set_defaults(run=_gen)

    v = sub.add_parser("verify", help="check a factorization's product against its target")
    v.add_argument("file")
    v.add_argument("--target", help="delta2 or a braid word such as 'x1 X2'")
    v.set_defaults(run=_verify)

    t = sub.add_parser("theta", help="compatibility with a monodromy representation")
    tsub = t.add_subparsers(dest="action", required=True, parser_class=_Parser)
    tc = tsub.add_parser("check")
    tc.add_argument("file")
    tc.add_argument("--theta", required=True)
    tc.set_defaults(run=_theta_check)

    h = sub.add_parser("hurwitz", help="bounded Hurwitz-equivalence search")
    hsub = h.add_subparsers(dest="action", required=True, parser_class=_Parser)
    hs = hsub.add_parser("search")
    hs.add_argument("f1")
    hs.add_argument("f2")
    hs.add_argument("--depth", type=int, default=4)
    hs.add_argument("--max-states", type=int, default=2_000_000)
    hs.add_argument("--max-complexity", type=int, default=200,
                    help="skip states whose twists act by images longer than this")
    hs.set_defaults(run=_hurwitz)

    pc = sub.add_parser("pencil", help="vanishing cycles of the doubled pencil")
    psub = pc.add_subparsers(dest="action", required=True, parser_class=_Parser)
    pd = psub.add_parser("double")
    pd.add_argument("--d", type=int)
    pd.add_argument("--n", type=int)
    pd.add_argument("--fk")
    pd.add_argument("--reorder", action="store_true", help="apply the strand reordering before lifting")
    pd.add_argument("--out")
    pd.set_defaults(run=_pencil)

    s = sub.add_parser("stats", help="census, exponent sum and strand permutation")
    s.add_argument("file")
    s.set_defaults(run=_stats)
    return p


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, stdout)
    except (BraidInputError, fz.FactorizationError) as exc:
        stderr.write(f"error: {exc}\n")
        return BAD_INPUT
    except AssertionError as exc:
        stderr.write(f"failed: {exc}\n")
        return FAILED


def main() -> None:
    sys.exit(run())
