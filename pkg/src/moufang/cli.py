"""Command-line interface.

All reports are line-oriented ``key=value`` text, byte-identical across
repeat runs with identical flags.  Exit codes: 0 success (GENERATES /
PASS), 1 negative verdict (PROPER-SUBLOOP / FAIL), 2 INCONCLUSIVE-ORBIT,
3 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import engine, gensets, psl2
from .gf import field_of_order
from .paige import loop_context
from .psl2 import GENERATOR_FAMILIES, group_closure, psl2_elements, sl2_elements

EXIT_BY_VERDICT = {
    engine.VERDICT_GENERATES: 0,
    engine.VERDICT_PROPER: 1,
    engine.VERDICT_INCONCLUSIVE: 2,
}


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(3)


def _build_parser() -> _Parser:
    p = _Parser(prog="moufang",
                description="Verification toolkit for the simple Moufang loops M*(q)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field", parents=[], help="inspect GF(q)",
                        description="Print q, p, r and optionally the modulus "
                                    "coefficients (constant term first) and the "
                                    "canonical primitive element index.")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--show-primitive", action="store_true")
    sp.add_argument("--show-modulus", action="store_true")

    sp = sub.add_parser("enumerate", help="enumerate M*(q)",
                        description="Emit the element table: line 1 'q=<q> n=<order>', "
                                    "then one element per line sorted by key.")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--out", help="write to a file instead of stdout")

    sp = sub.add_parser("cayley", help="emit the full Cayley table (q <= 3)",
                        description="Header and element list as for enumerate, then "
                                    "n rows of n 0-based product indices; row i column "
                                    "j is the index of element_i * element_j.")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=("space", "tsv"), default="space",
                    help="row separator for table rows (default space)")

    sp = sub.add_parser("psl", help="PSL(2,q)/SL(2,q) generator checks")
    psub = sp.add_subparsers(dest="psl_command", required=True)
    vp = psub.add_parser("verify", help="closure of a classical generator family",
                         description="Exit 0 GENERATES, 1 PROPER-SUBGROUP, 3 on a "
                                     "hypothesis violation (verdict=ERROR).")
    vp.add_argument("--family", choices=sorted(GENERATOR_FAMILIES), required=True)
    vp.add_argument("--q", type=int, required=True)

    sp = sub.add_parser("gensets", help="generating-set catalog")
    gsub = sp.add_subparsers(dest="gensets_command", required=True)
    ep = gsub.add_parser("emit", help="emit a named set in file format",
                         description="Line 1 'q=<q> name=<name>', '#' starts a "
                                     "comment, then one element per line.")
    ep.add_argument("--set", dest="set_name", choices=gensets.SET_NAMES, required=True)
    ep.add_argument("--q", type=int, required=True)
    ep.add_argument("--lambda", dest="lam", type=int, default=None,
                    help="override the primitive element by index")
    ep.add_argument("--out", help="write to a file instead of stdout")

    sp = sub.add_parser("verify", help="does a catalog set generate M*(q)?",
                        description="Report 'set= q= method= size= order= verdict='; "
                                    "exit 0 GENERATES, 1 PROPER-SUBLOOP, "
                                    "2 INCONCLUSIVE-ORBIT, 3 input error.")
    sp.add_argument("--set", dest="set_name", choices=gensets.SET_NAMES, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--method", choices=("auto", "orbit", "closure"), default="auto")
    sp.add_argument("--lambda", dest="lam", type=int, default=None,
                    help="override the primitive element by index")

    sp = sub.add_parser("identities", help="run the proof-identity suite",
                        description="One line per identity, then a final verdict "
                                    "line; exit 0 iff every identity passes at both "
                                    "matrix and class level.")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=int, default=None,
                    help="override the primitive element by index")

    sp = sub.add_parser("moufang", help="sweep x(y(xz)) = ((xy)x)z",
                        description="Exhaustive over all triples (q = 2 by default, "
                                    "--force unlocks q = 3) or a seeded sample; "
                                    "exit 0 PASS, 1 FAIL. A violating triple is "
                                    "reported as witness=<x>;<y>;<z>.")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--force", action="store_true")

    sp = sub.add_parser("diassoc", help="two-generated subloops are groups",
                        description="Draw seeded element pairs, close each pair "
                                    "exactly, and test all triples of the closure "
                                    "for associativity; exit 0 PASS, 1 FAIL.")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--pairs", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)

    return p


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _cmd_field(args) -> int:
    f = field_of_order(args.q)
    parts = [f"q={f.q}", f"p={f.p}", f"r={f.r}"]
    if args.show_modulus:
        parts.append("modulus=" + ",".join(str(c) for c in f.modulus))
    if args.show_primitive:
        parts.append(f"primitive={f.primitive_element().index}")
    print(" ".join(parts))
    return 0


def _table_header(ctx) -> str:
    return f"q={ctx.field.q} n={ctx.order}\n"


def _element_lines(ctx) -> str:
    return "".join(x.notation() + "\n" for x in ctx.iter_elements())


def _cmd_enumerate(args) -> int:
    ctx = loop_context(field_of_order(args.q))
    text = _table_header(ctx)
    if not args.count_only:
        text += _element_lines(ctx)
    _emit(text, args.out)
    return 0


def _cmd_cayley(args) -> int:
    ctx = loop_context(field_of_order(args.q))
    table = ctx.cayley_table()
    sep = "\t" if args.format == "tsv" else " "
    lines = [_table_header(ctx), _element_lines(ctx)]
    for row in table:
        lines.append(sep.join(str(int(v)) for v in row) + "\n")
    _emit("".join(lines), args.out)
    return 0


def _cmd_psl_verify(args) -> int:
    f = field_of_order(args.q)
    constructor, mode = GENERATOR_FAMILIES[args.family]
    try:
        gens = constructor(f)
    except ValueError as exc:
        print(f"family={args.family} q={args.q} verdict=ERROR")
        print(f"error: {exc}", file=sys.stderr)
        return 3
    projective = mode == "psl"
    closure = group_closure(list(gens), projective=projective)
    expected = len(psl2_elements(f)) if projective else len(sl2_elements(f))
    verdict = "GENERATES" if len(closure) == expected else "PROPER-SUBGROUP"
    print(f"family={args.family} q={args.q} closure={len(closure)} "
          f"expected={expected} verdict={verdict}")
    return 0 if verdict == "GENERATES" else 1


def _cmd_gensets_emit(args) -> int:
    f = field_of_order(args.q)
    gs = gensets.generating_set(args.set_name, f, lam=args.lam)
    import io

    buf = io.StringIO()
    gensets.write_genset(gs, buf)
    _emit(buf.getvalue(), args.out)
    return 0


def _cmd_verify(args) -> int:
    f = field_of_order(args.q)
    report = engine.verify_generates(args.set_name, f, method=args.method,
                                     lam=args.lam)
    print(f"set={report.set_name} q={report.q} method={report.method} "
          f"size={report.size} order={report.order} verdict={report.verdict}")
    return EXIT_BY_VERDICT[report.verdict]


def _cmd_identities(args) -> int:
    f = field_of_order(args.q)
    report = gensets.verify_proof_identities(f, lam=args.lam)
    for r in report.results:
        print(f"identity={r.label} q={report.q} cases={r.cases} "
              f"matrix={'PASS' if r.matrix_ok else 'FAIL'} "
              f"classes={'PASS' if r.class_ok else 'FAIL'}")
    print(f"verdict={'PASS' if report.all_passed else 'FAIL'}")
    return 0 if report.all_passed else 1


def _witness_text(witness) -> str:
    return ";".join(x.notation() for x in witness)


def _cmd_moufang(args) -> int:
    if args.exhaustive == (args.samples is not None):
        raise ValueError("choose exactly one of --exhaustive or --samples")
    if args.samples is not None and args.seed is None:
        raise ValueError("--samples requires --seed")
    ctx = loop_context(field_of_order(args.q))
    if args.exhaustive:
        result = engine.moufang_check(ctx, exhaustive=True, threads=args.threads,
                                      force=args.force)
        parts = [f"q={args.q}", "mode=exhaustive", f"triples={ctx.order ** 3}"]
    else:
        result = engine.moufang_check(ctx, samples=args.samples, seed=args.seed,
                                      threads=args.threads)
        parts = [f"q={args.q}", "mode=sample", f"samples={args.samples}",
                 f"seed={args.seed}"]
    parts.append(f"violations={0 if result.passed else 1}")
    if result.witness is not None:
        parts.append("witness=" + _witness_text(result.witness))
    parts.append(f"verdict={'PASS' if result.passed else 'FAIL'}")
    print(" ".join(parts))
    return 0 if result.passed else 1


def _cmd_diassoc(args) -> int:
    ctx = loop_context(field_of_order(args.q))
    failures = 0
    for x, y in engine.random_pairs(ctx, args.pairs, args.seed):
        if not engine.diassociativity_check(x, y):
            failures += 1
    verdict = "PASS" if failures == 0 else "FAIL"
    print(f"q={args.q} pairs={args.pairs} seed={args.seed} "
          f"failures={failures} verdict={verdict}")
    return 0 if failures == 0 else 1


_HANDLERS = {
    "field": _cmd_field,
    "enumerate": _cmd_enumerate,
    "cayley": _cmd_cayley,
    "verify": _cmd_verify,
    "identities": _cmd_identities,
    "moufang": _cmd_moufang,
    "diassoc": _cmd_diassoc,
}


def run(argv=None) -> int:
    """Parse and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 3
    try:
        if args.command == "psl":
            return _cmd_psl_verify(args)
        if args.command == "gensets":
            return _cmd_gensets_emit(args)
        return _HANDLERS[args.command](args)
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
