"""Command-line front end.  Each subcommand parses its input, calls one
library function, and prints the rendered result.

Exit codes: 0 success / valid / witness found, 1 invalid / no witness,
2 usage, parse, or file error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .annotate import depth_annotations, rseq_annotations, sharing_report
from .deriv import (
    DerivationSyntaxError, UnresolvableHoleError, UnsupportedRuleError, apply_depth_to_tree,
    apply_rseq_to_tree, check, format_tree, get_system, parse_tree,
)
from .harness import GenConfig, gen_derivation
from .selftest import format_table, run_all
from .seqred import SeqError, format_seq, is_reduced, parse_seq, red
from .subst import SubstitutionFileError, apply_depth, apply_rseq, parse_substitution
from .syntax import (
    Consecution, ParseError, format_path, parse_any, parse_bunch, parse_consecution, render,
)
from .translate import cf, tau

GRAMMAR = """\
text grammar:
  atom        := "p" digits | letter { letter | digit | "_" }
  formula     := atom | "~" formula | "(" formula bin formula ")"     bin := "&" | "|" | "->" | "*"
  bunch       := formula | "(" bunch "," bunch ")" | "(" bunch ";" bunch ")"
  consecution := bunch "|-" formula
  outermost parentheses may be dropped
sequences: letters l r L (lambda) P (rho) n; "e" is the empty sequence
substitution files: "<depth|seq> <atom> := <formula>" per line, "#" comments
derivation files: (id "F") | (open "X |- A") | (rule R tree* (concl "X |- A") [(hole "0.1")])"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n\n{GRAMMAR}\n")
        sys.exit(2)


def _read_text(arg: str) -> str:
    """``-`` reads stdin; anything else is the text itself."""
    return sys.stdin.read() if arg == "-" else arg


def _read_file(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _fmt_ann(ann) -> str:
    return format_seq(ann) if isinstance(ann, str) else str(ann)


# ------------------------------------------------------------- commands

def cmd_parse(args) -> int:
    print(render(parse_any(_read_text(args.text).strip())))
    return 0


def cmd_annotate(args) -> int:
    e = parse_any(_read_text(args.text).strip())
    annotate = depth_annotations if args.mode == "depth" else rseq_annotations
    parts = [("A", e.antecedent), ("S", e.succedent)] if isinstance(e, Consecution) else [("", e)]
    for prefix, part in parts:
        for entry in annotate(part):
            where = format_path(entry.path)
            if prefix:
                where = f"{prefix}:{where}"
            print(f"{where} {render(entry.node)} {_fmt_ann(entry.annotation)}")
    return 0


def cmd_reduce(args) -> int:
    print(format_seq(red(parse_seq(args.seq))))
    return 0


def _parse_at(mode: str, text: str):
    if mode == "depth":
        try:
            return int(text)
        except ValueError:
            raise UsageError(f"--at must be an integer in depth mode, got {text!r}") from None
    x = parse_seq(text)
    if not is_reduced(x):
        raise UsageError(f"--at sequence {text!r} is not reduced (it reduces to {format_seq(red(x))})")
    return x


def cmd_subst(args) -> int:
    s = parse_substitution(_read_file(args.sub), args.mode)
    at = _parse_at(args.mode, args.at)
    if args.tree:
        t = parse_tree(_read_file(args.tree))
        act = apply_depth_to_tree if args.mode == "depth" else apply_rseq_to_tree
        print(format_tree(act(s, at, t)))
        return 0
    if args.text is None:
        raise UsageError("subst needs a target: text argument or --tree FILE")
    e = parse_any(_read_text(args.text).strip())
    apply = apply_depth if args.mode == "depth" else apply_rseq
    print(render(apply(s, at, e)))
    return 0


def cmd_check(args) -> int:
    t = parse_tree(_read_file(args.file))
    system = get_system(args.system, structural_bidirectional=args.structural_bidirectional,
                        retain_neg_intro=not args.no_neg_intro)
    report = check(t, system)
    print(report.render())
    return 0 if report.valid else 1


def cmd_share(args) -> int:
    c = parse_consecution(_read_text(args.consecution).strip())
    w = sharing_report(c.antecedent, c.succedent, args.mode)
    if w is None:
        print("no witness")
        return 1
    if args.mode == "plain":
        print(w.atom.name)
    else:
        print(f"{w.atom.name} @ {_fmt_ann(w.annotation)}")
    return 0


def cmd_translate(args) -> int:
    b = parse_bunch(_read_text(args.bunch).strip())
    print(render(cf(b) if args.which == "cf" else tau(b)))
    return 0


def cmd_gen(args) -> int:
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create {out}: {exc.strerror or exc}") from None
    width = max(4, len(str(args.count - 1)))
    for i in range(args.count):
        cfg = GenConfig(seed=args.seed + i, max_rule_nodes=args.steps, system=args.system)
        t = gen_derivation(cfg)
        path = out / f"{args.system.lower()}_{args.seed + i:0{width}d}.deriv"
        header = f";; seed {cfg.seed}, system {cfg.system}, {t.size()} rule nodes\n"
        path.write_text(header + format_tree(t) + "\n", encoding="utf-8")
        print(path)
    return 0


def cmd_selftest(args) -> int:
    numbers = None
    if args.only:
        try:
            numbers = sorted({int(k) for k in args.only.split(",")})
        except ValueError:
            raise UsageError(f"--only expects comma-separated criterion numbers, got {args.only!r}") from None
        if any(k not in range(1, 12) for k in numbers):
            raise UsageError("criterion numbers run from 1 to 11")
    results = run_all(numbers)
    print(format_table(results))
    return 0 if all(r.passed for r in results) else 1


# -------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperformal", description=__doc__.splitlines()[0],
                epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("parse", help="parse and re-render a formula, bunch or consecution")
    sp.add_argument("text", help="text to parse, or - for stdin")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("annotate", help="depth or sequence annotation of every node")
    sp.add_argument("--mode", choices=["depth", "rseq"], required=True)
    sp.add_argument("text")
    sp.set_defaults(func=cmd_annotate)

    sp = sub.add_parser("reduce", help="reduce a sequence")
    sp.add_argument("seq", help="letters from l r L P n, or e")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("subst", help="apply a substitution file to text or a derivation")
    sp.add_argument("--mode", choices=["depth", "rseq"], required=True)
    sp.add_argument("--at", required=True, help="starting depth (depth) or reduced sequence (rseq)")
    sp.add_argument("--sub", required=True, help="substitution file")
    sp.add_argument("--tree", help="derivation file to transform instead of text")
    sp.add_argument("text", nargs="?")
    sp.set_defaults(func=cmd_subst)

    sp = sub.add_parser("check", help="check a derivation file")
    sp.add_argument("--system", choices=["B", "R"], default="B")
    sp.add_argument("--structural-bidirectional", action="store_true",
                    help="also accept structural rules read right to left")
    sp.add_argument("--no-neg-intro", action="store_true",
                    help="in R, drop the plain negation introduction rule")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("share", help="canonical shared variable of a consecution")
    sp.add_argument("--mode", choices=["plain", "depth", "rseq"], default="plain")
    sp.add_argument("consecution")
    sp.set_defaults(func=cmd_share)

    sp = sub.add_parser("translate", help="characteristic formula or fusion-free translation")
    sp.add_argument("which", choices=["cf", "tau"])
    sp.add_argument("bunch")
    sp.set_defaults(func=cmd_translate)

    sp = sub.add_parser("gen", help="write random valid derivations")
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--steps", type=int, default=8, help="maximum rule nodes per tree")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--system", choices=["B", "R"], default="B")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("selftest", help="run the acceptance suite")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SeqError, SubstitutionFileError, DerivationSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, UnresolvableHoleError, UnsupportedRuleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
