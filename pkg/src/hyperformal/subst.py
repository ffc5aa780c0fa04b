"""Depth substitutions and sequence substitutions acting on bunches."""

from __future__ import annotations

from typing import Iterable, Literal, Mapping

from .annotate import depth_annotations, rseq_annotations
from .seqred import SeqError, format_seq, is_reduced, parse_seq, red, solve_prefix
from .syntax import (
    And, Atom, Comma, Consecution, Formula, Fus, Imp, Leaf, Neg, Or,
    ParseError, Semi, atom_key, parse_formula, render, vars_of,
)

__all__ = [
    "DepthSubstitution", "RseqSubstitution", "TableRseqSubstitution",
    "ShiftedRseqSubstitution",
    "apply_depth", "shift_depth", "apply_rseq", "shift_rseq",
    "shift_rseq_composite", "fresh_injective",
    "parse_substitution", "format_substitution", "SubstitutionFileError",
]


class SubstitutionFileError(ValueError):
    pass


class DepthSubstitution:
    """Finite table from (depth, atom) to formulas; identity elsewhere."""

    __slots__ = ("table",)

    def __init__(self, table: Mapping[tuple[int, Atom], Formula] | None = None):
        self.table = dict(table or {})

    def __call__(self, n: int, p: Atom) -> Formula:
        return self.table.get((n, p), p)

    def __eq__(self, other):
        return isinstance(other, DepthSubstitution) and self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def __repr__(self):
        items = ", ".join(f"({n},{p})->{render(f)}" for (n, p), f in sorted(
            self.table.items(), key=lambda kv: (kv[0][0], atom_key(kv[0][1]))))
        return f"DepthSubstitution({{{items}}})"


def shift_depth(d: DepthSubstitution, x: int) -> DepthSubstitution:
    """``d_x`` with ``d_x(n, p) = d(n + x, p)``."""
    return DepthSubstitution({(n - x, p): f for (n, p), f in d.table.items()})


def apply_depth(d: DepthSubstitution, n: int, e):
    if isinstance(e, Atom):
        return d(n, e)
    if isinstance(e, Neg):
        return Neg(apply_depth(d, n, e.arg))
    if isinstance(e, (And, Or, Comma)):
        return type(e)(apply_depth(d, n, e.left), apply_depth(d, n, e.right))
    if isinstance(e, Imp):
        return Imp(apply_depth(d, n + 1, e.left), apply_depth(d, n + 1, e.right))
    if isinstance(e, (Fus, Semi)):
        return type(e)(apply_depth(d, n - 1, e.left), apply_depth(d, n, e.right))
    if isinstance(e, Leaf):
        return Leaf(apply_depth(d, n, e.formula))
    if isinstance(e, Consecution):
        return Consecution(apply_depth(d, n, e.antecedent), apply_depth(d, n, e.succedent))
    raise TypeError(f"cannot substitute into {e!r}")


class RseqSubstitution:
    """A map from (reduced sequence, atom) to formulas."""

    def lookup(self, x: str, p: Atom) -> Formula:
        raise NotImplementedError

    def __call__(self, x: str, p: Atom) -> Formula:
        return self.lookup(x, p)


class TableRseqSubstitution(RseqSubstitution):
    __slots__ = ("table",)

    def __init__(self, table: Mapping[tuple[str, Atom], Formula] | None = None):
        table = dict(table or {})
        for x, _ in table:
            if not is_reduced(x):
                raise SeqError(f"substitution key {x!r} is not reduced")
        self.table = table

    def lookup(self, x: str, p: Atom) -> Formula:
        return self.table.get((x, p), p)

    def __eq__(self, other):
        return isinstance(other, TableRseqSubstitution) and self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def __repr__(self):
        items = ", ".join(f"({format_seq(x)},{p})->{render(f)}" for (x, p), f in self.table.items())
        return f"TableRseqSubstitution({{{items}}})"


class ShiftedRseqSubstitution(RseqSubstitution):
    """``base`` with terminal ``source`` traded for terminal ``target``.

    At ``x``: if some ``z`` has ``red(z + source) == x``, look up
    ``base`` at ``red(z + target)``; otherwise at ``x``.
    """

    __slots__ = ("base", "source", "target", "_memo")

    def __init__(self, base: RseqSubstitution, source: str, target: str):
        if not (is_reduced(source) and is_reduced(target)):
            raise SeqError("shift endpoints must be reduced")
        self.base = base
        self.source = source
        self.target = target
        self._memo: dict[str, str] = {}

    def redirect(self, x: str) -> str:
        y = self._memo.get(x)
        if y is None:
            z = solve_prefix(x, self.source)
            y = x if z is None else red(z + self.target)
            self._memo[x] = y
        return y

    def lookup(self, x: str, p: Atom) -> Formula:
        return self.base.lookup(self.redirect(x), p)

    def chain(self) -> list[tuple[str, str]]:
        """The (source, target) pairs from innermost to outermost."""
        pairs = []
        s: RseqSubstitution = self
        while isinstance(s, ShiftedRseqSubstitution):
            pairs.append((s.source, s.target))
            s = s.base
        return pairs[::-1]

    def root(self) -> RseqSubstitution:
        s: RseqSubstitution = self
        while isinstance(s, ShiftedRseqSubstitution):
            s = s.base
        return s

    def __repr__(self):
        return f"{self.base!r}[{format_seq(self.source)}->{format_seq(self.target)}]"


def shift_rseq(s: RseqSubstitution, w: str, y: str) -> RseqSubstitution:
    return ShiftedRseqSubstitution(s, w, y)


def shift_rseq_composite(s: RseqSubstitution, pairs: Iterable[tuple[str, str]]) -> RseqSubstitution:
    for w, y in pairs:
        s = shift_rseq(s, w, y)
    return s


def apply_rseq(s: RseqSubstitution, x: str, e):
    if isinstance(e, Atom):
        return s.lookup(x, e)
    if isinstance(e, Neg):
        return Neg(apply_rseq(s, red("n" + x), e.arg))
    if isinstance(e, (And, Or, Comma)):
        return type(e)(apply_rseq(s, x, e.left), apply_rseq(s, x, e.right))
    if isinstance(e, Imp):
        return Imp(apply_rseq(s, red("l" + x), e.left), apply_rseq(s, red("r" + x), e.right))
    if isinstance(e, (Fus, Semi)):
        return type(e)(apply_rseq(s, red("L" + x), e.left), apply_rseq(s, red("P" + x), e.right))
    if isinstance(e, Leaf):
        return Leaf(apply_rseq(s, x, e.formula))
    if isinstance(e, Consecution):
        return Consecution(apply_rseq(s, x, e.antecedent), apply_rseq(s, x, e.succedent))
    raise TypeError(f"cannot substitute into {e!r}")


def fresh_injective(mode: Literal["depth", "rseq"], inputs: Iterable):
    """Atomic substitution sending each occurring (annotation, atom) to its own fresh atom.

    Fresh atoms continue the p-index sequence past the largest index in
    the inputs.
    """
    inputs = list(inputs)
    annotate = {"depth": depth_annotations, "rseq": rseq_annotations}[mode]
    atoms = set()
    keys = set()
    for e in inputs:
        parts = (e.antecedent, e.succedent) if isinstance(e, Consecution) else (e,)
        for part in parts:
            atoms |= vars_of(part)
            for entry in annotate(part):
                node = entry.node.formula if isinstance(entry.node, Leaf) else entry.node
                if isinstance(node, Atom):
                    keys.add((entry.annotation, node))
    start = max((a.index or 0 for a in atoms), default=0) + 1
    ordered = sorted(keys, key=lambda k: (atom_key(k[1]), k[0] if mode == "depth" else (len(k[0]), k[0])))
    table = {k: Atom.p(start + i) for i, k in enumerate(ordered)}
    return DepthSubstitution(table) if mode == "depth" else TableRseqSubstitution(table)


# ----------------------------------------------------------- file format

def parse_substitution(text: str, mode: Literal["depth", "rseq"]):
    """Read ``<annotation> <atom> := <formula>`` lines (``#`` starts a comment)."""
    table = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rhs = line.partition(":=")
        fields = head.split()
        if not sep or len(fields) != 2:
            raise SubstitutionFileError(f"line {lineno}: expected '<annotation> <atom> := <formula>'")
        ann_text, atom_text = fields
        try:
            atom = parse_formula(atom_text)
            if not isinstance(atom, Atom):
                raise SubstitutionFileError(f"line {lineno}: {atom_text!r} is not an atom")
            if mode == "depth":
                key = (int(ann_text), atom)
            else:
                x = parse_seq(ann_text)
                if not is_reduced(x):
                    raise SubstitutionFileError(f"line {lineno}: sequence {ann_text!r} is not reduced")
                key = (x, atom)
            value = parse_formula(rhs)
        except (ParseError, SeqError, ValueError) as exc:
            if isinstance(exc, SubstitutionFileError):
                raise
            raise SubstitutionFileError(f"line {lineno}: {exc}") from exc
        if key in table and table[key] != value:
            raise SubstitutionFileError(f"line {lineno}: conflicting binding for {ann_text} {atom_text}")
        table[key] = value
    return DepthSubstitution(table) if mode == "depth" else TableRseqSubstitution(table)


def format_substitution(s) -> str:
    if isinstance(s, DepthSubstitution):
        items = sorted(s.table.items(), key=lambda kv: (kv[0][0], atom_key(kv[0][1])))
        return "".join(f"{n} {p.name} := {render(f)}\n" for (n, p), f in items)
    if isinstance(s, TableRseqSubstitution):
        items = sorted(s.table.items(), key=lambda kv: (len(kv[0][0]), kv[0][0], atom_key(kv[0][1])))
        return "".join(f"{format_seq(x)} {p.name} := {render(f)}\n" for (x, p), f in items)
    raise TypeError("only table substitutions have a file form")
