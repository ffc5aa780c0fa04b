"""Rule schemas and the derivation checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..syntax import (
    And, Bunch, Comma, Consecution, Fus, Imp, Leaf, Neg, Or, Path, PathError,
    Semi, bunch_paths, format_path, render, replace_at, subterm_at,
)
from .tree import CONTEXT_RULES, ProofTree, Rule, STRUCTURAL_RULES, DerivedRule, iter_tree

__all__ = [
    "System", "SYSTEM_B", "SYSTEM_R", "get_system", "Failure", "CheckReport",
    "check", "match_rule", "find_hole", "open_leaves", "extract_derived_rule",
    "InvalidTreeError", "UnresolvableHoleError",
]

_B_RULES = frozenset({
    Rule.ID, Rule.IMP_I, Rule.IMP_E, Rule.OR_I1, Rule.OR_I2, Rule.OR_E, Rule.AND_I,
    Rule.AND_E, Rule.FUS_I, Rule.FUS_E, Rule.NEG_I, Rule.NEG_E, Rule.CUT,
    Rule.E_B, Rule.E_C, Rule.E_W, Rule.E_K,
})


@dataclass(frozen=True)
class System:
    name: str
    rules: frozenset[Rule]
    structural_bidirectional: bool = False


SYSTEM_B = System("B", _B_RULES)
# R keeps B's negation introduction next to the semicolon form; the
# shipped R derivations of the fusion translation use both.
SYSTEM_R = System("R", _B_RULES | {Rule.NEG_I2, Rule.S_B, Rule.S_C, Rule.S_W})


def get_system(name: str, *, structural_bidirectional: bool = False,
               retain_neg_intro: bool = True) -> System:
    name = name.upper()
    if name == "B":
        rules = _B_RULES
    elif name == "R":
        rules = SYSTEM_R.rules if retain_neg_intro else SYSTEM_R.rules - {Rule.NEG_I}
    else:
        raise ValueError(f"unknown system {name!r}; expected B or R")
    return System(name, rules, structural_bidirectional)


class InvalidTreeError(ValueError):
    pass


class UnresolvableHoleError(ValueError):
    pass


@dataclass(frozen=True)
class Failure:
    path: Path
    kind: str  # "malformed" | "system" | "instance" | "structure"
    reason: str

    def __str__(self) -> str:
        return f"[{format_path(self.path)}] {self.kind}: {self.reason}"


@dataclass
class CheckReport:
    valid: bool
    failures: list[Failure] = field(default_factory=list)
    open_leaves: list[Consecution] = field(default_factory=list)
    rule_nodes: int = 0

    def render(self) -> str:
        lines = [f"valid: {'yes' if self.valid else 'no'}", f"rule nodes: {self.rule_nodes}"]
        lines.append(f"open leaves: {len(self.open_leaves)}")
        lines.extend(f"  {render(c)}" for c in self.open_leaves)
        lines.extend(f"failure {f}" for f in self.failures)
        return "\n".join(lines)


# ----------------------------------------------------------------- schemas

def _leaf_formula(b: Bunch):
    return b.formula if isinstance(b, Leaf) else None


def _candidate_paths(b: Bunch, hint: Path | None) -> Iterable[Path]:
    if hint is not None:
        try:
            if isinstance(subterm_at(b, hint), (Leaf, Comma, Semi)):
                yield hint
        except PathError:
            pass
    for p in bunch_paths(b):
        if p != hint:
            yield p


def _context_hole(concl_ant: Bunch, filled: Bunch, fillers: list[tuple[Bunch, Bunch]],
                  hint: Path | None) -> Path | None:
    # hole p with concl_ant[p] == filled and concl_ant[p := f] == target for each (f, target)
    for p in _candidate_paths(concl_ant, hint):
        if subterm_at(concl_ant, p) != filled:
            continue
        if all(replace_at(concl_ant, p, f) == target for f, target in fillers):
            return p
    return None


# conclusion-side subbunch -> premise-side subbunch, or None
_STRUCT: dict[Rule, Callable[[Bunch], Bunch | None]] = {
    Rule.E_B: lambda s: Comma(s.left.left, Comma(s.left.right, s.right))
    if isinstance(s, Comma) and isinstance(s.left, Comma) else None,
    Rule.E_C: lambda s: Comma(s.right, s.left) if isinstance(s, Comma) else None,
    Rule.E_W: lambda s: Comma(s, s),
    Rule.E_K: lambda s: s.left if isinstance(s, Comma) else None,
    Rule.S_B: lambda s: Semi(s.left.left, Semi(s.left.right, s.right))
    if isinstance(s, Semi) and isinstance(s.left, Semi) else None,
    Rule.S_C: lambda s: Semi(s.right, s.left) if isinstance(s, Semi) else None,
    Rule.S_W: lambda s: Semi(s, s),
}


def _structural_hole(rule: Rule, premise: Bunch, concl: Bunch, hint: Path | None,
                     bidirectional: bool) -> Path | None:
    view = _STRUCT[rule]
    directions = [(concl, premise)] + ([(premise, concl)] if bidirectional else [])
    for dst, src in directions:
        for p in _candidate_paths(dst, hint):
            cand = view(subterm_at(dst, p))
            if cand is not None and replace_at(dst, p, cand) == src:
                return p
    return None


def match_rule(rule: Rule, prems: list[Consecution], concl: Consecution,
               hint: Path | None = None, *, bidirectional: bool = False) -> tuple[bool, Path | None, str]:
    """Whether premises and conclusion instantiate ``rule``.

    Returns ``(ok, hole, reason)``; ``hole`` is the context position used by
    context and structural rules.
    """
    X, A = concl.antecedent, concl.succedent
    no = (False, None)

    if rule is Rule.ID:
        ok = X == Leaf(A)
        return (ok, None, "" if ok else "identity needs A |- A")

    if rule is Rule.IMP_I:
        (p,) = prems
        ok = (isinstance(p.antecedent, Semi) and isinstance(p.antecedent.right, Leaf)
              and p.antecedent.left == X and A == Imp(p.antecedent.right.formula, p.succedent))
        return (ok, None, "" if ok else "expected X;A |- B over X |- A -> B")

    if rule is Rule.IMP_E:
        p1, p2 = prems
        ok = X == Semi(p1.antecedent, p2.antecedent) and p1.succedent == Imp(p2.succedent, A)
        return (ok, None, "" if ok else "expected X |- A -> B and Y |- A over X;Y |- B")

    if rule in (Rule.OR_I1, Rule.OR_I2):
        (p,) = prems
        side = "left" if rule is Rule.OR_I1 else "right"
        ok = p.antecedent == X and isinstance(A, Or) and getattr(A, side) == p.succedent
        return (ok, None, "" if ok else f"expected premise to prove the {side} disjunct")

    if rule is Rule.AND_I:
        p1, p2 = prems
        ok = X == Comma(p1.antecedent, p2.antecedent) and A == And(p1.succedent, p2.succedent)
        return (ok, None, "" if ok else "expected X |- A and Y |- B over X,Y |- A & B")

    if rule is Rule.FUS_I:
        p1, p2 = prems
        ok = X == Semi(p1.antecedent, p2.antecedent) and A == Fus(p1.succedent, p2.succedent)
        return (ok, None, "" if ok else "expected X |- A and Y |- B over X;Y |- A * B")

    if rule is Rule.NEG_I:
        p1, p2 = prems
        a = _leaf_formula(p2.antecedent)
        ok = (p1.antecedent == X and a is not None and A == Neg(a)
              and p2.succedent == Neg(p1.succedent))
        return (ok, None, "" if ok else "expected X |- B and A |- ~B over X |- ~A")

    if rule is Rule.NEG_I2:
        p1, p2 = prems
        ant = p1.antecedent
        ok = (isinstance(ant, Semi) and isinstance(ant.right, Leaf) and isinstance(A, Neg)
              and A.arg == ant.right.formula and X == Semi(ant.left, p2.antecedent)
              and p1.succedent == Neg(p2.succedent))
        return (ok, None, "" if ok else "expected X;A |- ~B and Y |- B over X;Y |- ~A")

    if rule is Rule.NEG_E:
        (p,) = prems
        ok = p.antecedent == X and p.succedent == Neg(Neg(A))
        return (ok, None, "" if ok else "expected X |- ~~A over X |- A")

    if rule in CONTEXT_RULES:
        p1 = prems[0]
        if any(p.succedent != A for p in prems[1:]):
            return (*no, "context premises must share the conclusion's succedent")
        major = p1.succedent
        if rule is Rule.OR_E:
            if not isinstance(major, Or):
                return (*no, "first premise must prove a disjunction")
            fillers = [(Leaf(major.left), prems[1].antecedent), (Leaf(major.right), prems[2].antecedent)]
        elif rule is Rule.AND_E:
            if not isinstance(major, And):
                return (*no, "first premise must prove a conjunction")
            fillers = [(Comma(Leaf(major.left), Leaf(major.right)), prems[1].antecedent)]
        elif rule is Rule.FUS_E:
            if not isinstance(major, Fus):
                return (*no, "first premise must prove a fusion")
            fillers = [(Semi(Leaf(major.left), Leaf(major.right)), prems[1].antecedent)]
        else:
            fillers = [(Leaf(major), prems[1].antecedent)]
        hole = _context_hole(X, p1.antecedent, fillers, hint)
        if hole is None:
            return (*no, "no position in the conclusion antecedent fits the context")
        return (True, hole, "")

    if rule in STRUCTURAL_RULES:
        (p,) = prems
        if p.succedent != A:
            return (*no, "structural rules keep the succedent")
        hole = _structural_hole(rule, p.antecedent, X, hint, bidirectional)
        if hole is None:
            return (*no, f"no position where the {rule.value} pattern rewrites premise into conclusion")
        return (True, hole, "")

    raise ValueError(f"unhandled rule {rule}")


def check(t: ProofTree, system: System | str = SYSTEM_B) -> CheckReport:
    if isinstance(system, str):
        system = get_system(system)
    failures: list[Failure] = []
    leaves: list[Consecution] = []
    count = 0
    for path, node in iter_tree(t):
        if node.rule is None:
            if node.premises:
                failures.append(Failure(path, "malformed", "consecution node connected to consecution nodes"))
            else:
                leaves.append(node.conclusion)
            continue
        count += 1
        if len(node.premises) != node.rule.premises:
            failures.append(Failure(path, "malformed",
                                    f"{node.rule.value} has arity {node.rule.arity} but "
                                    f"{len(node.premises) + 1} consecutions are attached"))
            continue
        if node.rule not in system.rules:
            failures.append(Failure(path, "system", f"rule {node.rule.value} is not in system {system.name}"))
            continue
        ok, _, reason = match_rule(node.rule, [p.conclusion for p in node.premises], node.conclusion,
                                   node.hole, bidirectional=system.structural_bidirectional)
        if not ok:
            failures.append(Failure(path, "instance", f"not an instance of {node.rule.value}: {reason}"))
    if count == 0:
        failures.append(Failure((), "structure", "no rule node"))
    return CheckReport(not failures, failures, leaves, count)


def find_hole(node: ProofTree, *, bidirectional: bool = False) -> Path:
    """Context position of a context or structural rule node."""
    ok, hole, reason = match_rule(node.rule, [p.conclusion for p in node.premises], node.conclusion,
                                  node.hole, bidirectional=bidirectional)
    if not ok or hole is None:
        raise UnresolvableHoleError(f"cannot resolve hole for {node.rule.value}: {reason}")
    return hole


def open_leaves(t: ProofTree) -> list[Consecution]:
    return [node.conclusion for _, node in iter_tree(t) if node.rule is None and not node.premises]


def extract_derived_rule(t: ProofTree, system: System | str = SYSTEM_B) -> DerivedRule:
    report = check(t, system)
    if not report.valid:
        raise InvalidTreeError("; ".join(map(str, report.failures)))
    return DerivedRule(frozenset(report.open_leaves), t.conclusion)
