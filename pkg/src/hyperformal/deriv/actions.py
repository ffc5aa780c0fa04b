"""Depth and sequence substitutions acting on whole derivations."""

from __future__ import annotations

from ..annotate import hole_info
from ..subst import (
    DepthSubstitution, RseqSubstitution, apply_depth, apply_rseq, shift_rseq,
)
from ..syntax import Consecution
from .rules import find_hole
from .tree import CONTEXT_RULES, ProofTree, Rule

__all__ = ["apply_depth_to_tree", "apply_rseq_to_tree", "UnsupportedRuleError"]


class UnsupportedRuleError(ValueError):
    pass


_SAME = {Rule.OR_I1, Rule.OR_I2, Rule.NEG_E, Rule.E_B, Rule.E_C, Rule.E_W, Rule.E_K}
_R_ONLY = {Rule.NEG_I2, Rule.S_B, Rule.S_C, Rule.S_W}


def _depth_offsets(t: ProofTree) -> list[int]:
    rule = t.rule
    if rule is Rule.IMP_I:
        return [1]
    if rule in (Rule.IMP_E, Rule.FUS_I):
        return [-1, 0]
    if rule in _SAME:
        return [0]
    if rule in (Rule.AND_I, Rule.NEG_I):
        return [0, 0]
    if rule in CONTEXT_RULES:
        c = hole_info(t.conclusion.antecedent, find_hole(t)).depth
        return [c] + [0] * (len(t.premises) - 1)
    raise UnsupportedRuleError(f"depth action is undefined for rule {rule.value}")


def apply_depth_to_tree(d: DepthSubstitution, n: int, t: ProofTree,
                        record: list[tuple[Consecution, int]] | None = None) -> ProofTree:
    """Image of a B-derivation under ``d`` at depth ``n``.

    ``record``, when given, collects ``(open leaf, depth it was mapped at)``.
    """
    concl = apply_depth(d, n, t.conclusion)
    if t.rule is None:
        if record is not None:
            record.append((t.conclusion, n))
        return ProofTree(concl)
    if t.rule is Rule.ID:
        return ProofTree(concl, Rule.ID)
    if t.rule in _R_ONLY:
        raise UnsupportedRuleError(f"depth action is undefined for rule {t.rule.value}")
    offsets = _depth_offsets(t)
    hole = find_hole(t) if t.rule in CONTEXT_RULES else t.hole
    premises = tuple(apply_depth_to_tree(d, n + k, p, record) for k, p in zip(offsets, t.premises))
    return ProofTree(concl, t.rule, premises, hole)


def _premise_substitutions(s: RseqSubstitution, t: ProofTree) -> list[RseqSubstitution]:
    rule = t.rule
    if rule is Rule.IMP_I:
        return [shift_rseq(s, "L", "")]
    if rule in (Rule.IMP_E, Rule.FUS_I):
        return [shift_rseq(s, "", "L"), shift_rseq(s, "", "P")]
    if rule in CONTEXT_RULES:
        x = hole_info(t.conclusion.antecedent, find_hole(t)).seq
        first = shift_rseq(s, "", x) if x else s
        return [first] + [s] * (len(t.premises) - 1)
    if rule is Rule.NEG_I:
        # plain for X |- B, shifted for A |- ~B
        return [s, shift_rseq(s, "n", "")]
    if rule in _SAME or rule is Rule.AND_I:
        return [s] * len(t.premises)
    raise UnsupportedRuleError(f"sequence action is undefined for rule {rule.value}")


def apply_rseq_to_tree(s: RseqSubstitution, x: str, t: ProofTree,
                       record: list[tuple[Consecution, RseqSubstitution]] | None = None) -> ProofTree:
    """Image of a B-derivation under ``s`` at sequence ``x``.

    Only guaranteed to be a derivation when ``x`` is empty.  ``record``
    collects ``(open leaf, substitution it was mapped with)``.
    """
    concl = apply_rseq(s, x, t.conclusion)
    if t.rule is None:
        if record is not None:
            record.append((t.conclusion, s))
        return ProofTree(concl)
    if t.rule is Rule.ID:
        return ProofTree(concl, Rule.ID)
    if t.rule in _R_ONLY:
        raise UnsupportedRuleError(f"sequence action is undefined for rule {t.rule.value}")
    subs = _premise_substitutions(s, t)
    hole = find_hole(t) if t.rule in CONTEXT_RULES else t.hole
    premises = tuple(apply_rseq_to_tree(si, x, p, record) for si, p in zip(subs, t.premises))
    return ProofTree(concl, t.rule, premises, hole)
