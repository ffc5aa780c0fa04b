from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from ..syntax import Consecution, Formula, Leaf, Path

__all__ = ["Rule", "ProofTree", "DerivedRule", "id_tree", "open_leaf", "rule_nodes", "iter_tree"]


class Rule(Enum):
    """Rule names; the value is the token used in derivation files."""

    ID = "id"
    IMP_I = "impI"
    IMP_E = "impE"
    OR_I1 = "orI1"
    OR_I2 = "orI2"
    OR_E = "orE"
    AND_I = "andI"
    AND_E = "andE"
    FUS_I = "fusI"
    FUS_E = "fusE"
    NEG_I = "negI"
    NEG_E = "negE"
    CUT = "cut"
    E_B = "eB"
    E_C = "eC"
    E_W = "eW"
    E_K = "eK"
    NEG_I2 = "negI2"
    S_B = "sB"
    S_C = "sC"
    S_W = "sW"

    @property
    def arity(self) -> int:
        """Total number of consecutions in the rule, conclusion included."""
        return _ARITY[self]

    @property
    def premises(self) -> int:
        return _ARITY[self] - 1

    @property
    def is_context(self) -> bool:
        return self in CONTEXT_RULES

    @property
    def is_structural(self) -> bool:
        return self in STRUCTURAL_RULES

    @classmethod
    def from_token(cls, token: str) -> "Rule":
        for r in cls:
            if r.value.lower() == token.lower():
                return r
        raise ValueError(f"unknown rule {token!r}")


_ARITY = {Rule.ID: 1, Rule.OR_E: 4}
_ARITY.update({r: 2 for r in (Rule.IMP_I, Rule.OR_I1, Rule.OR_I2, Rule.NEG_E, Rule.E_B, Rule.E_C,
                              Rule.E_W, Rule.E_K, Rule.S_B, Rule.S_C, Rule.S_W)})
_ARITY.update({r: 3 for r in (Rule.IMP_E, Rule.AND_I, Rule.FUS_I, Rule.NEG_I, Rule.AND_E,
                              Rule.FUS_E, Rule.CUT, Rule.NEG_I2)})

CONTEXT_RULES = frozenset({Rule.OR_E, Rule.AND_E, Rule.FUS_E, Rule.CUT})
STRUCTURAL_RULES = frozenset({Rule.E_B, Rule.E_C, Rule.E_W, Rule.E_K, Rule.S_B, Rule.S_C, Rule.S_W})


@dataclass(frozen=True, slots=True)
class ProofTree:
    """A consecution node and, unless it is an open leaf, the rule node above it.

    ``rule is None`` marks a consecution with nothing above it.  ``hole``
    optionally pins the context position in the conclusion antecedent for
    context and structural rules.
    """

    conclusion: Consecution
    rule: Rule | None = None
    premises: tuple["ProofTree", ...] = ()
    hole: Path | None = None

    def size(self) -> int:
        """Number of rule nodes."""
        return (self.rule is not None) + sum(p.size() for p in self.premises)


@dataclass(frozen=True, slots=True)
class DerivedRule:
    premises: frozenset[Consecution]
    conclusion: Consecution


def id_tree(a: Formula) -> ProofTree:
    return ProofTree(Consecution(Leaf(a), a), Rule.ID)


def open_leaf(c: Consecution) -> ProofTree:
    return ProofTree(c)


def iter_tree(t: ProofTree, path: Path = ()) -> Iterator[tuple[Path, ProofTree]]:
    """Post-order walk: premises before the node that uses them."""
    for i, p in enumerate(t.premises):
        yield from iter_tree(p, path + (i,))
    yield path, t


def rule_nodes(t: ProofTree) -> Iterator[Rule]:
    for _, node in iter_tree(t):
        if node.rule is not None:
            yield node.rule
