"""Proof trees for B and R, the rule checker, and substitution actions on trees."""

from .actions import UnsupportedRuleError, apply_depth_to_tree, apply_rseq_to_tree
from .rules import (
    SYSTEM_B, SYSTEM_R, CheckReport, Failure, InvalidTreeError, System,
    UnresolvableHoleError, check, extract_derived_rule, find_hole, get_system,
    match_rule, open_leaves,
)
from .sexpr import DerivationSyntaxError, format_tree, parse_tree
from .tree import DerivedRule, ProofTree, Rule, id_tree, iter_tree, open_leaf, rule_nodes

__all__ = [
    "Rule", "ProofTree", "DerivedRule", "id_tree", "open_leaf", "iter_tree", "rule_nodes",
    "System", "SYSTEM_B", "SYSTEM_R", "get_system", "Failure", "CheckReport", "check",
    "match_rule", "find_hole", "open_leaves", "extract_derived_rule",
    "InvalidTreeError", "UnresolvableHoleError", "UnsupportedRuleError",
    "apply_depth_to_tree", "apply_rseq_to_tree",
    "parse_tree", "format_tree", "DerivationSyntaxError",
]
