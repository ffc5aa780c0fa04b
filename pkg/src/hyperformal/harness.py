"""Seeded generators, counterexample search and brute-force oracles."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

from .deriv import (
    ProofTree, Rule, SYSTEM_B, apply_rseq_to_tree, check, get_system, id_tree, iter_tree,
)
from .seqred import LETTERS, is_reduced, red
from .subst import (
    DepthSubstitution, TableRseqSubstitution, fresh_injective,
)
from .annotate import depth_annotations, rseq_annotations
from .syntax import (
    And, Atom, Bunch, Comma, Consecution, Formula, Fus, Imp, Leaf, Neg, Or, Semi,
    bunch_paths, replace_at, subterm_at,
)

__all__ = [
    "GenConfig", "gen_formula", "gen_bunch", "gen_consecution", "gen_derivation",
    "gen_substitution", "gen_reduced_seq", "find_strong_rseq_counterexample",
    "documented_counterexample", "all_seqs", "reduced_seqs", "oracle_prefix_solutions",
    "leaf_count",
]


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_formula_depth: int = 2
    max_rule_nodes: int = 8
    atom_pool: int = 4
    system: str = "B"
    open_leaves: bool = False
    max_leaves: int = 24

    def __post_init__(self):
        if min(self.max_formula_depth, self.max_rule_nodes, self.atom_pool, self.max_leaves) < 1:
            raise ValueError("generator bounds must be positive")


# ------------------------------------------------------------ entities

def gen_formula(rng: random.Random, depth: int = 2, pool: int = 4) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        return Atom.p(rng.randint(1, pool))
    kind = rng.randrange(5)
    if kind == 0:
        return Neg(gen_formula(rng, depth - 1, pool))
    ctor = (And, Or, Imp, Fus)[kind - 1]
    return ctor(gen_formula(rng, depth - 1, pool), gen_formula(rng, depth - 1, pool))


def gen_bunch(rng: random.Random, depth: int = 2, pool: int = 4, formula_depth: int = 2) -> Bunch:
    if depth <= 0 or rng.random() < 0.35:
        return Leaf(gen_formula(rng, formula_depth, pool))
    ctor = Comma if rng.random() < 0.5 else Semi
    return ctor(gen_bunch(rng, depth - 1, pool, formula_depth), gen_bunch(rng, depth - 1, pool, formula_depth))


def gen_consecution(rng: random.Random, depth: int = 2, pool: int = 4) -> Consecution:
    return Consecution(gen_bunch(rng, depth, pool), gen_formula(rng, depth, pool))


def gen_reduced_seq(rng: random.Random, max_len: int = 3) -> str:
    while True:
        s = red("".join(rng.choice(LETTERS) for _ in range(rng.randint(0, max_len))))
        if len(s) <= max_len:
            return s


def leaf_count(b: Bunch) -> int:
    if isinstance(b, Leaf):
        return 1
    return leaf_count(b.left) + leaf_count(b.right)


# ------------------------------------------------------------- derivations

def _node(rule: Rule, premises, ant: Bunch, succ: Formula, hole=None) -> ProofTree:
    return ProofTree(Consecution(ant, succ), rule, tuple(premises), hole)


def _leaf_positions(b: Bunch):
    return [p for p in bunch_paths(b) if isinstance(subterm_at(b, p), Leaf)]


def _positions(b: Bunch, pred) -> list:
    return [p for p in bunch_paths(b) if pred(subterm_at(b, p))]


class _Builder:
    """Rule applications around the current tree ``t``.

    Each method returns a new valid tree that uses ``t`` as a premise, or
    None when the rule does not fit.
    """

    def __init__(self, rng: random.Random, cfg: GenConfig):
        self.rng = rng
        self.cfg = cfg

    def formula(self, depth: int | None = None) -> Formula:
        d = self.cfg.max_formula_depth if depth is None else depth
        return gen_formula(self.rng, d, self.cfg.atom_pool)

    def side_tree(self, budget: int) -> ProofTree:
        # an independent small derivation, usually a bare identity
        if budget >= 2 and self.rng.random() < 0.3:
            sub = GenConfig(seed=self.rng.getrandbits(32), max_formula_depth=self.cfg.max_formula_depth,
                            max_rule_nodes=min(budget, 3), atom_pool=self.cfg.atom_pool,
                            system=self.cfg.system, max_leaves=self.cfg.max_leaves)
            return gen_derivation(sub)
        return id_tree(self.formula())

    def pick(self, options: list[Callable[[], ProofTree | None]]) -> ProofTree | None:
        options = list(options)
        self.rng.shuffle(options)
        for opt in options:
            out = opt()
            if out is not None:
                return out
        return None

    # -- operational rules
    def imp_i(self, t, budget):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        if isinstance(X, Semi) and isinstance(X.right, Leaf):
            return _node(Rule.IMP_I, [t], X.left, Imp(X.right.formula, A))
        if isinstance(X, Leaf):
            D = self.formula(1)
            mid = self.imp_e_right(t, D)
            return _node(Rule.IMP_I, [mid], Leaf(Imp(A, D)), Imp(X.formula, D))
        return None

    def imp_e_right(self, t, D=None):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        D = D if D is not None else self.formula(1)
        return _node(Rule.IMP_E, [id_tree(Imp(A, D)), t], Semi(Leaf(Imp(A, D)), X), D)

    def imp_e(self, t, budget):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        opts = [lambda: self.imp_e_right(t)]
        if isinstance(A, Imp):
            opts.append(lambda: _node(Rule.IMP_E, [t, id_tree(A.left)], Semi(X, Leaf(A.left)), A.right))
        return self.pick(opts)

    def or_i(self, t, budget, rule):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        B = self.formula(1)
        return _node(rule, [t], X, Or(A, B) if rule is Rule.OR_I1 else Or(B, A))

    def or_e(self, t, budget):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        opts = []
        if isinstance(A, Or):
            def major():
                C, D = A.left, A.right
                p2 = _node(Rule.OR_I1, [id_tree(C)], Leaf(C), A)
                p3 = _node(Rule.OR_I2, [id_tree(D)], Leaf(D), A)
                return _node(Rule.OR_E, [t, p2, p3], X, A, ())
            opts.append(major)

        def minor():
            q = self.rng.choice(_leaf_positions(X))
            C = subterm_at(X, q).formula
            return _node(Rule.OR_E, [id_tree(Or(C, C)), t, t], replace_at(X, q, Leaf(Or(C, C))), A, q)
        opts.append(minor)
        return self.pick(opts)

    def and_i(self, t, budget):
        other = self.side_tree(budget - 2)
        a, b = (t, other) if self.rng.random() < 0.5 else (other, t)
        return _node(Rule.AND_I, [a, b], Comma(a.conclusion.antecedent, b.conclusion.antecedent),
                     And(a.conclusion.succedent, b.conclusion.succedent))

    def fus_i(self, t, budget):
        other = self.side_tree(budget - 2)
        a, b = (t, other) if self.rng.random() < 0.5 else (other, t)
        return _node(Rule.FUS_I, [a, b], Semi(a.conclusion.antecedent, b.conclusion.antecedent),
                     Fus(a.conclusion.succedent, b.conclusion.succedent))

    def _pair_elim(self, t, rule, bunch_ctor, formula_ctor):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        opts = []
        spots = _positions(X, lambda s: isinstance(s, bunch_ctor)
                           and isinstance(s.left, Leaf) and isinstance(s.right, Leaf))
        if spots:
            def minor():
                q = self.rng.choice(spots)
                s = subterm_at(X, q)
                F = formula_ctor(s.left.formula, s.right.formula)
                return _node(rule, [id_tree(F), t], replace_at(X, q, Leaf(F)), A, q)
            opts.append(minor)
        if isinstance(A, formula_ctor):
            C, D = A.left, A.right
            if rule is Rule.AND_E:
                def major():
                    p2 = _node(Rule.E_K, [id_tree(C)], Comma(Leaf(C), Leaf(D)), C, ())
                    return _node(rule, [t, p2], X, C, ())
            else:
                def major():
                    p2 = _node(Rule.FUS_I, [id_tree(C), id_tree(D)], Semi(Leaf(C), Leaf(D)), A)
                    return _node(rule, [t, p2], X, A, ())
            opts.append(major)
        return self.pick(opts)

    def and_e(self, t, budget):
        return self._pair_elim(t, Rule.AND_E, Comma, And)

    def fus_e(self, t, budget):
        return self._pair_elim(t, Rule.FUS_E, Semi, Fus)

    def neg_i(self, t, budget):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        opts = [lambda: _node(Rule.NEG_I, [t, id_tree(Neg(A))], X, Neg(Neg(A)))]
        if isinstance(X, Leaf) and isinstance(A, Neg):
            B = A.arg
            opts.append(lambda: _node(Rule.NEG_I, [id_tree(B), t], Leaf(B), Neg(X.formula)))
        return self.pick(opts)

    def neg_e(self, t, budget):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        if isinstance(A, Neg) and isinstance(A.arg, Neg):
            return _node(Rule.NEG_E, [t], X, A.arg.arg)
        mid = _node(Rule.NEG_I, [t, id_tree(Neg(A))], X, Neg(Neg(A)))
        return _node(Rule.NEG_E, [mid], X, A)

    def cut(self, t, budget):
        X, A = t.conclusion.antecedent, t.conclusion.succedent

        def as_major():
            D = self.formula(1)
            p2 = _node(Rule.IMP_E, [id_tree(Imp(A, D)), id_tree(A)], Semi(Leaf(Imp(A, D)), Leaf(A)), D)
            return _node(Rule.CUT, [t, p2], Semi(Leaf(Imp(A, D)), X), D, (1,))

        def as_minor():
            q = self.rng.choice(_leaf_positions(X))
            C = subterm_at(X, q).formula
            return _node(Rule.CUT, [id_tree(C), t], X, A, q)
        return self.pick([as_major, as_minor])

    # -- structural rules (premise side -> conclusion side)
    def _rewrite(self, t, rule, pred, rewrite):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        spots = _positions(X, pred)
        if not spots:
            return None
        q = self.rng.choice(spots)
        return _node(rule, [t], replace_at(X, q, rewrite(subterm_at(X, q))), A, q)

    def weaken(self, t, q=None, extra=None):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        q = q if q is not None else self.rng.choice(list(bunch_paths(X)))
        s = subterm_at(X, q)
        extra = extra if extra is not None else Leaf(self.formula(1))
        return _node(Rule.E_K, [t], replace_at(X, q, Comma(s, extra)), A, q)

    def e_b(self, t, budget):
        pred = lambda s: isinstance(s, Comma) and isinstance(s.right, Comma)
        rewrite = lambda s: Comma(Comma(s.left, s.right.left), s.right.right)
        out = self._rewrite(t, Rule.E_B, pred, rewrite)
        if out is None:
            w = self.weaken(t, ())
            w = self.weaken(w, (1,))
            out = self._rewrite(w, Rule.E_B, pred, rewrite)
        return out

    def e_c(self, t, budget):
        pred = lambda s: isinstance(s, Comma)
        rewrite = lambda s: Comma(s.right, s.left)
        return self._rewrite(t, Rule.E_C, pred, rewrite) or self._rewrite(self.weaken(t), Rule.E_C, pred, rewrite)

    def e_w(self, t, budget):
        pred = lambda s: isinstance(s, Comma) and s.left == s.right
        out = self._rewrite(t, Rule.E_W, pred, lambda s: s.left)
        if out is None:
            X = t.conclusion.antecedent
            q = self.rng.choice(list(bunch_paths(X)))
            w = self.weaken(t, q, subterm_at(X, q))
            out = _node(Rule.E_W, [w], X, t.conclusion.succedent, q)
        return out

    def e_k(self, t, budget):
        return self.weaken(t)

    # -- R additions
    def neg_i2(self, t, budget):
        X, A = t.conclusion.antecedent, t.conclusion.succedent
        opts = []
        if isinstance(X, Semi) and isinstance(X.right, Leaf) and isinstance(A, Neg):
            B = A.arg
            opts.append(lambda: _node(Rule.NEG_I2, [t, id_tree(B)], Semi(X.left, Leaf(B)), Neg(X.right.formula)))

        def as_minor():
            C = self.formula(1)
            p1 = _node(Rule.IMP_E, [id_tree(Imp(C, Neg(A))), id_tree(C)],
                       Semi(Leaf(Imp(C, Neg(A))), Leaf(C)), Neg(A))
            return _node(Rule.NEG_I2, [p1, t], Semi(Leaf(Imp(C, Neg(A))), X), Neg(C))
        opts.append(as_minor)
        return self.pick(opts)

    def s_b(self, t, budget):
        pred = lambda s: isinstance(s, Semi) and isinstance(s.right, Semi)
        rewrite = lambda s: Semi(Semi(s.left, s.right.left), s.right.right)
        out = self._rewrite(t, Rule.S_B, pred, rewrite)
        if out is None:
            out = self._rewrite(self.imp_e_right(self.imp_e_right(t)), Rule.S_B, pred, rewrite)
        return out

    def s_c(self, t, budget):
        pred = lambda s: isinstance(s, Semi)
        rewrite = lambda s: Semi(s.right, s.left)
        return self._rewrite(t, Rule.S_C, pred, rewrite) or self._rewrite(self.imp_e_right(t), Rule.S_C, pred, rewrite)

    def s_w(self, t, budget):
        pred = lambda s: isinstance(s, Semi) and s.left == s.right
        out = self._rewrite(t, Rule.S_W, pred, lambda s: s.left)
        if out is None:
            X, A = t.conclusion.antecedent, t.conclusion.succedent
            doubled = _node(Rule.FUS_I, [t, t], Semi(X, X), Fus(A, A))
            out = _node(Rule.S_W, [doubled], X, Fus(A, A), ())
        return out

    def apply(self, rule: Rule, t: ProofTree, budget: int) -> ProofTree | None:
        table = {
            Rule.IMP_I: self.imp_i, Rule.IMP_E: self.imp_e,
            Rule.OR_I1: lambda t, b: self.or_i(t, b, Rule.OR_I1),
            Rule.OR_I2: lambda t, b: self.or_i(t, b, Rule.OR_I2),
            Rule.OR_E: self.or_e, Rule.AND_I: self.and_i, Rule.AND_E: self.and_e,
            Rule.FUS_I: self.fus_i, Rule.FUS_E: self.fus_e, Rule.NEG_I: self.neg_i,
            Rule.NEG_E: self.neg_e, Rule.CUT: self.cut, Rule.E_B: self.e_b, Rule.E_C: self.e_c,
            Rule.E_W: self.e_w, Rule.E_K: self.e_k, Rule.NEG_I2: self.neg_i2,
            Rule.S_B: self.s_b, Rule.S_C: self.s_c, Rule.S_W: self.s_w,
        }
        return table[rule](t, budget)


def gen_derivation(cfg: GenConfig) -> ProofTree:
    """A random valid derivation in ``cfg.system`` with at most ``max_rule_nodes`` rule nodes.

    Grows one tree from an identity (or, with ``open_leaves``, from an
    open leaf), applying randomly chosen rules around it.
    """
    rng = random.Random(cfg.seed)
    system = get_system(cfg.system)
    rules = sorted((r for r in system.rules if r is not Rule.ID), key=lambda r: r.value)
    builder = _Builder(rng, cfg)
    if cfg.open_leaves and rng.random() < 0.5:
        tree = ProofTree(gen_consecution(rng, 1, cfg.atom_pool))
    else:
        tree = id_tree(builder.formula())
    for _ in range(6 * cfg.max_rule_nodes):
        budget = cfg.max_rule_nodes - tree.size()
        if budget <= 0 or (tree.size() > 1 and rng.random() < 0.05):
            break
        rule = rng.choice(rules)
        cand = builder.apply(rule, tree, budget)
        if cand is None or cand.size() > cfg.max_rule_nodes:
            continue
        if leaf_count(cand.conclusion.antecedent) > cfg.max_leaves:
            continue
        tree = cand
    if tree.rule is None:
        tree = builder.or_i(tree, 1, Rule.OR_I1)
    return tree


# ---------------------------------------------------------- substitutions

def _companion_parts(companion) -> list:
    """Bunches and formulas whose annotations seed a random table."""
    if companion is None:
        return []
    if isinstance(companion, ProofTree):
        companion = [node.conclusion for _, node in iter_tree(companion)]
    elif not isinstance(companion, (list, tuple)):
        companion = [companion]
    parts = []
    for c in companion:
        parts.extend((c.antecedent, c.succedent) if isinstance(c, Consecution) else (c,))
    return parts


def gen_substitution(cfg: GenConfig, mode: Literal["depth", "rseq"], companion=None, *,
                     injective: bool = False, empty: bool = False, rng: random.Random | None = None):
    """Random table substitution keyed mostly on annotations occurring in ``companion``."""
    if empty:
        return DepthSubstitution() if mode == "depth" else TableRseqSubstitution()
    parts = _companion_parts(companion)
    if injective:
        return fresh_injective(mode, parts)
    rng = rng or random.Random(cfg.seed)
    annotate = depth_annotations if mode == "depth" else rseq_annotations
    keys = set()
    for part in parts:
        for entry in annotate(part):
            node = entry.node.formula if isinstance(entry.node, Leaf) else entry.node
            if isinstance(node, Atom):
                keys.add((entry.annotation, node))
    ordered = sorted(keys, key=lambda k: (str(k[0]), k[1].name))
    chosen = [k for k in ordered if rng.random() < 0.5]
    for _ in range(rng.randint(0, 3)):
        ann = rng.randint(-4, 4) if mode == "depth" else gen_reduced_seq(rng, 4)
        chosen.append((ann, Atom.p(rng.randint(1, cfg.atom_pool))))
    table = {k: gen_formula(rng, 1, cfg.atom_pool + 2) for k in chosen}
    return DepthSubstitution(table) if mode == "depth" else TableRseqSubstitution(table)


# ------------------------------------------------------ counterexamples

def documented_counterexample() -> tuple[ProofTree, TableRseqSubstitution, str]:
    """``(p1 -> p1);p1 |- p1`` by implication elimination, moved to sequence ``l``.

    The left premise lands at ``l P`` while the conclusion's conditional
    sits at ``P l``; giving those two different images breaks the rule.
    """
    p, q, r = Atom.p(1), Atom.p(2), Atom.p(3)
    t = ProofTree(Consecution(Semi(Leaf(Imp(p, p)), Leaf(p)), p), Rule.IMP_E,
                  (id_tree(Imp(p, p)), id_tree(p)))
    sigma = TableRseqSubstitution({("lP", p): q, ("Pl", p): r})
    return t, sigma, "l"


def _is_counterexample(t, sigma, x) -> bool:
    if not x or not check(t, SYSTEM_B).valid:
        return False
    return not check(apply_rseq_to_tree(sigma, x, t), SYSTEM_B).valid


def find_strong_rseq_counterexample(budget: int, seed: int = 0):
    """First (tree, substitution, sequence) whose image at a nonempty sequence fails to check.

    Tries the documented implication-elimination witness, then seeded
    random candidates; each candidate costs one unit of ``budget``.
    """
    if budget <= 0:
        return None
    cand = documented_counterexample()
    if _is_counterexample(*cand):
        return cand
    rng = random.Random(seed)
    for _ in range(budget - 1):
        cfg = GenConfig(seed=rng.getrandbits(32), max_rule_nodes=rng.randint(2, 6))
        t = gen_derivation(cfg)
        sigma = gen_substitution(cfg, "rseq", t, rng=rng)
        x = ""
        while not x:
            x = gen_reduced_seq(rng, 2)
        if _is_counterexample(t, sigma, x):
            return t, sigma, x
    return None


# --------------------------------------------------------------- oracles

@lru_cache(maxsize=None)
def all_seqs(max_len: int) -> tuple[str, ...]:
    """Every sequence of length at most ``max_len``, shortest first."""
    out = []
    for k in range(max_len + 1):
        out.extend("".join(p) for p in itertools.product(LETTERS, repeat=k))
    return tuple(out)


@lru_cache(maxsize=None)
def reduced_seqs(max_len: int) -> tuple[str, ...]:
    return tuple(s for s in all_seqs(max_len) if is_reduced(s))


@lru_cache(maxsize=None)
def _prefix_table(w: str, max_len: int) -> dict[str, tuple[str, ...]]:
    table: dict[str, list[str]] = {}
    for z in all_seqs(max_len):
        table.setdefault(red(z + w), []).append(z)
    return {k: tuple(v) for k, v in table.items()}


def oracle_prefix_solutions(x: str, w: str, max_len: int = 4) -> tuple[str, ...]:
    """All ``z`` up to ``max_len`` letters with ``red(z + w) == x``, by enumeration."""
    return _prefix_table(w, max_len).get(x, ())
