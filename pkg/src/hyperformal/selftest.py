"""The acceptance suite: eleven checks, each runnable on its own.

Every runner returns a :class:`CriterionResult`; :func:`run_all` runs the
lot and :func:`format_table` prints one line per check.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable

from . import harness
from .annotate import hole_info, rseq_annotations, sharing_report
from .deriv import (
    SYSTEM_B, ProofTree, apply_depth_to_tree, apply_rseq_to_tree, check, format_tree,
    get_system, iter_tree, parse_tree,
)
from .harness import GenConfig, gen_bunch, gen_consecution, gen_derivation, gen_formula
from .seqred import LETTERS, oracle_red_all_orders, red, red_concat, solve_prefix
from .subst import (
    TableRseqSubstitution, apply_depth, apply_rseq, shift_depth, shift_rseq,
)
from .syntax import (
    Atom, Consecution, Leaf, bunch_paths, parse_any, parse_bunch,
    parse_consecution, render, replace_at, subterm_at, vars_of,
)
from .translate import fusion_free, tau

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_all", "format_table",
           "corpus", "load_fixture"]

CORPUS_SIZE = 1000
SUBS_PER_TREE = 20


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:>2}. {self.title}: {self.detail} ({self.seconds:.2f}s)"


def load_fixture(name: str) -> str:
    return resources.files("hyperformal.fixtures").joinpath(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def corpus(size: int = CORPUS_SIZE) -> tuple[ProofTree, ...]:
    """Valid closed B-derivations with at most eight rule nodes, seeds 0..size-1."""
    return tuple(gen_derivation(GenConfig(seed=i, max_rule_nodes=8)) for i in range(size))


def _rand_seq(rng: random.Random, max_len: int) -> str:
    return "".join(rng.choice(LETTERS) for _ in range(rng.randint(0, max_len)))


# ---------------------------------------------------------------- runners

def crit_confluence() -> tuple[bool, str]:
    count = bad = 0
    for k in range(8):
        for s in harness.all_seqs(k)[len(harness.all_seqs(k - 1)) if k else 0:]:
            count += 1
            if oracle_red_all_orders(s, limit=7) != {red(s)}:
                bad += 1
    return bad == 0, f"{count} sequences, {bad} failures"


def crit_cancellation() -> tuple[bool, str]:
    xs = harness.reduced_seqs(4)
    bad = 0
    ws = harness.reduced_seqs(3)
    for w in ws:
        seen: dict[str, str] = {}
        for x in xs:
            image = red(x + w)
            if image in seen:
                bad += 1
            seen[image] = x
    return bad == 0, f"{len(xs)}^2 pairs x {len(ws)} suffixes, {bad} collisions"


def crit_corollaries(n: int = 10_000) -> tuple[bool, str]:
    rng = random.Random(3)
    bad_concat = 0
    for _ in range(n):
        z, w = _rand_seq(rng, 7), _rand_seq(rng, 7)
        if red(z + w) != red_concat(red(z), red(w)):
            bad_concat += 1
    bad_repl = 0
    for _ in range(n):
        w = _rand_seq(rng, 3)
        z1 = _rand_seq(rng, 4)
        target = red(z1 + w)
        z2 = _rand_seq(rng, 4)
        if red(z2 + w) != target:
            # a second solution: the solver's, behind a pair that cancels
            found = solve_prefix(target, w)
            pad = rng.choice(["", "nn", "rL", "Lr"])
            z2 = pad + found if found is not None else z1
        for _ in range(3):
            y = _rand_seq(rng, 5)
            if red(z1 + y) != red(z2 + y):
                bad_repl += 1
    return (bad_concat == 0 and bad_repl == 0,
            f"concatenation {n} ({bad_concat} failures), replacement {n} ({bad_repl} failures)")


def crit_depth_invariance() -> tuple[bool, str]:
    trees = corpus()
    rng = random.Random(4)
    checked = bad = 0
    for i, t in enumerate(trees):
        cfg = GenConfig(seed=i)
        subs = [harness.gen_substitution(cfg, "depth", t, rng=rng) for _ in range(SUBS_PER_TREE - 1)]
        subs.append(harness.gen_substitution(cfg, "depth", t, injective=True))
        root = t.conclusion
        for d in subs:
            for n in range(-3, 4):
                image = apply_depth_to_tree(d, n, t)
                checked += 1
                want = Consecution(apply_depth(d, n, root.antecedent), apply_depth(d, n, root.succedent))
                if image.conclusion != want or not check(image, SYSTEM_B).valid:
                    bad += 1
    return bad == 0, f"{len(trees)} trees, {checked} images, {bad} invalid"


def crit_rseq_weak_invariance() -> tuple[bool, str]:
    trees = corpus()
    rng = random.Random(5)
    checked = bad = 0
    for i, t in enumerate(trees):
        cfg = GenConfig(seed=i)
        subs = [harness.gen_substitution(cfg, "rseq", t, rng=rng) for _ in range(SUBS_PER_TREE - 1)]
        subs.append(harness.gen_substitution(cfg, "rseq", t, injective=True))
        root = t.conclusion
        for s in subs:
            image = apply_rseq_to_tree(s, "", t)
            checked += 1
            want = Consecution(apply_rseq(s, "", root.antecedent), apply_rseq(s, "", root.succedent))
            if image.conclusion != want or not check(image, SYSTEM_B).valid:
                bad += 1
    return bad == 0, f"{len(trees)} trees, {checked} images at the empty sequence, {bad} invalid"


def crit_strong_rseq_fails() -> tuple[bool, str]:
    start = time.perf_counter()
    found = harness.find_strong_rseq_counterexample(1)
    elapsed = time.perf_counter() - start
    if found is None:
        return False, "no counterexample found"
    t, sigma, x = found
    source_ok = check(t, SYSTEM_B).valid
    image_ok = check(apply_rseq_to_tree(sigma, x, t), SYSTEM_B).valid
    ok = source_ok and not image_ok and x != "" and elapsed < 1.0
    return ok, (f"source valid={source_ok}, image valid={image_ok}, x={x!r}, "
                f"found in {elapsed * 1000:.1f} ms")


def crit_sharing() -> tuple[bool, str]:
    seen: set[Consecution] = set()
    for t in corpus():
        for _, node in iter_tree(t):
            seen.add(node.conclusion)
    misses = {mode: 0 for mode in ("plain", "depth", "rseq")}
    for c in seen:
        for mode in misses:
            if sharing_report(c.antecedent, c.succedent, mode) is None:
                misses[mode] += 1
    ok = not any(misses.values())
    return ok, f"{len(seen)} provable consecutions, misses " + ", ".join(f"{k}={v}" for k, v in misses.items())


def _random_hole(rng: random.Random) -> tuple:
    y = gen_bunch(rng, rng.randint(0, 3), 4, 1)
    path = rng.choice(list(bunch_paths(y)))
    x = gen_bunch(rng, rng.randint(0, 2), 4, 1)
    return replace_at(y, path, x), path, x


def crit_lemmas(n: int = 10_000) -> tuple[bool, str]:
    rng = random.Random(8)
    cfg = GenConfig(seed=8)
    fails = {"depth shift": 0, "rseq shift": 0, "depth hole": 0, "rseq hole": 0, "well-defined": 0}
    for _ in range(n):
        b = gen_bunch(rng, rng.randint(0, 3), 4, 2)
        d = harness.gen_substitution(cfg, "depth", b, rng=rng)
        x, m = rng.randint(-3, 3), rng.randint(-3, 3)
        if apply_depth(shift_depth(d, x), m, b) != apply_depth(d, m + x, b):
            fails["depth shift"] += 1

        b = gen_bunch(rng, rng.randint(0, 3), 4, 2)
        s = harness.gen_substitution(cfg, "rseq", b, rng=rng)
        w, y, z = harness.gen_reduced_seq(rng, 3), harness.gen_reduced_seq(rng, 3), _rand_seq(rng, 4)
        if apply_rseq(shift_rseq(s, w, y), red(z + w), b) != apply_rseq(s, red(z + y), b):
            fails["rseq shift"] += 1

        whole, path, filler = _random_hole(rng)
        d = harness.gen_substitution(cfg, "depth", whole, rng=rng)
        info = hole_info(whole, path)
        m = rng.randint(-3, 3)
        if subterm_at(apply_depth(d, m, whole), path) != apply_depth(d, m + info.depth, filler):
            fails["depth hole"] += 1

        whole, path, filler = _random_hole(rng)
        s = harness.gen_substitution(cfg, "rseq", whole, rng=rng)
        info = hole_info(whole, path)
        w = harness.gen_reduced_seq(rng, 3)
        if subterm_at(apply_rseq(s, w, whole), path) != apply_rseq(s, red(info.seq + w), filler):
            fails["rseq hole"] += 1

        # all bounded solutions of red(z w) = x redirect to the same place,
        # and the algebraic solver agrees with the enumeration
        w, y = harness.gen_reduced_seq(rng, 3), harness.gen_reduced_seq(rng, 3)
        x = red(_rand_seq(rng, 4) + w) if rng.random() < 0.8 else harness.gen_reduced_seq(rng, 4)
        sols = harness.oracle_prefix_solutions(x, w, 4)
        targets = {red(z + y) for z in sols}
        mine = solve_prefix(x, w)
        p = Atom.p(1)
        looked = {s.lookup(t, p) for t in targets}
        if len(targets) > 1 or len(looked) > 1:
            fails["well-defined"] += 1
        elif sols and (mine is None or red(mine + y) not in targets):
            fails["well-defined"] += 1
        elif not sols and mine is not None and len(mine) <= 4:
            fails["well-defined"] += 1
    ok = not any(fails.values())
    return ok, f"{n} instances each, failures " + ", ".join(f"{k}={v}" for k, v in fails.items())


def crit_fixtures() -> tuple[bool, str]:
    results = {}
    # (a) depth of p in p;q
    results["a"] = hole_info(parse_bunch("p1 ; p2"), (0,)).depth == -1
    # (b) sequences in (A -> B);((C -> A);C)
    ann = rseq_annotations(parse_bunch("(A -> B) ; ((C -> A) ; C)"))
    seqs: dict[str, set[str]] = {}
    for e in ann:
        node = e.node.formula if isinstance(e.node, Leaf) else e.node
        if isinstance(node, Atom):
            seqs.setdefault(node.name, set()).add(e.annotation)
    results["b"] = seqs == {"A": {"P"}, "B": {""}, "C": {"PP"}}
    # (c) the modus ponens image
    t = parse_tree(load_fixture("modus_ponens_p.deriv"))
    p, q = Atom.p(1), Atom.p(2)
    sigma = TableRseqSubstitution({("P", p): p, ("", p): q})
    image = apply_rseq_to_tree(sigma, "", t)
    results["c"] = (image.conclusion == parse_consecution("(p1 -> p2) ; p1 |- p2")
                    and check(image, SYSTEM_B).valid)
    # (d) fusion introduction and its mislabeled twin
    results["d"] = (check(parse_tree(load_fixture("fusI_example.deriv")), SYSTEM_B).valid
                    and not check(parse_tree(load_fixture("orE_mislabeled.deriv")), SYSTEM_B).valid)
    # (e) the two R-derivations
    r = get_system("R")
    one = parse_tree(load_fixture("r_tau_to_fusion.deriv"))
    two = parse_tree(load_fixture("r_fusion_to_tau.deriv"))
    results["e"] = (check(one, r).valid and check(two, r).valid
                    and one.conclusion == parse_consecution("~(A -> ~B) |- A * B")
                    and two.conclusion == parse_consecution("A * B |- ~(A -> ~B)"))
    ok = all(results.values())
    return ok, " ".join(f"({k}) {'ok' if v else 'FAILED'}" for k, v in results.items())


def crit_translation(n: int = 10_000) -> tuple[bool, str]:
    rng = random.Random(10)
    bad_vars = bad_free = bad_idem = 0
    for _ in range(n):
        b = gen_bunch(rng, rng.randint(0, 3), 4, 3)
        image = tau(b)
        if vars_of(image) != vars_of(b):
            bad_vars += 1
        if not fusion_free(image):
            bad_free += 1
        if tau(image) != image:
            bad_idem += 1
        a = gen_formula(rng, 3, 4)
        if fusion_free(a) and tau(a) != a:
            bad_idem += 1
    ok = bad_vars == bad_free == bad_idem == 0
    return ok, f"{n} bunches: vars {bad_vars}, fusion {bad_free}, identity {bad_idem} failures"


def crit_roundtrip(n: int = 10_000) -> tuple[bool, str]:
    rng = random.Random(11)
    bad = 0
    for i in range(n):
        kind = i % 3
        if kind == 0:
            e = gen_formula(rng, rng.randint(0, 4), 6)
        elif kind == 1:
            e = gen_bunch(rng, rng.randint(0, 3), 6, 2)
        else:
            e = gen_consecution(rng, rng.randint(0, 3), 6)
        text = render(e)
        back = parse_any(text)
        if render(back) != text:
            bad += 1
        elif kind == 1 and parse_bunch(text) != e:
            bad += 1
        elif kind != 1 and back != e:
            bad += 1
    trees = corpus()[:200]
    for t in trees:
        text = format_tree(t)
        if format_tree(parse_tree(text)) != text or parse_tree(text) != t:
            bad += 1
    nondet = 0
    for seed in range(200):
        cfg = GenConfig(seed=seed, system="R" if seed % 2 else "B")
        if format_tree(gen_derivation(cfg)) != format_tree(gen_derivation(cfg)):
            nondet += 1
        a = harness.gen_substitution(cfg, "rseq", corpus()[seed])
        b = harness.gen_substitution(cfg, "rseq", corpus()[seed])
        if a != b:
            nondet += 1
        r1, r2 = random.Random(seed), random.Random(seed)
        if render(gen_consecution(r1, 3, 4)) != render(gen_consecution(r2, 3, 4)):
            nondet += 1
    ok = bad == 0 and nondet == 0
    return ok, f"{n} entities + {len(trees)} trees roundtrip ({bad} failures), determinism {nondet} failures"


CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str]]]] = {
    1: ("confluence, exhaustive to length 7", crit_confluence),
    2: ("cancellation, exhaustive", crit_cancellation),
    3: ("concatenation and replacement", crit_corollaries),
    4: ("strong depth invariance", crit_depth_invariance),
    5: ("weak rseq invariance", crit_rseq_weak_invariance),
    6: ("strong rseq invariance fails", crit_strong_rseq_fails),
    7: ("sharing on closed proofs", crit_sharing),
    8: ("shift and hole lemmas, well-definedness", crit_lemmas),
    9: ("worked fixtures", crit_fixtures),
    10: ("translation properties", crit_translation),
    11: ("roundtrip and determinism", crit_roundtrip),
}

# wall-clock ceilings for the suites that have one
TIME_LIMITS = {1: 60.0, 4: 300.0, 6: 1.0}


def run_criterion(number: int) -> CriterionResult:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    limit = TIME_LIMITS.get(number)
    if limit is not None and elapsed > limit:
        ok, detail = False, f"{detail}; over the {limit:.0f}s limit"
    return CriterionResult(number, title, ok, detail, elapsed)


def run_all(numbers=None) -> list[CriterionResult]:
    return [run_criterion(k) for k in (numbers or sorted(CRITERIA))]


def format_table(results: list[CriterionResult]) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
