import pytest
from hypothesis import given, settings, strategies as st

from hyperformal.deriv import (
    SYSTEM_B, SYSTEM_R, DerivationSyntaxError, InvalidTreeError, ProofTree, Rule,
    UnresolvableHoleError, UnsupportedRuleError, apply_depth_to_tree, apply_rseq_to_tree, check,
    extract_derived_rule, find_hole, format_tree, get_system, id_tree, open_leaves, parse_tree,
)
from hyperformal.harness import GenConfig, gen_derivation, gen_substitution
from hyperformal.selftest import load_fixture
from hyperformal.subst import DepthSubstitution, TableRseqSubstitution, apply_depth, apply_rseq
from hyperformal.syntax import Atom, Consecution, parse_consecution, parse_formula


def O(text):
    return ProofTree(parse_consecution(text))


def N(rule, concl, *premises, hole=None):
    return ProofTree(parse_consecution(concl), Rule.from_token(rule), tuple(premises), hole)


# one valid instance per rule, premises as open leaves
INSTANCES = {
    "impI": N("impI", "X |- A -> B", O("X ; A |- B")),
    "impE": N("impE", "X ; Y |- B", O("X |- A -> B"), O("Y |- A")),
    "orI1": N("orI1", "X |- A | B", O("X |- A")),
    "orI2": N("orI2", "X |- A | B", O("X |- B")),
    "orE": N("orE", "W , (X ; V) |- C", O("X |- A | B"), O("W , (A ; V) |- C"), O("W , (B ; V) |- C")),
    "andI": N("andI", "X , Y |- A & B", O("X |- A"), O("Y |- B")),
    "andE": N("andE", "W ; X |- C", O("X |- A & B"), O("W ; (A , B) |- C")),
    "fusI": N("fusI", "X ; Y |- A * B", O("X |- A"), O("Y |- B")),
    "fusE": N("fusE", "X , W |- C", O("X |- A * B"), O("(A ; B) , W |- C")),
    "negI": N("negI", "X |- ~A", O("X |- B"), O("A |- ~B")),
    "negE": N("negE", "X |- A", O("X |- ~~A")),
    "cut": N("cut", "W ; X |- B", O("X |- A"), O("W ; A |- B")),
    "eB": N("eB", "(X , Y) , Z |- A", O("X , (Y , Z) |- A")),
    "eC": N("eC", "Y , X |- A", O("X , Y |- A")),
    "eW": N("eW", "X |- A", O("X , X |- A")),
    "eK": N("eK", "X , Y |- A", O("X |- A")),
    "negI2": N("negI2", "X ; Y |- ~A", O("X ; A |- ~B"), O("Y |- B")),
    "sB": N("sB", "(X ; Y) ; Z |- A", O("X ; (Y ; Z) |- A")),
    "sC": N("sC", "Y ; X |- A", O("X ; Y |- A")),
    "sW": N("sW", "X |- A", O("X ; X |- A")),
}

R_ONLY = {"negI2", "sB", "sC", "sW"}


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_rule_instances(name):
    t = INSTANCES[name]
    assert check(t, SYSTEM_R).valid, check(t, SYSTEM_R).render()
    assert check(t, SYSTEM_B).valid is (name not in R_ONLY)


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_rule_instances_reject_wrong_conclusion(name):
    t = INSTANCES[name]
    bad = ProofTree(Consecution(t.conclusion.antecedent, parse_formula("Q")), t.rule, t.premises)
    report = check(bad, SYSTEM_R)
    assert not report.valid
    assert report.failures[0].path == ()


def test_structural_direction():
    weakening_backwards = N("eK", "X |- A", O("X , Y |- A"))
    assert not check(weakening_backwards, SYSTEM_B).valid
    assert check(weakening_backwards, get_system("B", structural_bidirectional=True)).valid


def test_structural_rules_in_context():
    t = N("eC", "W ; (Y , X) |- A", O("W ; (X , Y) |- A"))
    assert check(t, SYSTEM_B).valid
    assert find_hole(t) == (1,)


def test_r_without_plain_negation_introduction():
    strict = get_system("R", retain_neg_intro=False)
    assert Rule.NEG_I not in strict.rules
    assert not check(INSTANCES["negI"], strict).valid
    assert check(INSTANCES["negI2"], strict).valid


def test_fixture_trees():
    fus = parse_tree(load_fixture("fusI_example.deriv"))
    assert check(fus, SYSTEM_B).valid
    ore = check(parse_tree(load_fixture("orE_mislabeled.deriv")), SYSTEM_B)
    assert not ore.valid and ore.failures[0].path == () and ore.failures[0].kind == "malformed"
    bare = check(parse_tree(load_fixture("bare_consecution.deriv")), SYSTEM_B)
    assert not bare.valid and "no rule node" in bare.failures[0].reason
    assert check(id_tree(Atom("A")), SYSTEM_B).valid
    assert check(parse_tree(load_fixture("nested_impE.deriv")), SYSTEM_B).valid


@pytest.mark.parametrize("name, conclusion", [
    ("r_tau_to_fusion.deriv", "~(A -> ~B) |- A * B"),
    ("r_fusion_to_tau.deriv", "A * B |- ~(A -> ~B)"),
])
def test_r_derivations_of_the_fusion_translation(name, conclusion):
    t = parse_tree(load_fixture(name))
    assert t.conclusion == parse_consecution(conclusion)
    assert check(t, "R").valid
    assert not check(t, "B").valid
    assert open_leaves(t) == []


def test_check_reports_every_failure():
    t = N("orI1", "X |- C", N("impI", "X |- Q", O("X ; A |- B")))
    report = check(t, SYSTEM_B)
    assert [f.path for f in report.failures] == [(0,), ()]


def test_derived_rules():
    rule = extract_derived_rule(parse_tree(load_fixture("fusI_example.deriv")))
    assert rule.premises == {parse_consecution("A |- B"), parse_consecution("C |- D")}
    assert rule.conclusion == parse_consecution("A ; C |- B * D")
    closed = N("orI1", "A |- A | B", id_tree(Atom("A")))
    assert extract_derived_rule(closed).premises == frozenset()
    with pytest.raises(InvalidTreeError):
        extract_derived_rule(parse_tree(load_fixture("orE_mislabeled.deriv")))


def test_depth_action_example():
    t = parse_tree('(rule impE (id "p -> q") (id "p") (concl "(p -> q) ; p |- q"))')
    d = DepthSubstitution({(0, Atom("p")): Atom("s")})
    image = apply_depth_to_tree(d, 0, t)
    assert format_tree(image) == format_tree(parse_tree(
        '(rule impE (id "s -> q") (id "s") (concl "(s -> q) ; s |- q"))'))
    assert check(image, SYSTEM_B).valid
    assert apply_depth_to_tree(DepthSubstitution({(0, Atom("z")): Atom("s")}), 5, t) == t


def test_rseq_action_examples():
    t = parse_tree(load_fixture("modus_ponens_p.deriv"))
    p, q = Atom.p(1), Atom.p(2)
    image = apply_rseq_to_tree(TableRseqSubstitution({("", p): q, ("P", p): p}), "", t)
    assert image.conclusion == parse_consecution("(p1 -> p2) ; p1 |- p2")
    assert image.premises[0].conclusion == parse_consecution("p1 -> p2 |- p1 -> p2")
    assert check(image, SYSTEM_B).valid
    bad = apply_rseq_to_tree(TableRseqSubstitution({("lP", p): q, ("Pl", p): Atom.p(3)}), "l", t)
    report = check(bad, SYSTEM_B)
    assert not report.valid and report.failures[0].path == ()


def test_actions_reject_r_rules():
    t = parse_tree(load_fixture("r_fusion_to_tau.deriv"))
    with pytest.raises(UnsupportedRuleError):
        apply_depth_to_tree(DepthSubstitution(), 0, t)
    with pytest.raises(UnsupportedRuleError):
        apply_rseq_to_tree(TableRseqSubstitution(), "", t)


def test_unresolvable_hole():
    t = N("cut", "W ; X |- B", O("X |- A"), O("W ; C |- B"))
    with pytest.raises(UnresolvableHoleError):
        apply_depth_to_tree(DepthSubstitution(), 0, t)


def test_sexpr_roundtrip_and_errors():
    for name in ("fusI_example.deriv", "r_tau_to_fusion.deriv", "nested_impE.deriv"):
        t = parse_tree(load_fixture(name))
        assert parse_tree(format_tree(t)) == t
    for text in ['(rule impE (id "p"))', '(id "p"', '(foo "p")', '(rule nope (concl "p |- p"))',
                 '(id "p") (id "q")', '(rule impI (concl "p |- p") (id "p"))']:
        with pytest.raises(DerivationSyntaxError):
            parse_tree(text)


# property checks over generated trees

seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from(["B", "R"]))
def test_generated_trees_are_valid(seed, system):
    t = gen_derivation(GenConfig(seed=seed, system=system))
    assert check(t, system).valid
    assert parse_tree(format_tree(t)) == t


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(-3, 3))
def test_derived_rule_closure_depth(seed, n):
    cfg = GenConfig(seed=seed, open_leaves=True, max_rule_nodes=6)
    t = gen_derivation(cfg)
    d = gen_substitution(cfg, "depth", t)
    record = []
    image = apply_depth_to_tree(d, n, t, record)
    rule = extract_derived_rule(image)
    assert rule.premises == {apply_depth(d, m, leaf) for leaf, m in record}
    assert rule.conclusion == apply_depth(d, n, t.conclusion)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_derived_rule_closure_rseq(seed):
    cfg = GenConfig(seed=seed, open_leaves=True, max_rule_nodes=6)
    t = gen_derivation(cfg)
    s = gen_substitution(cfg, "rseq", t)
    record = []
    image = apply_rseq_to_tree(s, "", t, record)
    rule = extract_derived_rule(image)
    assert rule.premises == {apply_rseq(si, "", leaf) for leaf, si in record}
    assert rule.conclusion == apply_rseq(s, "", t.conclusion)
