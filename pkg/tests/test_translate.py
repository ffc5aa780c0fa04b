from hypothesis import given

from hyperformal.syntax import Atom, Comma, Leaf, Semi, parse_formula, vars_of
from hyperformal.translate import cf, fusion_free, tau
from strategies import bunches, formulas, fusion_free_formulas

A, B = Atom("A"), Atom("B")


def test_cf():
    assert cf(Comma(Leaf(A), Leaf(B))) == parse_formula("A & B")
    assert cf(Semi(Leaf(A), Leaf(B))) == parse_formula("A * B")
    assert cf(Leaf(A)) == A


def test_tau():
    assert tau(parse_formula("A * B")) == parse_formula("~(A -> ~B)")
    assert tau(Atom.p(1)) == Atom.p(1)
    assert tau(Semi(Leaf(Atom("p")), Leaf(Atom("q")))) == parse_formula("~(p -> ~q)")
    assert tau(parse_formula("(A * B) * A")) == parse_formula("~(~(A -> ~B) -> ~A)")


@given(bunches)
def test_tau_on_bunches(b):
    image = tau(b)
    assert vars_of(image) == vars_of(b)
    assert fusion_free(image)


@given(fusion_free_formulas)
def test_tau_fixes_fusion_free(a):
    assert tau(a) == a


@given(formulas)
def test_tau_idempotent(a):
    assert tau(tau(a)) == tau(a)
