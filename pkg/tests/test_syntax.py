import pytest
from hypothesis import given

from hyperformal.syntax import (
    And, Atom, Comma, Consecution, Fus, Imp, Leaf, Neg, Or, ParseError, PathError, Semi,
    atom_key, bunch_paths, format_path, iter_nodes, parse_any, parse_bunch, parse_consecution,
    parse_formula, parse_path, render, replace_at, subterm_at, vars_of,
)
from strategies import bunches, consecutions, formulas

p1, p2, p3 = Atom.p(1), Atom.p(2), Atom.p(3)


@pytest.mark.parametrize("text, expected", [
    ("p1 -> p2", Imp(p1, p2)),
    ("~(p1 & p2)", Neg(And(p1, p2))),
    ("~~p1", Neg(Neg(p1))),
    ("(p1 | p2) * p3", Fus(Or(p1, p2), p3)),
    ("A -> B", Imp(Atom("A"), Atom("B"))),
])
def test_parse_formula(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text", ["p1 ; p2", "p1 , p2", "p1 -> p2 -> p3", "(p1 & p2", "p1 &", "", "p1 )"])
def test_parse_formula_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_formula("p1 ; p2")
    assert info.value.position == 3


def test_parse_bunch_examples():
    assert parse_bunch("(p1 -> p2) ; ((p3 -> p1) ; p3)") == Semi(
        Leaf(Imp(p1, p2)), Semi(Leaf(Imp(p3, p1)), Leaf(p3)))
    assert parse_bunch("p1 , p2") == Comma(Leaf(p1), Leaf(p2))
    assert parse_bunch("p1") == Leaf(p1)


def test_parse_consecution_example():
    assert parse_consecution("(p1 -> p1) ; p1 |- p1") == Consecution(
        Semi(Leaf(Imp(p1, p1)), Leaf(p1)), p1)


def test_parse_any_picks_kind():
    assert isinstance(parse_any("p1 |- p1"), Consecution)
    assert isinstance(parse_any("p1 ; p2"), Semi)
    assert parse_any("p1 & p2") == And(p1, p2)


@pytest.mark.parametrize("entity, text", [
    (Imp(p1, p2), "p1 -> p2"),
    (Semi(Leaf(p1), Leaf(p2)), "p1 ; p2"),
    (Neg(Neg(p1)), "~~p1"),
    (Consecution(Comma(Leaf(p1), Semi(Leaf(p2), Leaf(p3))), Imp(p1, Fus(p2, p3))),
     "p1 , (p2 ; p3) |- p1 -> (p2 * p3)"),
])
def test_render(entity, text):
    assert render(entity) == text


def test_vars():
    assert vars_of(parse_bunch("(p1 -> p2) ; p1")) == {p1, p2}
    assert vars_of(parse_formula("p1")) == {p1}
    assert vars_of(Leaf(p1)) == {p1}
    assert vars_of(parse_formula("~(p1 -> ~p2)")) == {p1, p2}


def test_subterm_and_replace():
    b = Semi(Leaf(p1), Leaf(p2))
    assert subterm_at(b, (0,)) == Leaf(p1)
    assert render(replace_at(b, (1,), Comma(Leaf(p3), Leaf(p3)))) == "p1 ; (p3 , p3)"
    with pytest.raises(PathError):
        subterm_at(Leaf(p1), (0,))
    with pytest.raises(PathError):
        replace_at(Leaf(Imp(p1, p2)), (0,), Leaf(p3))


def test_paths_text():
    assert format_path(()) == "."
    assert format_path((0, 1)) == "0.1"
    assert parse_path(".") == ()
    assert parse_path("1.0") == (1, 0)


def test_atom_order_and_index():
    assert Atom("p12").index == 12
    assert Atom("A").index is None
    assert sorted([Atom("B"), Atom.p(10), Atom.p(2), Atom("A")], key=atom_key) == [
        Atom.p(2), Atom.p(10), Atom("A"), Atom("B")]


@given(formulas)
def test_formula_roundtrip(f):
    assert parse_formula(render(f)) == f


@given(bunches)
def test_bunch_roundtrip(b):
    assert parse_bunch(render(b)) == b


@given(consecutions)
def test_consecution_roundtrip(c):
    text = render(c)
    assert parse_consecution(text) == c
    assert render(parse_consecution(text)) == text


@given(bunches)
def test_replace_with_self_is_identity(b):
    for path in bunch_paths(b):
        assert replace_at(b, path, subterm_at(b, path)) == b


@given(bunches, bunches)
def test_vars_of_structural_connectives(x, y):
    assert vars_of(Comma(x, y)) == vars_of(Semi(x, y)) == vars_of(x) | vars_of(y)


@given(bunches)
def test_iter_nodes_paths_resolve(b):
    for path, node in iter_nodes(b):
        assert subterm_at(b, path) == node
