import pytest
from hypothesis import given, strategies as st

from hyperformal.harness import oracle_prefix_solutions
from hyperformal.seqred import red
from hyperformal.subst import (
    DepthSubstitution, ShiftedRseqSubstitution, SubstitutionFileError, TableRseqSubstitution,
    apply_depth, apply_rseq, format_substitution, fresh_injective, parse_substitution,
    shift_depth, shift_rseq, shift_rseq_composite,
)
from hyperformal.syntax import Atom, parse_bunch, parse_formula
from strategies import bunches, reduced_seqs, seqs

p, q, r = Atom("p"), Atom("q"), Atom("r")


def D(table):
    return DepthSubstitution(table)


def test_apply_depth_examples():
    d = D({(1, p): q})
    assert apply_depth(d, 0, parse_formula("p -> p")) == parse_formula("q -> q")
    assert apply_depth(d, 0, parse_formula("p & p")) == parse_formula("p & p")
    assert apply_depth(D({(-1, p): q}), 0, parse_bunch("p ; p")) == parse_bunch("q ; p")


def test_shift_depth_examples():
    d = D({(1, p): q})
    assert apply_depth(shift_depth(d, 1), 0, p) == q
    assert shift_depth(d, 0) == d
    back = shift_depth(shift_depth(d, 1), -1)
    for n in range(-3, 4):
        assert back(n, p) == d(n, p)


def test_apply_rseq_examples():
    s = TableRseqSubstitution({("P", p): p, ("", p): q})
    assert apply_rseq(s, "", parse_bunch("(p -> p) ; p")) == parse_bunch("(p -> q) ; p")
    assert apply_rseq(s, "", p) == q
    s = TableRseqSubstitution({("", p): q})
    assert apply_rseq(s, "", parse_formula("~~p")) == parse_formula("~~q")
    assert apply_rseq(s, "", parse_formula("p & p")) == parse_formula("q & q")


def test_table_keys_must_be_reduced():
    with pytest.raises(ValueError):
        TableRseqSubstitution({("nn", p): q})


def test_shift_rseq_examples():
    s = TableRseqSubstitution({("", p): q, ("l", p): r})
    assert shift_rseq(s, "", "L").lookup("r", p) == q  # red(r L) is empty
    assert shift_rseq(s, "L", "").lookup("P", p) == r  # l L reduces to P
    t = TableRseqSubstitution({("nP", p): q})
    assert shift_rseq(t, "L", "").lookup("nPL", p) == q  # lop off a terminal lambda
    # no z with red(z P) = l: fall back to the unshifted value
    assert shift_rseq(s, "P", "").lookup("l", p) == r


def test_shift_rseq_composite():
    s = TableRseqSubstitution({("", p): q})
    assert shift_rseq_composite(s, []) is s
    one = shift_rseq_composite(s, [("", "L")])
    assert isinstance(one, ShiftedRseqSubstitution) and one.lookup("r", p) == q
    both = shift_rseq_composite(s, [("", "L"), ("L", "")])
    assert both.lookup("", p) == q
    assert both.chain() == [("", "L"), ("L", "")]
    assert both.root() is s


def test_fresh_injective():
    d = fresh_injective("depth", [parse_bunch("p1 ; p1")])
    assert set(d.table) == {(-1, Atom.p(1)), (0, Atom.p(1))}
    assert len(set(d.table.values())) == 2
    assert all(v.index >= 2 for v in d.table.values())
    s = fresh_injective("rseq", [parse_formula("p1 -> p1")])
    assert set(s.table) == {("l", Atom.p(1)), ("r", Atom.p(1))}
    assert len(set(s.table.values())) == 2


def test_fresh_atoms_avoid_bare_leaves():
    s = fresh_injective("depth", [parse_bunch("p1 , p7")])
    assert not set(s.table.values()) & {Atom.p(1), Atom.p(7)}


def test_substitution_file_roundtrip():
    text = "# comment\nP p1 := p1\ne p1 := p2 -> p3\n"
    s = parse_substitution(text, "rseq")
    assert s.lookup("", Atom.p(1)) == parse_formula("p2 -> p3")
    assert parse_substitution(format_substitution(s), "rseq") == s
    d = parse_substitution("-1 p := q & q\n", "depth")
    assert d(-1, p) == parse_formula("q & q")
    assert parse_substitution(format_substitution(d), "depth") == d


@pytest.mark.parametrize("text, mode", [
    ("P p1 p2", "rseq"),
    ("nn p1 := p2", "rseq"),
    ("x p1 := p2", "depth"),
    ("P p1 & p2 := p3", "rseq"),
    ("e p1 := p2\ne p1 := p3", "rseq"),
    ("e p1 := (p2", "rseq"),
])
def test_substitution_file_errors(text, mode):
    with pytest.raises(SubstitutionFileError):
        parse_substitution(text, mode)


tables = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(1, 5).map(Atom.p)),
    st.integers(1, 9).map(Atom.p), max_size=6).map(DepthSubstitution)
rtables = st.dictionaries(
    st.tuples(reduced_seqs, st.integers(1, 5).map(Atom.p)),
    st.integers(1, 9).map(Atom.p), max_size=6).map(TableRseqSubstitution)


@given(bunches, st.integers(-3, 3))
def test_empty_tables_are_identity(b, n):
    assert apply_depth(DepthSubstitution(), n, b) == b
    assert apply_rseq(TableRseqSubstitution(), "", b) == b


@given(tables, st.integers(-3, 3), st.integers(-3, 3), bunches)
def test_depth_shift_law(d, x, n, b):
    assert apply_depth(shift_depth(d, x), n, b) == apply_depth(d, n + x, b)


@given(rtables, reduced_seqs, reduced_seqs, seqs, bunches)
def test_rseq_shift_law(s, w, y, z, b):
    assert apply_rseq(shift_rseq(s, w, y), red(z + w), b) == apply_rseq(s, red(z + y), b)


@given(reduced_seqs.filter(lambda x: len(x) <= 3), st.text("lrLPn", max_size=3), reduced_seqs)
def test_solver_agrees_with_enumeration(w, z, y):
    x = red(z + w)
    sols = oracle_prefix_solutions(x, w, 4)
    assert sols
    assert len({red(u + y) for u in sols}) == 1
    assert shift_rseq(TableRseqSubstitution(), w, y).redirect(x) == red(sols[0] + y)
