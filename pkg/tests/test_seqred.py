import itertools

import pytest
from hypothesis import given

from hyperformal.seqred import (
    LETTERS, SeqError, format_seq, is_reduced, oracle_red_all_orders, parse_seq, red,
    red_concat, reduce_once, solve_prefix, to_greek,
)
from strategies import reduced_seqs, seqs


@pytest.mark.parametrize("s, expected", [("lr", True), ("lL", False), ("", True), ("nn", False), ("Pl", True)])
def test_is_reduced(s, expected):
    assert is_reduced(s) is expected


@pytest.mark.parametrize("s, expected", [
    ("rL", {""}),
    ("lLr", {"Pr", "l"}),
    ("lr", set()),
    ("nnn", {"n"}),
])
def test_reduce_once(s, expected):
    assert reduce_once(s) == expected


@pytest.mark.parametrize("s, expected", [("lL", "P"), ("Pr", "l"), ("nn", ""), ("lLr", "l"), ("PPrr", "Plr"), ("", "")])
def test_red(s, expected):
    assert red(s) == expected


@pytest.mark.parametrize("a, b, expected", [("l", "L", "P"), ("r", "L", ""), ("lr", "", "lr")])
def test_red_concat(a, b, expected):
    assert red_concat(a, b) == expected


@pytest.mark.parametrize("s, expected", [("lLr", {"l"}), ("nnn", {"n"}), ("P", {"P"})])
def test_oracle(s, expected):
    assert oracle_red_all_orders(s) == expected


def test_oracle_limit():
    with pytest.raises(SeqError):
        oracle_red_all_orders("n" * 11)


def test_literals():
    assert parse_seq("e") == ""
    assert parse_seq("lLP") == "lLP"
    assert format_seq("") == "e"
    assert to_greek("lLPrn") == "lλρrn"
    with pytest.raises(SeqError):
        parse_seq("lx")


def test_one_step_diamond_exhaustive():
    for k in range(8):
        for letters in itertools.product(LETTERS, repeat=k):
            s = "".join(letters)
            succ = sorted(reduce_once(s))
            for t1, t2 in itertools.combinations(succ, 2):
                assert (reduce_once(t1) | {t1}) & (reduce_once(t2) | {t2}), s


@given(seqs)
def test_red_is_reduced_and_idempotent(s):
    r = red(s)
    assert is_reduced(r)
    assert red(r) == r


@given(seqs, seqs)
def test_concatenation_law(z, w):
    assert red(z + w) == red_concat(red(z), red(w))


@given(st_z=seqs, w=reduced_seqs)
def test_solve_prefix_inverts(st_z, w):
    x = red(st_z + w)
    z = solve_prefix(x, w)
    assert z is not None and is_reduced(z)
    assert red(z + w) == x
    assert z == red(st_z)


def test_solve_prefix_no_solution():
    assert solve_prefix("", "n") == "n"
    assert solve_prefix("l", "L") == "lr"
    # nothing consumes a rho from its left, so red(z + "P") always ends in P
    assert solve_prefix("l", "P") is None
    assert solve_prefix("", "P") is None
