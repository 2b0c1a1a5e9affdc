from math import gcd

import pytest
from hypothesis import given

from heckoid.errors import NotDecomposable
from heckoid.farey import Slope
from heckoid.words import (CyclicWord, check_small_cancellation, critical_subwords, cyclic_reduce,
                           epsilon_sequence, exponent_sum, free_reduce, inverse, is_cyclically_reduced,
                           min_piece_count, pieces, pretty, relator_presentation,
                           required_subword_check, symmetrized_set, u_word)

from conftest import unit_slopes


@pytest.mark.parametrize("r, w", [("1/2", "abAB"), ("1/3", "abaBAB"), ("2/5", "abaBAbabAB")])
def test_u_examples(r, w):
    assert u_word(r) == w


def test_epsilon():
    assert epsilon_sequence(2, 5) == [1, 1, -1, -1]
    with pytest.raises(ValueError):
        epsilon_sequence(2, 4)


def test_relator():
    gens, rel = relator_presentation("2/9", 2)
    assert gens == ("a", "b") and len(rel) == 36
    with pytest.raises(ValueError):
        relator_presentation("2/9", 1)
    with pytest.raises(ValueError):
        u_word("3/2")


def test_free_group_basics():
    assert free_reduce("abBA") == ""
    assert cyclic_reduce("AbaBa") == "a"
    assert inverse("abB") == "bBA"
    assert pretty("aB") == "a b⁻¹"
    assert exponent_sum("abAAb", "a") == -1
    with pytest.raises(ValueError):
        free_reduce("ax")


def test_cyclic_word():
    c = CyclicWord("bAba")
    assert c == CyclicWord("abAb") and c.contains("bab") and not c.contains("aa")
    with pytest.raises(ValueError):
        CyclicWord("abA")


def test_symmetrized_set_and_pieces():
    R = symmetrized_set("abAB")
    assert len(R) == 8 and R.is_closed()
    assert max(len(x) for x in pieces(R)) == 1
    assert set(symmetrized_set("ab")) == {"ab", "ba", "BA", "AB"}


def test_min_piece_count():
    P = {"a", "b", "ab"}
    assert min_piece_count("ab", P) == 1
    assert min_piece_count("aab", P) == 2
    with pytest.raises(NotDecomposable):
        min_piece_count("aB", P)


@pytest.mark.parametrize("n", [2, 3])
def test_small_cancellation_grid(n):
    for p in range(3, 13):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            rep = check_small_cancellation(f"{q}/{p}", n)
            assert rep.c_holds and rep.t4_holds, (q, p, n)
            assert rep.relator_length == 2 * p * n


def test_report_dict():
    d = check_small_cancellation("3/10", 2).to_dict()
    assert d["C"] == "holds" and d["T4"] == "holds" and d["max_piece_len"] == 9
    assert sum(d["histogram"].values()) == d["piece_count"]


def test_critical_subwords_need_4n_minus_1_pieces():
    R = symmetrized_set(relator_presentation("2/9", 2)[1])
    P = pieces(R)
    crit = critical_subwords("2/9", 2)
    assert crit
    for w in crit:
        assert min_piece_count(w, P) == 7


def test_required_subword():
    crit = critical_subwords("2/9", 2)
    for s in ("71/324", "73/324"):
        assert required_subword_check(s, "2/9", 2, crit)
    for s in ("251/324", "253/324"):
        assert not required_subword_check(s, "2/9", 2, crit)
        assert required_subword_check(1 - Slope.parse(s), "2/9", 2, crit)
    # u_r itself holds only one copy of (u_r^n) worth of pieces
    assert not required_subword_check("2/9", "2/9", 2, crit)


@given(unit_slopes(max_den=60))
def test_u_word_shape(r):
    w = u_word(r)
    assert len(w) == 2 * r.den
    assert is_cyclically_reduced(w)
    ea, eb = exponent_sum(w, "a"), exponent_sum(w, "b")
    assert ea + eb == 0 or ea - eb == 0  # abelianization is Z (knot) or Z^2 (link)
    if r.den % 2 == 0:
        assert exponent_sum(w, "a") == 0
    assert w[1::2].lower() == "b" * r.den and w[::2].lower() == "a" * r.den
