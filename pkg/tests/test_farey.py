from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from heckoid.farey import (INF, IDENTITY, MobiusMap, PositiveCF, SignedCF, Slope,
                           are_farey_neighbors, enumerate_slopes, eval_cf, farey_neighbor,
                           farey_neighbors, frame_matrix, mobius_apply, to_positive_cf)

from conftest import slopes, unit_slopes


class TestSlope:
    def test_normalizes(self):
        assert Slope(4, 6) == Slope(2, 3)
        assert Slope(3, -4) == Slope(-3, 4)
        assert Slope(-5, 0) == INF and INF.num == 1

    def test_parse_and_str(self):
        assert Slope.parse("2/9") == Slope(2, 9)
        assert Slope.parse("inf") == INF == Slope.parse("1/0")
        assert Slope.parse("3") == Slope(3, 1)
        assert str(Slope(-7, 31)) == "-7/31"

    def test_zero_over_zero(self):
        with pytest.raises(ValueError):
            Slope(0, 0)

    def test_ordering_puts_infinity_last(self):
        assert sorted([INF, Slope(1, 2), Slope(-3, 1)]) == [Slope(-3, 1), Slope(1, 2), INF]

    def test_integer_shifts(self):
        assert Slope(1, 3) + 1 == Slope(4, 3)
        assert 2 - Slope(1, 3) == Slope(5, 3)
        assert INF + 5 == INF


class TestContinuedFractions:
    @pytest.mark.parametrize("entries, value", [
        ((4, 2), "2/9"), ((3, 3), "3/10"), ((2,), "1/2"), ((1, 2), "2/3"),
    ])
    def test_eval(self, entries, value):
        assert eval_cf(entries) == Slope.parse(value)
        assert to_positive_cf(value).entries == entries

    def test_zero_entries_are_legal(self):
        # [x, 0, y] merges to [x + y]
        assert eval_cf((1, 0, 2)) == eval_cf((3,))
        assert eval_cf((0,)) == INF

    def test_offset(self):
        assert eval_cf(SignedCF(2, (4, 2))) == Slope(20, 9)
        assert eval_cf((), offset=-3) == Slope(-3, 1)

    def test_signed_cf_json(self):
        cf = SignedCF(-1, (1, 0, -3))
        assert SignedCF.from_json(cf.to_json()) == cf

    def test_positive_cf_rejects_trailing_one(self):
        with pytest.raises(ValueError):
            PositiveCF((2, 1))

    def test_rejects_outside_unit_interval(self):
        for s in ("0", "1", "3/2", "-1/3", "inf"):
            with pytest.raises(ValueError):
                to_positive_cf(s)

    @given(unit_slopes(max_den=500))
    def test_round_trip(self, s):
        cf = to_positive_cf(s)
        assert cf.entries[-1] >= 2
        assert eval_cf(cf.entries) == s

    @given(st.lists(st.integers(1, 9), min_size=1, max_size=8))
    def test_normalizes_any_positive_cf(self, entries):
        s = eval_cf(entries)
        if 0 < s.num < s.den:
            assert eval_cf(to_positive_cf(s).entries) == s


class TestNeighbors:
    def test_canonical_indexing(self):
        assert farey_neighbors("3/10", [0, 1]) == [Slope(1, 3), Slope(4, 13)]
        assert farey_neighbor("2/9", -1) == Slope(1, 5)
        assert farey_neighbor("2/9", 3) == Slope(7, 31)
        # for 1/2 the parent 0/1 sits at k = -1 (1/1 at k = 0)
        assert farey_neighbors("1/2", [-1, 0]) == [Slope(0, 1), Slope(1, 1)]

    def test_rejects_infinity(self):
        with pytest.raises(ValueError):
            farey_neighbor(INF, 0)

    @given(unit_slopes(max_den=200), st.integers(-20, 20))
    def test_neighbor_properties(self, r, k):
        u, v = farey_neighbor(r, k), farey_neighbor(r, k + 1)
        assert are_farey_neighbors(u, r) and are_farey_neighbors(v, r)
        assert are_farey_neighbors(u, v)
        # u_k < r for k < 0 and u_k > r for k >= 0
        assert (u < r) == (k < 0)

    @given(unit_slopes(max_den=200))
    def test_neighbors_converge(self, r):
        far = [abs(float(farey_neighbor(r, k)) - float(r)) for k in (1, 10, 100)]
        assert far[0] > far[1] > far[2]

    def test_frame_matrix(self):
        F = frame_matrix("3/10")
        assert F(INF) == Slope(3, 10)
        assert [F(k) for k in range(3)] == farey_neighbors("3/10", range(3))


class TestMobius:
    def test_examples(self):
        assert mobius_apply(IDENTITY, "5/7") == Slope(5, 7)
        assert mobius_apply(MobiusMap(1, 0, 3, 1), INF) == Slope(1, 3)
        assert mobius_apply(MobiusMap(1, 2, 0, 1), INF) == INF

    def test_determinant_enforced(self):
        with pytest.raises(ValueError):
            MobiusMap(2, 0, 0, 1)

    def test_projective_equality(self):
        M = MobiusMap(2, 1, 1, 1)
        assert M == -M and hash(M) == hash(-M)

    @given(st.lists(st.sampled_from([MobiusMap(1, 1, 0, 1), MobiusMap(1, 0, 1, 1), MobiusMap(-1, 0, 0, 1),
                                     MobiusMap(0, 1, 1, 0)]), min_size=2, max_size=6),
           slopes())
    def test_composition(self, mats, s):
        M = IDENTITY
        for X in mats:
            M = M @ X
        assert abs(M.det) == 1
        expected = s
        for X in reversed(mats):
            expected = X(expected)
        assert M(s) == expected == (-M)(s)

    @given(st.integers(-6, 6))
    def test_power(self, k):
        M = MobiusMap(2, 1, 1, 1)
        assert M ** k @ M ** (-k) == IDENTITY


def _brute(lo, hi, max_den):
    lo, hi = Fraction(lo), Fraction(hi)
    out = {Fraction(q, p) for p in range(1, max_den + 1)
           for q in range(int(lo * p) - 1, int(hi * p) + 2) if gcd(q, p) == 1}
    return [Slope(f.numerator, f.denominator) for f in sorted(x for x in out if lo <= x <= hi)]


class TestEnumerate:
    def test_examples(self):
        assert enumerate_slopes(0, 1, 3) == [Slope(*t) for t in [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)]]
        assert enumerate_slopes("1/3", "1/2", 5) == [Slope(1, 3), Slope(2, 5), Slope(1, 2)]
        assert enumerate_slopes(0, "1/7", 5) == [Slope(0, 1)]

    def test_empty(self):
        assert enumerate_slopes("1/2", "1/3", 10) == []
        assert enumerate_slopes("1/3", "1/2", 0) == []

    @given(slopes(max_den=20, span=2), slopes(max_den=20, span=2), st.integers(1, 50))
    def test_matches_brute_force(self, a, b, max_den):
        lo, hi = min(a, b), max(a, b)
        assert enumerate_slopes(lo, hi, max_den) == _brute(lo.fraction(), hi.fraction(), max_den)
