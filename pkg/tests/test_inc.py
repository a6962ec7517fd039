import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freeboolean import (
    ColorMap,
    NotIncError,
    Partition,
    enumerate_inc,
    enumerate_partitions,
    factorize,
    interval_below,
    is_inc,
    is_noncrossing,
    join,
    leq,
    meet,
    one,
    unfactorize,
    zero,
)

from helpers import catalan, inner_bruteforce

TEN = Partition([[1, 3, 4, 7], [2], [5, 6], [8, 9], [10]])
TEN_CHI = ColorMap.from_white(10, {1, 3, 7, 8, 9, 10})


def inc_oracle(chi: ColorMap) -> set[Partition]:
    """Filter all partitions by the literal definition."""
    white = set(chi.white_positions())
    return {p for p in enumerate_partitions(chi.n)
            if is_noncrossing(p) and not inner_bruteforce(p, white)}


colors = st.integers(1, 7).flatmap(lambda n: st.text("bw", min_size=n, max_size=n))


class TestIsInc:
    def test_examples(self):
        chi = ColorMap.from_white(5, {2, 5})
        assert not is_inc(Partition([[1, 3], [2], [4, 5]]), chi)
        assert is_inc(Partition([[1], [2, 3, 5], [4]]), chi)
        assert is_inc(TEN, TEN_CHI)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_black_is_noncrossing(self, n):
        chi = ColorMap("b" * n)
        for p in enumerate_partitions(n):
            assert is_inc(p, chi) == is_noncrossing(p)


class TestEnumerateInc:
    def test_examples(self):
        assert len(enumerate_inc(ColorMap("www"))) == 4
        assert len(enumerate_inc(ColorMap("bbbb"))) == 14
        assert len(enumerate_inc(ColorMap("bwbbb"))) == 28 == 2 * 14

    @pytest.mark.parametrize("n", range(1, 9))
    def test_reductions(self, n):
        assert len(enumerate_inc(ColorMap("w" * n))) == 2 ** (n - 1)
        assert len(enumerate_inc(ColorMap("b" * n))) == catalan(n)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_against_literal_filter_all_colorings(self, n):
        for c in itertools.product("bw", repeat=n):
            chi = ColorMap("".join(c))
            got = enumerate_inc(chi)
            assert len(got) == len(set(got))
            assert set(got) == inc_oracle(chi)

    def test_rgs_order_and_endpoint_insensitivity(self):
        got = enumerate_inc(ColorMap("bwbwb"))
        assert [p.rgs() for p in got] == sorted(p.rgs() for p in got)
        assert got == enumerate_inc(ColorMap("wwbww"))


class TestFactorization:
    def test_ten_point_example(self):
        f = factorize(TEN, TEN_CHI)
        want = [
            Partition([[1, 3], [2]]),
            Partition([[3, 4, 7], [5, 6]]),
            Partition([[7], [8]]),
            Partition([[8, 9]]),
            Partition([[9], [10]]),
        ]
        assert list(f.components) == want
        assert unfactorize(f) == TEN

    def test_trivial_cases(self):
        p = Partition([[1, 4], [2, 3]])
        assert factorize(p, ColorMap("bbbb")).components == (p,)
        chi = ColorMap("bwbwb")
        f = factorize(zero(5), chi)
        assert all(len(c.blocks) == c.size for c in f.components)
        assert unfactorize(f) == zero(5)
        assert unfactorize(factorize(one(5), chi)) == one(5)

    def test_rejects_non_inc(self):
        with pytest.raises(NotIncError):
            factorize(Partition([[1, 3], [2], [4, 5]]), ColorMap.from_white(5, {2, 5}))

    @given(colors)
    @settings(max_examples=60, deadline=None)
    def test_bijection_and_order(self, c):
        chi = ColorMap(c)
        parts = enumerate_inc(chi)
        images = [factorize(p, chi).components for p in parts]
        assert len(set(images)) == len(parts)
        for p, img in zip(parts, images):
            assert all(is_noncrossing(x) for x in img)
            assert unfactorize(factorize(p, chi)) == p
        for (p, a), (q, b) in itertools.product(list(zip(parts, images))[:40], repeat=2):
            assert leq(p, q) == all(leq(x, y) for x, y in zip(a, b))


class TestLattice:
    def test_examples(self):
        chi = ColorMap("bbbb")
        p = Partition([[1, 3], [2], [4]])
        assert meet(p, p, chi) == p
        assert join(zero(4), p, chi) == p
        assert join(p, Partition([[2, 4], [1], [3]]), chi) == one(4)
        w3 = ColorMap("www")
        assert join(Partition([[1, 2], [3]]), Partition([[2, 3], [1]]), w3) == one(3)

    @pytest.mark.parametrize("c", ["bbbbb", "bwbbw", "bbwbb", "wwwww", "bwbwbb"])
    def test_bounds_by_scan(self, c):
        chi = ColorMap(c)
        parts = enumerate_inc(chi)
        for a, b in itertools.product(parts, repeat=2):
            m, j = meet(a, b, chi), join(a, b, chi)
            lower = [x for x in parts if leq(x, a) and leq(x, b)]
            upper = [x for x in parts if leq(a, x) and leq(b, x)]
            assert m in lower and all(leq(x, m) for x in lower)
            assert j in upper and all(leq(j, x) for x in upper)

    def test_interval_below(self):
        chi = ColorMap("bbbb")
        assert interval_below(zero(4), chi) == [zero(4)]
        assert interval_below(one(4), chi) == enumerate_inc(chi)
        assert len(interval_below(Partition([[1, 2], [3, 4]]), chi)) == 4
        for c in ["bwbwb", "bbbbbb"]:
            chi = ColorMap(c)
            parts = enumerate_inc(chi)
            for p in parts:
                assert set(interval_below(p, chi)) == {x for x in parts if leq(x, p)}
