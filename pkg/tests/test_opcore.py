import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opsquares.opcore import (Sequence, build_cnt_table, character_oracle, compute_code,
                              decompose_initial_op_period, is_op_border, is_op_isomorphic)

from conftest import seq, sequences


def _order_pattern(u):
    return [[(a < b, a == b) for b in u] for a in u]


class TestSequence:
    def test_normalizes_to_ranks(self):
        s = Sequence.from_values([10, 30, 20, 10])
        assert s.chars == (1, 3, 2, 1) and s.sigma == 3

    def test_raw_values_kept(self):
        s = Sequence.from_values([1, 4], normalize=False)
        assert s.chars == (1, 4) and s.sigma == 4

    def test_rejects_out_of_alphabet(self):
        with pytest.raises(ValueError):
            Sequence((1, 3), 2)
        with pytest.raises(ValueError):
            Sequence((0,), 1)

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="empty sequence"):
            Sequence.from_values([])

    def test_one_based_access(self):
        s = seq("abc")
        assert s.char(1) == 1 and s.char(3) == 3
        assert s.fragment(2, 3) == (2, 3)
        with pytest.raises(IndexError):
            s.char(0)


class TestCode:
    @pytest.mark.parametrize("values,expected", [
        ([1, 3, 2], [(0, 0), (1, 0), (1, 0)]),
        ([5], [(0, 0)]),
        ([1, 2, 1, 2], [(0, 0), (1, 0), (0, 1), (2, 1)]),
    ])
    def test_examples(self, values, expected):
        assert compute_code(values) == expected

    def test_empty(self):
        with pytest.raises(ValueError, match="empty sequence"):
            compute_code([])

    def test_characterizes_isomorphism_exhaustively(self):
        # every pair of equal-length words up to 6 over 3 letters
        for n in range(1, 7):
            words = list(itertools.product((1, 2, 3), repeat=n))
            by_code = {}
            for w in words:
                by_code.setdefault(tuple(compute_code(w)), []).append(w)
            patterns = {}
            for code, group in by_code.items():
                pats = {str(_order_pattern(w)) for w in group}
                assert len(pats) == 1
                pat = pats.pop()
                assert pat not in patterns, "two codes share an order pattern"
                patterns[pat] = code

    @settings(max_examples=300)
    @given(st.lists(st.integers(1, 3), min_size=1, max_size=12),
           st.lists(st.integers(1, 3), min_size=1, max_size=12))
    def test_characterization_length_12(self, u, v):
        v = (v * 12)[:len(u)]
        assert is_op_isomorphic(u, v) == (_order_pattern(u) == _order_pattern(v))


class TestCntTable:
    def test_examples(self):
        assert build_cnt_table(Sequence((1, 2), 2)).value(2, 2) == 1
        assert build_cnt_table(Sequence((2, 2, 1), 2)).value(3, 3) == 3

    @given(sequences())
    def test_zero_edges_and_monotone(self, s):
        t = build_cnt_table(s)
        rows = t.rows
        assert all(v == 0 for v in rows[0])
        assert all(r[0] == 0 for r in rows)
        for i in range(len(rows)):
            for x in range(len(rows[i])):
                if i + 1 < len(rows):
                    assert rows[i][x] <= rows[i + 1][x]
                if x + 1 < len(rows[i]):
                    assert rows[i][x] <= rows[i][x + 1]
        assert rows[t.n][s.sigma] <= t.n

    @given(sequences())
    def test_definition(self, s):
        t = build_cnt_table(s)
        for i in range(len(s) + 1):
            for x in range(s.sigma + 2):
                assert t.value(i, x) == sum(1 for c in s.chars[:i] if c < x)


class TestCharacterOracle:
    def test_examples(self):
        s = Sequence((1, 2, 1, 2), 2)
        t = build_cnt_table(s)
        assert character_oracle(t, s, 3, 2) == (1, 0)
        assert character_oracle(t, s, 1, 4) == (2, 1)
        assert all(character_oracle(t, s, i, 1) == (0, 0) for i in range(1, 5))

    def test_out_of_range(self):
        s = Sequence((1, 2), 2)
        t = build_cnt_table(s)
        for i, j in [(0, 1), (3, 1), (2, 2), (1, 0)]:
            with pytest.raises(IndexError):
                character_oracle(t, s, i, j)

    @settings(max_examples=60)
    @given(sequences())
    def test_matches_code_of_suffix(self, s):
        t = build_cnt_table(s)
        n = len(s)
        for i in range(1, n + 1):
            code = compute_code(s.chars[i - 1:])
            assert [character_oracle(t, s, i, j) for j in range(1, n - i + 2)] == code


class TestIsomorphism:
    def test_examples(self):
        a, b, c, d, z = 1, 2, 3, 4, 26
        assert is_op_isomorphic([a, c, b], [a, z, d])
        assert is_op_isomorphic([3, 1, 2], [3, 1, 2])
        assert not is_op_isomorphic([1, 2], [2, 1])
        assert not is_op_isomorphic([1], [1, 1])


class TestBorderAndPeriod:
    def test_border_examples(self):
        assert is_op_border(Sequence((1, 1, 2, 2), 2), 2)
        assert is_op_border(Sequence((2, 1, 3), 3), 3)
        assert not is_op_border(Sequence((1, 2, 2, 1), 2), 2)
        with pytest.raises(ValueError):
            is_op_border(Sequence((1, 2), 2), 3)

    def test_period_examples(self):
        d = decompose_initial_op_period(Sequence((1, 1, 2, 2), 2), 2)
        assert d.blocks == ((1, 1), (2, 2)) and d.incomplete == () and d.is_initial_op_period
        assert d.full_blocks * d.block_length + d.incomplete_length == 4
        assert not decompose_initial_op_period(Sequence((1, 2, 2, 1), 2), 2).is_initial_op_period
        whole = decompose_initial_op_period(Sequence((3, 1, 2), 3), 3)
        assert whole.full_blocks == 1 and whole.is_initial_op_period
        with pytest.raises(ValueError):
            decompose_initial_op_period(Sequence((1,), 1), 0)

    def test_tail_checked(self):
        # blocks 12|12 agree but tail "2" vs block prefix "1" is fine (length 1);
        # 1 2 | 1 2 | 2 1 -> tail of length 2 reverses order
        assert not decompose_initial_op_period([1, 2, 1, 2, 2, 1], 4).is_initial_op_period

    def test_border_gives_period_exhaustive(self):
        # all words up to length 12 over 3 letters; borders found with an
        # early-exit pairwise comparison, then confirmed through is_op_border
        def same_order(w, a, b, length):
            for p in range(length):
                x, y = w[a + p], w[b + p]
                for q in range(p):
                    u, v = w[a + q], w[b + q]
                    if (u < x) != (v < y) or (u == x) != (v == y):
                        return False
            return True

        for n in range(1, 13):
            for w in itertools.product((1, 2, 3), repeat=n):
                for b in range(1, n):
                    if same_order(w, 0, n - b, b):
                        assert is_op_border(w, b)
                        assert decompose_initial_op_period(w, n - b).is_initial_op_period, (w, b)
