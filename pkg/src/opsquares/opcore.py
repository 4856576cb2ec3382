"""Order-preserving primitives over strings on the integer alphabet {1..sigma}.

Positions in the public API are 1-based. ``Sequence.chars`` is a plain
0-based tuple, so ``s.chars[i - 1]`` is the character at position ``i``.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence as Seq


@dataclass(frozen=True)
class Sequence:
    """A string over {1..sigma}."""

    chars: tuple
    sigma: int

    def __post_init__(self):
        if self.sigma < 1:
            raise ValueError("sigma must be positive")
        for c in self.chars:
            if not 1 <= c <= self.sigma:
                raise ValueError(f"character {c} outside [1, {self.sigma}]")

    @classmethod
    def from_values(cls, values: Iterable[int], normalize: bool = True) -> "Sequence":
        """Build a sequence, remapping values to dense ranks unless told not to.

        Rank remapping preserves order, so it never changes which fragments are
        order-isomorphic.
        """
        values = list(values)
        if not values:
            raise ValueError("empty sequence")
        if normalize:
            rank = {v: r for r, v in enumerate(sorted(set(values)), 1)}
            return cls(tuple(rank[v] for v in values), len(rank))
        return cls(tuple(values), max(values))

    def __len__(self) -> int:
        return len(self.chars)

    def char(self, i: int) -> int:
        if not 1 <= i <= len(self.chars):
            raise IndexError(f"position {i} outside [1, {len(self.chars)}]")
        return self.chars[i - 1]

    def fragment(self, i: int, j: int) -> tuple:
        """Characters at positions i..j (inclusive)."""
        return self.chars[i - 1:j]


class CodeSymbol(NamedTuple):
    prev_less: int
    prev_equal: int


def _values(s) -> Seq[int]:
    return s.chars if isinstance(s, Sequence) else s


def compute_code(s) -> list[CodeSymbol]:
    """Per position: how many earlier characters are smaller, and how many equal."""
    vals = _values(s)
    if len(vals) == 0:
        raise ValueError("empty sequence")
    seen: list = []
    code = []
    for c in vals:
        lo = bisect_left(seen, c)
        code.append(CodeSymbol(lo, bisect_right(seen, c) - lo))
        insort(seen, c)
    return code


@dataclass(frozen=True)
class CntTable:
    """``rows[i][x]`` = number of positions k <= i with w[k] < x.

    i ranges over [0, n] and x over [0, sigma + 1]; the extra column lets the
    equal-count of the largest character be read as a difference.
    """

    rows: tuple
    sigma: int

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    def value(self, i: int, x: int) -> int:
        return self.rows[i][x]


def build_cnt_table(s: Sequence) -> CntTable:
    width = s.sigma + 2
    row = [0] * width
    rows = [tuple(row)]
    for c in s.chars:
        for x in range(c + 1, width):
            row[x] += 1
        rows.append(tuple(row))
    return CntTable(tuple(rows), s.sigma)


def character_oracle(t: CntTable, s: Sequence, i: int, j: int) -> CodeSymbol:
    """Code symbol j of the suffix starting at i, in O(1)."""
    n = len(s)
    if not (1 <= i <= n and 1 <= j <= n - i + 1):
        raise IndexError(f"(i={i}, j={j}) outside the string of length {n}")
    p = i + j - 1
    c = s.chars[p - 1]
    a = t.rows[p - 1]
    b = t.rows[i - 1]
    return CodeSymbol(a[c] - b[c], (a[c + 1] - a[c]) - (b[c + 1] - b[c]))


def is_op_isomorphic(u, v) -> bool:
    u, v = _values(u), _values(v)
    if len(u) != len(v):
        return False
    if len(u) == 0:
        return True
    return compute_code(u) == compute_code(v)


def is_op_border(s, b: int) -> bool:
    vals = _values(s)
    n = len(vals)
    if not 0 <= b <= n:
        raise ValueError(f"border length {b} outside [0, {n}]")
    return is_op_isomorphic(vals[:b], vals[n - b:])


@dataclass(frozen=True)
class BlockDecomposition:
    block_length: int
    full_blocks: int
    incomplete_length: int
    blocks: tuple
    incomplete: tuple
    is_initial_op_period: bool


def decompose_initial_op_period(s, p: int) -> BlockDecomposition:
    """Cut s into blocks of length p and check that p is an initial op-period.

    Returns the decomposition either way; the flag tells whether every full
    block is order-isomorphic to the first and the tail matches each block's
    prefix.
    """
    vals = tuple(_values(s))
    n = len(vals)
    if not 1 <= p <= n:
        raise ValueError(f"period {p} outside [1, {n}]")
    f = n // p
    blocks = tuple(vals[j * p:(j + 1) * p] for j in range(f))
    tail = vals[f * p:]
    ok = all(is_op_isomorphic(blocks[0], b) for b in blocks[1:])
    if ok and tail:
        ok = all(is_op_isomorphic(b[:len(tail)], tail) for b in blocks)
    return BlockDecomposition(p, f, len(tail), blocks, tail, ok)
