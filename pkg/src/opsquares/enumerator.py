"""Enumerate every occurrence of an order-preserving square uv (u ≈ v, u != v).

Suffixes w[i..n] are visited from right to left. For each suffix only a
handful of prefix lengths are proposed, driven by the leftmost occurrences
of the suffix grouped by dyadic relative position, and each proposal is then
checked in O(1) with an LCA query on the op-suffix tree plus a plain LCE
query for u != v.

All positions are 1-based and absolute unless a name says ``rel``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .opcore import Sequence, build_cnt_table
from .opsuffixtree import (
    FingerprintIndex,
    LcaIndex,
    OpSuffixTree,
    build_fingerprint_index,
    build_lca_index,
    build_op_suffix_tree,
)
from .wordlce import PlainLce


@dataclass(frozen=True, order=True)
class SquareOccurrence:
    start: int
    length: int


@dataclass(frozen=True)
class LeftmostState:
    i: int
    positions: tuple   # ascending absolute positions of leftmost occurrences in w[i..n]


def compute_iprev(s: Sequence) -> list:
    """iprev[p] = largest q < p with w[q] == w[p], else 0. Slot 0 unused."""
    last = {}
    iprev = [0] * (len(s) + 1)
    for p, c in enumerate(s.chars, 1):
        iprev[p] = last.get(c, 0)
        last[c] = p
    return iprev


def scan_leftmost(s: Sequence) -> tuple[list, Iterator[LeftmostState]]:
    """iprev array plus the leftmost-occurrence states for i = n, n-1, ..., 1."""
    iprev = compute_iprev(s)

    def states():
        w = s.chars
        current: list = []
        newest = {}
        for i in range(len(w), 0, -1):
            c = w[i - 1]
            old = newest.get(c)
            if old is not None:
                current.remove(old)
            current.insert(0, i)
            newest[c] = i
            yield LeftmostState(i, tuple(current))

    return iprev, states()


def group_leftmost(state: LeftmostState, i: int | None = None) -> dict:
    """Relative positions of leftmost occurrences keyed by floor(log2(rel))."""
    i = state.i if i is None else i
    groups: dict = {}
    for p in state.positions:
        rel = p - i + 1
        groups.setdefault(rel.bit_length() - 1, []).append(rel)
    return groups


@dataclass(frozen=True)
class KActiveRange:
    position: int
    scale: int
    start: int
    end: int


class KActiveTable:
    """Where each position p is k-active.

    p is k-active at i' when p is still a leftmost occurrence of w[i'..n]
    (iprev[p] < i' <= p) and 2^k <= p - i' + 1 < 2^(k+1).
    """

    def __init__(self, iprev: list, n: int):
        self.n = n
        self.lo = [0] * (n + 1)
        self.kmax = [-1] * (n + 1)
        weight = 0
        cells = 0
        for p in range(1, n + 1):
            lo = iprev[p] + 1
            self.lo[p] = lo
            k = (p - lo + 1).bit_length() - 1
            self.kmax[p] = k
            weight += (1 << (k + 1)) - 1
            cells += p - lo + 1
        # sum of 2^k over all (p, k <= k_p), and total length of all ranges
        self.weight = weight
        self.cells = cells

    def bounds(self, p: int, k: int):
        if k < 0 or k > self.kmax[p]:
            return None
        return max(self.lo[p], p - (1 << (k + 1)) + 2), p - (1 << k) + 1

    def ranges(self, p: int) -> list:
        return [KActiveRange(p, k, *self.bounds(p, k)) for k in range(self.kmax[p] + 1)]


def compute_k_active(iprev: list, n: int) -> KActiveTable:
    return KActiveTable(iprev, n)


def radix_sort(keys: np.ndarray, digit_bits: int = 16) -> np.ndarray:
    """Stable LSD radix sort of non-negative int64 keys; returns the permutation."""
    order = np.arange(len(keys))
    if len(keys) == 0:
        return order
    top = int(keys.max())
    mask = (1 << digit_bits) - 1
    shift = 0
    while True:
        digit = ((keys[order] >> shift) & mask).astype(np.uint16)
        # numpy's stable sort on 16-bit integers is a counting/radix pass
        order = order[np.argsort(digit, kind="stable")]
        shift += digit_bits
        if top >> shift == 0:
            return order


class ResultIndex:
    """R[x][k][i]: starts y with x in [y, y + 2^(k-1) - 1] and
    w[y..y+2^(k-1)-1] ≈ w[i..i+2^(k-1)-1], for i in x's k-active range, k >= 1.

    Stored in flat arenas: ``cells`` holds one list id per (x, k, i) and
    ``ys`` holds the lists back to back, so cells of the same group share a
    list rather than copying it.
    """

    def __init__(self, s: Sequence, fp: FingerprintIndex, active: KActiveTable):
        n = len(s)
        self.active = active
        block_first = [-1] * (n + 1)
        b_p, b_lvl, b_ylo, b_ycnt, b_s, b_icnt = [], [], [], [], [], []
        for p in range(1, n + 1):
            kmax = active.kmax[p]
            if kmax < 1:
                continue
            block_first[p] = len(b_p)
            for k in range(1, kmax + 1):
                half = 1 << (k - 1)
                st, en = active.bounds(p, k)
                ylo = max(1, p - half + 1)
                yhi = min(p, n - half + 1)
                b_p.append(p)
                b_lvl.append(k - 1)
                b_ylo.append(ylo)
                b_ycnt.append(max(0, yhi - ylo + 1))
                b_s.append(st)
                b_icnt.append(en - st + 1)
        self.block_first = block_first
        self.block_start = b_s
        nb = len(b_p)
        b_icnt_a = np.asarray(b_icnt, dtype=np.int64)
        cell_off = np.zeros(nb, dtype=np.int64)
        if nb:
            cell_off[1:] = np.cumsum(b_icnt_a)[:-1]
        self.block_off = cell_off.tolist()
        total_cells = int(b_icnt_a.sum())
        cells = np.full(total_cells, -1, dtype=np.int64)

        if nb == 0:
            self.cells = []
            self.ys = []
            self.list_lo = []
            self.list_hi = []
            self.tuple_count = 0
            return

        def expand(lo, cnt):
            cnt = np.asarray(cnt, dtype=np.int64)
            blk = np.repeat(np.arange(nb, dtype=np.int64), cnt)
            starts = np.cumsum(cnt) - cnt
            pos = np.asarray(lo, dtype=np.int64)[blk] + (np.arange(len(blk)) - starts[blk])
            return blk, pos

        y_blk, y_pos = expand(b_ylo, b_ycnt)
        i_blk, i_pos = expand(b_s, b_icnt)
        lvl = np.asarray(b_lvl, dtype=np.int64)
        fp_table = np.asarray(fp.table, dtype=np.int64)
        blk = np.concatenate([y_blk, i_blk])
        pos = np.concatenate([y_pos, i_pos])
        kind = np.concatenate([np.zeros(len(y_blk), np.int64), np.ones(len(i_blk), np.int64)])
        fps = fp_table[lvl[blk], pos]
        width = int(fps.max()) + 1
        keys = (blk * width + fps) * 2 + kind
        order = radix_sort(keys)
        self.tuple_count = len(keys)

        keys, blk, pos, kind = keys[order], blk[order], pos[order], kind[order]
        grp = keys >> 1
        gid = np.cumsum(np.concatenate([[True], grp[1:] != grp[:-1]])) - 1
        is_y = kind == 0
        ngroups = int(gid[-1]) + 1
        ycount = np.bincount(gid[is_y], minlength=ngroups)
        ystart = np.cumsum(ycount) - ycount
        is_i = ~is_y
        target = cell_off[blk[is_i]] + (pos[is_i] - np.asarray(b_s, dtype=np.int64)[blk[is_i]])
        g_i = gid[is_i]
        cells[target] = np.where(ycount[g_i] > 0, g_i, -1)

        self.cells = cells.tolist()
        self.ys = pos[is_y].tolist()
        self.list_lo = ystart.tolist()
        self.list_hi = (ystart + ycount).tolist()

    def lookup(self, x: int, k: int, i: int) -> list:
        """The y-list for (x, k, i); empty when i is outside x's k-active range."""
        b = self.block_first[x]
        if b < 0 or k < 1 or k > self.active.kmax[x]:
            return []
        b += k - 1
        st = self.block_start[b]
        en = x - (1 << k) + 1
        if not st <= i <= en:
            return []
        g = self.cells[self.block_off[b] + i - st]
        if g < 0:
            return []
        return self.ys[self.list_lo[g]:self.list_hi[g]]


def precompute_results(s: Sequence, fp: FingerprintIndex, active: KActiveTable) -> ResultIndex:
    return ResultIndex(s, fp, active)


def candidates_for_suffix(i: int, state: LeftmostState, groups: dict,
                          results: ResultIndex, n: int, chars=None) -> list:
    """Candidate total lengths 2*ell for op-square prefixes of w[i..n].

    Every op-square prefix has a leftmost occurrence x in its right arm that
    is the smallest or largest of its group L_K, with x - ell also leftmost.
    Write d = x - ell (relative). If d <= 2^(K-1), the window of length
    2^(K-1) starting at the right arm covers x and is isomorphic to the
    suffix's own prefix of that length, so ell comes out of R[x][K][i].
    Otherwise d > 2^(K-1) and d <= x/2 < 2^K put d in L_(K-1), and the pair
    (d, x) is proposed directly. Both routes emit O(1 + |L_(K-2)|) and
    O(|L_(K-1)|) lengths per extreme, so O(sigma) per suffix.
    """
    room = n - i + 1
    out = []
    if chars is not None and room >= 2 and chars[i - 1] != chars[i]:
        out.append(2)
    for k, members in groups.items():
        if k < 1:
            continue
        lower = groups.get(k - 1, ())
        half = 1 << (k - 1)
        for rel in {members[0], members[-1]}:
            x = i + rel - 1
            for y in results.lookup(x, k, i):
                length = 2 * (y - i)
                if length <= room:
                    out.append(length)
            for d in lower:
                if d > half and 2 * d <= rel:
                    length = 2 * (rel - d)
                    if length <= room:
                        out.append(length)
    return out


def verify_candidate(i: int, total_len: int, lca: LcaIndex, plain: PlainLce) -> bool:
    n = lca.tree.n
    if total_len < 2 or total_len % 2 or i < 1 or i + total_len - 1 > n:
        raise ValueError(f"candidate ({i}, {total_len}) is not an even fragment of w")
    ell = total_len // 2
    return lca.op_lce(i, i + ell) >= ell and plain.lce(i, i + ell) < ell


@dataclass
class EnumerationResult:
    occurrences: list
    candidate_total: int = 0
    per_suffix_max: int = 0
    per_suffix_candidates: list = field(default_factory=list)
    k_active_weight: int = 0
    result_cells: int = 0
    result_list_total: int = 0
    t_build: float = 0.0
    t_enum: float = 0.0


@dataclass
class Indexes:
    seq: Sequence
    tree: OpSuffixTree
    lca: LcaIndex
    fingerprints: FingerprintIndex
    plain: PlainLce


def build_indexes(s: Sequence) -> Indexes:
    tree = build_op_suffix_tree(s, build_cnt_table(s))
    return Indexes(s, tree, build_lca_index(tree), build_fingerprint_index(tree), PlainLce(s.chars))


def run_enumeration(s: Sequence, indexes: Indexes | None = None) -> EnumerationResult:
    """Enumerate op-square occurrences and keep the audit counters."""
    t0 = time.perf_counter()
    if indexes is None:
        indexes = build_indexes(s)
    t1 = time.perf_counter()

    n = len(s)
    iprev, states = scan_leftmost(s)
    active = compute_k_active(iprev, n)
    results = precompute_results(s, indexes.fingerprints, active)
    lca, plain = indexes.lca, indexes.plain
    chars = s.chars
    found = []
    per_suffix = [0] * (n + 1)
    for state in states:
        i = state.i
        cands = candidates_for_suffix(i, state, group_leftmost(state, i), results, n, chars)
        per_suffix[i] = len(cands)
        for length in set(cands):
            if verify_candidate(i, length, lca, plain):
                found.append(SquareOccurrence(i, length))
    found.sort()
    t2 = time.perf_counter()
    return EnumerationResult(
        occurrences=found,
        candidate_total=sum(per_suffix),
        per_suffix_max=max(per_suffix),
        per_suffix_candidates=per_suffix,
        k_active_weight=active.weight,
        result_cells=len(results.cells),
        result_list_total=len(results.ys),
        t_build=t1 - t0,
        t_enum=t2 - t1,
    )


def enumerate_op_squares(s: Sequence) -> list:
    return run_enumeration(s).occurrences


def count_distinct_as_words(occurrences, s: Sequence, plain: PlainLce | None = None) -> int:
    """Occurrences that spell the same word count once."""
    if not occurrences:
        return 0
    if plain is None:
        plain = PlainLce(s.chars)
    by_len: dict = {}
    for occ in occurrences:
        by_len.setdefault(occ.length, []).append(occ.start)
    total = 0
    rank = plain.rank
    for length, starts in by_len.items():
        starts.sort(key=lambda p: rank[p - 1])
        total += 1
        for a, b in zip(starts, starts[1:]):
            if plain.lce(a, b) < length:
                total += 1
    return total
