"""Longest common extension over the raw string (word equality, not order)."""
from __future__ import annotations

import numpy as np


def suffix_array(chars) -> list:
    """0-based suffix array by prefix doubling."""
    n = len(chars)
    if n == 0:
        return []
    cls = np.asarray(chars, dtype=np.int64)
    k = 1
    while True:
        nxt = np.full(n, -1, dtype=np.int64)
        if k < n:
            nxt[:n - k] = cls[k:]
        order = np.lexsort((nxt, cls))
        a, b = cls[order], nxt[order]
        fresh = np.empty(n, dtype=np.int64)
        fresh[0] = 0
        fresh[1:] = np.cumsum((a[1:] != a[:-1]) | (b[1:] != b[:-1]))
        cls = np.empty(n, dtype=np.int64)
        cls[order] = fresh
        if fresh[-1] == n - 1 or k >= n:
            return order.tolist()
        k *= 2


class PlainLce:
    """O(1) queries for the longest common prefix of w[i..] and w[j..]."""

    def __init__(self, chars):
        self.chars = tuple(chars)
        n = self.n = len(self.chars)
        sa = suffix_array(self.chars)
        rank = [0] * n
        for r, p in enumerate(sa):
            rank[p] = r
        # Kasai: lcp[r] = LCP(sa[r-1], sa[r])
        lcp = [0] * n
        h = 0
        w = self.chars
        for p in range(n):
            r = rank[p]
            if r == 0:
                h = 0
                continue
            q = sa[r - 1]
            while p + h < n and q + h < n and w[p + h] == w[q + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        self.sa = sa
        self.rank = rank
        levels = [np.asarray(lcp, dtype=np.int64)]
        span = 1
        while 2 * span <= n:
            prev = levels[-1]
            levels.append(np.minimum(prev[:n - 2 * span + 1], prev[span:n - span + 1]))
            span *= 2
        self.levels = [lev.tolist() for lev in levels]

    def lce(self, i: int, j: int) -> int:
        """1-based positions."""
        if i == j:
            return self.n - i + 1
        a, b = self.rank[i - 1], self.rank[j - 1]
        if a > b:
            a, b = b, a
        a += 1
        k = (b - a + 1).bit_length() - 1
        lev = self.levels[k]
        x, y = lev[a], lev[b - (1 << k) + 1]
        return x if x < y else y
