"""Definition-level brute force. Shares nothing with the fast path but Sequence."""
from __future__ import annotations

from .opcore import Sequence

BRUTE_FORCE_CAP = 2000


def _chars(s) -> tuple:
    chars = tuple(s.chars) if isinstance(s, Sequence) else tuple(s)
    if len(chars) > BRUTE_FORCE_CAP:
        raise ValueError(f"length {len(chars)} exceeds brute-force cap {BRUTE_FORCE_CAP}")
    return chars


def _same_order(w: tuple, a: int, b: int, length: int) -> bool:
    # w[a+p] <= w[a+q]  <=>  w[b+p] <= w[b+q] for all p, q (0-based starts)
    for p in range(length):
        x, y = w[a + p], w[b + p]
        for q in range(p):
            u, v = w[a + q], w[b + q]
            if (u < x) != (v < y) or (u == x) != (v == y):
                return False
    return True


def _is_square_at(w: tuple, a: int, ell: int) -> bool:
    return w[a:a + ell] != w[a + ell:a + 2 * ell] and _same_order(w, a, a + ell, ell)


def brute_force_enumerate(s) -> list:
    """(start, total length) pairs, 1-based, sorted."""
    w = _chars(s)
    n = len(w)
    return [(a + 1, 2 * ell)
            for a in range(n)
            for ell in range(1, (n - a) // 2 + 1)
            if _is_square_at(w, a, ell)]


def brute_force_distinct(s) -> int:
    w = _chars(s)
    return len({w[a - 1:a - 1 + length] for a, length in brute_force_enumerate(w)})


def brute_force_prefix_squares(s) -> list:
    w = _chars(s)
    return [2 * ell for ell in range(1, len(w) // 2 + 1) if _is_square_at(w, 0, ell)]
