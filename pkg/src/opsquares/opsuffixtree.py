"""Order-preserving suffix tree: the compacted trie of code(w[i..n])# for all i.

Edge labels are never stored. A node keeps a representative suffix start
``rep`` whose leaf lies in its subtree, and any label symbol is read back
through the character oracle.

Code symbols are packed into ints as ``prev_less * (n + 1) + prev_equal``;
the terminator ``#`` is ``(n + 1) ** 2``, which sorts after every code symbol.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .opcore import CntTable, Sequence, build_cnt_table, compute_code

REFERENCE_CAP = 2000


@dataclass
class OpSuffixTree:
    seq: Sequence
    parent: list
    depth: list
    children: list          # node -> {symbol key: child}
    rep: list               # node -> suffix start of some leaf below it
    suffix_at: list         # node -> suffix start for leaves, 0 otherwise
    leaf_of: list           # suffix start (1-based) -> leaf node; slot 0 unused
    _preorder: list = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.seq)

    @property
    def terminator(self) -> int:
        return (self.n + 1) ** 2

    @property
    def node_count(self) -> int:
        return len(self.parent)

    def is_leaf(self, v: int) -> bool:
        return self.suffix_at[v] != 0

    def degree(self, v: int) -> int:
        return len(self.children[v])

    def decode(self, key: int):
        if key == self.terminator:
            return "#"
        return divmod(key, self.n + 1)

    def first_symbol(self, v: int):
        """Key of the first symbol on the edge entering v (None for the root)."""
        p = self.parent[v]
        if p < 0:
            return None
        for key, c in self.children[p].items():
            if c == v:
                return key
        raise AssertionError("child missing from parent")

    def preorder(self) -> list:
        """Nodes in DFS order, children visited by increasing first symbol."""
        if self._preorder is None:
            order = []
            stack = [0]
            while stack:
                v = stack.pop()
                order.append(v)
                kids = self.children[v]
                stack.extend(kids[k] for k in sorted(kids, reverse=True))
            self._preorder = order
        return self._preorder

    def dump(self) -> str:
        """Stable text listing: id, parent id, string depth, first edge symbol.

        Ids are renumbered in canonical preorder, so two trees with the same
        shape and labels dump identically regardless of construction order.
        """
        order = self.preorder()
        new_id = {v: k for k, v in enumerate(order)}
        lines = []
        for v in order:
            p = self.parent[v]
            first = self.first_symbol(v)
            if first is None:
                sym = "-"
            else:
                sym = self.decode(first)
                sym = sym if sym == "#" else f"({sym[0]},{sym[1]})"
            lines.append(f"{new_id[v]} {new_id[p] if p >= 0 else -1} {self.depth[v]} {sym}")
        return "\n".join(lines) + "\n"


def build_op_suffix_tree(s: Sequence, oracle: CntTable | None = None) -> OpSuffixTree:
    """Insert coded suffixes from longest to shortest.

    If suffix i-1 shares h symbols with an earlier suffix j, then suffix i
    shares at least h-1 symbols with suffix j+1 (dropping the first character
    of two order-isomorphic fragments keeps them isomorphic). So insertion of
    suffix i starts at depth h-1 on the path to leaf j+1, found by walking up
    from that leaf, and only the remainder is compared symbol by symbol.
    """
    if oracle is None:
        oracle = build_cnt_table(s)
    w = s.chars
    rows = oracle.rows
    n = len(w)
    base = n + 1
    term = base * base

    def sym(i, p):
        if p == n - i + 2:
            return term
        q = i + p - 1
        c = w[q - 1]
        a = rows[q - 1]
        b = rows[i - 1]
        ac = a[c]
        bc = b[c]
        return (ac - bc) * base + (a[c + 1] - ac) - (b[c + 1] - bc)

    parent = [-1]
    depth = [0]
    children = [{}]
    rep = [0]
    suffix_at = [0]
    leaf_of = [0] * (n + 1)

    def add_node(par, d, r, suf):
        parent.append(par)
        depth.append(d)
        children.append({})
        rep.append(r)
        suffix_at.append(suf)
        return len(parent) - 1

    h = 0
    partner = 0
    for i in range(1, n + 1):
        d = h - 1 if h > 1 else 0
        x = 0
        if d > 0:
            x = leaf_of[partner + 1]
            while depth[parent[x]] >= d:
                x = parent[x]
        # invariant: suffix i matches the path down to depth d, and d lies on
        # the edge entering x (or at x itself when depth[x] == d)
        while True:
            if depth[x] == d:
                key = sym(i, d + 1)
                c = children[x].get(key)
                if c is None:
                    leaf = add_node(x, n - i + 2, i, i)
                    children[x][key] = leaf
                    leaf_of[i] = leaf
                    partner = rep[x]
                    rep[x] = i
                    h = d
                    break
                x = c
                d += 1
                continue
            r = rep[x]
            dx = depth[x]
            while d < dx and sym(i, d + 1) == sym(r, d + 1):
                d += 1
            if d == dx:
                continue
            p = parent[x]
            mid = add_node(p, d, i, 0)
            children[p][sym(r, depth[p] + 1)] = mid
            children[mid][sym(r, d + 1)] = x
            parent[x] = mid
            leaf = add_node(mid, n - i + 2, i, i)
            children[mid][sym(i, d + 1)] = leaf
            leaf_of[i] = leaf
            partner = r
            h = d
            break

    return OpSuffixTree(s, parent, depth, children, rep, suffix_at, leaf_of)


def naive_reference_tree(s: Sequence, cap: int = REFERENCE_CAP) -> OpSuffixTree:
    """Uncompacted trie of all coded suffixes, then compacted. Test oracle."""
    n = len(s)
    if n > cap:
        raise ValueError(f"length {n} exceeds reference cap {cap}")
    base = n + 1
    term = base * base
    trie = [{}]
    trie_suffix = [0]
    for i in range(1, n + 1):
        keys = [a * base + b for a, b in compute_code(s.chars[i - 1:])] + [term]
        node = 0
        for key in keys:
            nxt = trie[node].get(key)
            if nxt is None:
                trie.append({})
                trie_suffix.append(0)
                nxt = len(trie) - 1
                trie[node][key] = nxt
            node = nxt
        trie_suffix[node] = i

    parent, depth, children, rep, suffix_at = [-1], [0], [{}], [0], [0]
    leaf_of = [0] * (n + 1)
    # (trie node, its depth, compacted parent, key of the edge into it)
    stack = [(c, 1, 0, k) for k, c in trie[0].items()]
    while stack:
        t, d, cpar, key = stack.pop()
        while len(trie[t]) == 1 and not trie_suffix[t]:
            (t,) = trie[t].values()
            d += 1
        v = len(parent)
        parent.append(cpar)
        depth.append(d)
        children.append({})
        suffix_at.append(trie_suffix[t])
        rep.append(trie_suffix[t])
        children[cpar][key] = v
        if trie_suffix[t]:
            leaf_of[trie_suffix[t]] = v
        stack.extend((c, d + 1, v, k) for k, c in trie[t].items())
    # any leaf below works as a representative
    for v in range(len(parent) - 1, 0, -1):
        if rep[parent[v]] == 0:
            rep[parent[v]] = rep[v]
    return OpSuffixTree(s, parent, depth, children, rep, suffix_at, leaf_of)


class LcaIndex:
    """Euler tour + sparse table over string depths; O(1) queries."""

    def __init__(self, t: OpSuffixTree):
        self.tree = t
        depth = t.depth
        tour = []
        first = [0] * t.node_count
        stack = [(0, False)]
        while stack:
            v, back = stack.pop()
            if back:
                tour.append(v)
                continue
            first[v] = len(tour)
            tour.append(v)
            kids = t.children[v]
            for k in sorted(kids, reverse=True):
                stack.append((v, True))
                stack.append((kids[k], False))
        self.first = first
        self.tour = tour

        nodes = np.asarray(tour, dtype=np.int64)
        dep = np.asarray(depth, dtype=np.int64)
        levels = [nodes]
        span = 1
        m = len(tour)
        while 2 * span <= m:
            prev = levels[-1]
            a = prev[:m - 2 * span + 1]
            b = prev[span:span + len(a)]
            levels.append(np.where(dep[a] <= dep[b], a, b))
            span *= 2
        self.levels = [lev.tolist() for lev in levels]

    def lca(self, u: int, v: int) -> int:
        l, r = self.first[u], self.first[v]
        if l > r:
            l, r = r, l
        j = (r - l + 1).bit_length() - 1
        lev = self.levels[j]
        a = lev[l]
        b = lev[r - (1 << j) + 1]
        depth = self.tree.depth
        return a if depth[a] <= depth[b] else b

    def op_lce(self, i: int, i2: int) -> int:
        """Length of the longest common prefix of code(w[i..]) and code(w[i2..])."""
        t = self.tree
        if i == i2:
            return t.n - i + 1
        return t.depth[self.lca(t.leaf_of[i], t.leaf_of[i2])]


def build_lca_index(t: OpSuffixTree) -> LcaIndex:
    return LcaIndex(t)


def op_isomorphic_fragments(t: OpSuffixTree, lca: LcaIndex, i: int, i2: int, length: int) -> bool:
    n = t.n
    if length < 0 or min(i, i2) < 1 or max(i, i2) + length - 1 > n:
        raise IndexError(f"fragments ({i}, {i2}, len {length}) outside the string")
    if length == 0 or i == i2:
        return True
    return t.depth[lca.lca(t.leaf_of[i], t.leaf_of[i2])] >= length


class FingerprintIndex:
    """fingerprint(k, x) identifies code(w[x..x+2^k-1]).

    The value names the locus at string depth 2^k above leaf x: ``2v + 1``
    when that locus is the explicit node v, ``2v + 2`` when it is implicit on
    the edge entering v. Identifiers therefore lie in [1, 2 * node_count].
    """

    def __init__(self, t: OpSuffixTree):
        self.tree = t
        n = t.n
        parent, depth, leaf_of = t.parent, t.depth, t.leaf_of
        order = t.preorder()[1:]
        self.table = []
        k = 0
        while (1 << k) <= n:
            target = 1 << k
            top = list(range(t.node_count))
            for v in order:
                p = parent[v]
                if depth[p] >= target:
                    top[v] = top[p]
            row = [0] * (n + 1)
            for x in range(1, n - target + 2):
                v = top[leaf_of[x]]
                row[x] = 2 * v + 1 if depth[v] == target else 2 * v + 2
            self.table.append(row)
            k += 1

    @property
    def levels(self) -> int:
        return len(self.table)

    def fingerprint(self, k: int, x: int) -> int:
        n = self.tree.n
        if k < 0 or x < 1 or x + (1 << k) - 1 > n:
            raise ValueError("fragment overflows string")
        return self.table[k][x]


def build_fingerprint_index(t: OpSuffixTree) -> FingerprintIndex:
    return FingerprintIndex(t)
