"""Static rooted-tree index: depth, LCA, level ancestor and LCA edges.

LCA uses an Euler tour with a sparse table over first occurrences (O(n log n)
build, O(1) query). Level ancestors use jump pointers plus ladders over a
long-path decomposition (O(n log n) build, O(1) query).
"""
from __future__ import annotations

from collections.abc import Hashable, Mapping

from .mcs import RootedTree

__all__ = ["TreeIndex", "build_index", "lca", "level_ancestor", "lca_edges"]


class TreeIndex:
    __slots__ = (
        "nodes", "_id", "root", "_parent", "_depth", "_euler", "_first",
        "_sparse", "_log", "_jump", "_ladder", "_ladder_of", "_ladder_pos",
    )

    def __init__(self, parent: Mapping[Hashable, Hashable | None]) -> None:
        self.nodes = list(parent)
        self._id = {u: k for k, u in enumerate(self.nodes)}
        n = len(self.nodes)
        par = [-1] * n
        children: list[list[int]] = [[] for _ in range(n)]
        roots = []
        for u, p in parent.items():
            k = self._id[u]
            if p is None:
                roots.append(k)
            else:
                par[k] = self._id[p]
                children[par[k]].append(k)
        if len(roots) != 1:
            raise ValueError("tree must have exactly one root")
        self.root = roots[0]
        self._parent = par

        # depth + preorder, iteratively
        depth = [0] * n
        pre = [self.root]
        for u in pre:
            for c in children[u]:
                depth[c] = depth[u] + 1
                pre.append(c)
        if len(pre) != n:
            raise ValueError("parent links do not form a tree")
        self._depth = depth

        # Euler tour
        euler: list[int] = []
        first = [0] * n
        stack = [(self.root, 0)]
        while stack:
            u, i = stack.pop()
            if i == 0:
                first[u] = len(euler)
            euler.append(u)
            if i < len(children[u]):
                stack.append((u, i + 1))
                stack.append((children[u][i], 0))
        self._euler = euler
        self._first = first
        m = len(euler)
        log = [0] * (m + 1)
        for i in range(2, m + 1):
            log[i] = log[i >> 1] + 1
        self._log = log
        table = [euler[:]]
        k = 1
        while (1 << k) <= m:
            prev = table[-1]
            half = 1 << (k - 1)
            row = [
                a if depth[a] <= depth[b] else b
                for a, b in zip(prev[: m - (1 << k) + 1], prev[half: half + m - (1 << k) + 1])
            ]
            table.append(row)
            k += 1
        self._sparse = table

        # jump pointers: jump[k][v] = 2^k-th ancestor or -1
        jump = [par[:]]
        k = 1
        while (1 << k) <= max(depth):
            prev = jump[-1]
            jump.append([prev[prev[v]] if prev[v] >= 0 else -1 for v in range(n)])
            k += 1
        self._jump = jump

        # long-path decomposition and ladders
        height = [0] * n
        for u in reversed(pre):
            for c in children[u]:
                height[u] = max(height[u], height[c] + 1)
        ladder_of = [-1] * n
        ladder_pos = [0] * n
        ladders: list[list[int]] = []
        for top in pre:
            # preorder reaches each path's top before the rest of the path
            if ladder_of[top] != -1:
                continue
            path = [top]
            u = top
            while children[u]:
                u = max(children[u], key=lambda c: height[c])
                path.append(u)
            ext: list[int] = []
            a = par[top]
            while a >= 0 and len(ext) < len(path):
                ext.append(a)
                a = par[a]
            ladder = ext[::-1] + path
            lid = len(ladders)
            ladders.append(ladder)
            for pos, v in enumerate(path, start=len(ext)):
                ladder_of[v] = lid
                ladder_pos[v] = pos
        self._ladder = ladders
        self._ladder_of = ladder_of
        self._ladder_pos = ladder_pos

    # public queries take and return node labels
    def depth(self, u: Hashable) -> int:
        return self._depth[self._id[u]]

    def parent(self, u: Hashable) -> Hashable | None:
        p = self._parent[self._id[u]]
        return None if p < 0 else self.nodes[p]

    def lca(self, u: Hashable, v: Hashable) -> Hashable:
        return self.nodes[self._lca(self._id[u], self._id[v])]

    def level_ancestor(self, u: Hashable, d: int) -> Hashable:
        k = self._id[u]
        if not 0 <= d <= self._depth[k]:
            raise ValueError(f"depth {d} outside [0, {self._depth[k]}] for node {u!r}")
        return self.nodes[self._la(k, d)]

    def _lca(self, u: int, v: int) -> int:
        lo, hi = self._first[u], self._first[v]
        if lo > hi:
            lo, hi = hi, lo
        j = self._log[hi - lo + 1]
        row = self._sparse[j]
        a, b = row[lo], row[hi - (1 << j) + 1]
        return a if self._depth[a] <= self._depth[b] else b

    def _la(self, v: int, d: int) -> int:
        up = self._depth[v] - d
        if up == 0:
            return v
        j = up.bit_length() - 1
        v = self._jump[j][v]
        rest = up - (1 << j)
        return self._ladder[self._ladder_of[v]][self._ladder_pos[v] - rest]

    def lca_edges(self, u: Hashable, v: Hashable) -> tuple[tuple[Hashable, Hashable], ...]:
        """Tree edges on the u-v path incident to their LCA, as ``(parent, child)``.

        One edge when one endpoint is an ancestor of the other, two otherwise;
        the edge on ``u``'s side comes first.
        """
        iu, iv = self._id[u], self._id[v]
        if iu == iv:
            raise ValueError("lca_edges needs two distinct nodes")
        if self._parent[iu] == iv or self._parent[iv] == iu:
            raise ValueError(f"({u!r}, {v!r}) is a tree edge")
        l = self._lca(iu, iv)
        d = self._depth[l] + 1
        out = []
        for x in (iu, iv):
            if x != l:
                out.append((self.nodes[l], self.nodes[self._la(x, d)]))
        return tuple(out)


def build_index(tree: RootedTree | Mapping[Hashable, Hashable | None]) -> TreeIndex:
    parent = tree.parent if isinstance(tree, RootedTree) else tree
    return TreeIndex(parent)


def lca(idx: TreeIndex, u: Hashable, v: Hashable) -> Hashable:
    return idx.lca(u, v)


def level_ancestor(idx: TreeIndex, u: Hashable, d: int) -> Hashable:
    return idx.level_ancestor(u, d)


def lca_edges(idx: TreeIndex, u: Hashable, v: Hashable) -> tuple[tuple[Hashable, Hashable], ...]:
    return idx.lca_edges(u, v)
