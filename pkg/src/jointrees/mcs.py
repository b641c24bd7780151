"""Maximum Cardinality Search over hyperedges, and rooted join trees.

MCS labels hyperedges one at a time, always picking an unlabeled hyperedge
with the most marked vertices. When a hyperedge is labeled, each of its
still-unmarked vertices becomes marked and every unlabeled hyperedge containing
such a vertex takes the new hyperedge as its (tentative) parent; later labels
overwrite earlier tentative parents.
"""
from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from .core import Hypergraph, LineGraph, UnweightedGraph, sort_key

__all__ = [
    "RootedTree",
    "mcs_tree",
    "mcs_tree_gamma",
    "mcs_tie_outcomes",
    "validate_join_tree",
    "default_root",
]


@dataclass(frozen=True, eq=False)
class RootedTree:
    """A spanning tree of the hyperedges, oriented away from ``root``.

    ``parent[r]`` is ``None`` only for the root. ``weight`` and ``label`` are
    keyed by the child of each tree edge. ``order`` is the labeling order when
    the tree came from MCS, otherwise a breadth-first order.
    """

    root: str
    parent: Mapping[str, str | None]
    weight: Mapping[str, int]
    label: Mapping[str, frozenset[str]]
    depth: Mapping[str, int]
    order: tuple[str, ...]

    @classmethod
    def from_parents(
        cls,
        h: Hypergraph,
        parent: Mapping[str, str | None],
        order: Sequence[str] | None = None,
    ) -> RootedTree:
        """Build from a parent map, deriving weights, labels and depths from ``h``."""
        roots = [r for r, p in parent.items() if p is None]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root, found {roots}")
        if set(parent) != set(h.edges):
            raise ValueError("parent map does not cover the hypergraph's edges")
        root = roots[0]
        children: dict[str, list[str]] = {r: [] for r in parent}
        for r, p in parent.items():
            if p is not None:
                if p not in parent:
                    raise ValueError(f"parent {p!r} of {r!r} is not a node")
                children[p].append(r)
        depth = {root: 0}
        bfs = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for c in sorted(children[u], key=sort_key):
                depth[c] = depth[u] + 1
                bfs.append(c)
                queue.append(c)
        if len(depth) != len(parent):
            raise ValueError("parent links contain a cycle or are disconnected")
        label = {r: h[r] & h[p] for r, p in parent.items() if p is not None}
        weight = {r: len(s) for r, s in label.items()}
        return cls(root, dict(parent), weight, label, depth, tuple(order) if order else tuple(bfs))

    @cached_property
    def children(self) -> dict[str, tuple[str, ...]]:
        ch: dict[str, list[str]] = {r: [] for r in self.parent}
        for r, p in self.parent.items():
            if p is not None:
                ch[p].append(r)
        return {r: tuple(sorted(cs, key=sort_key)) for r, cs in ch.items()}

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(self.parent)

    def edges(self) -> list[tuple[str, str]]:
        """Tree edges as ``(parent, child)`` in breadth-first order."""
        return [(self.parent[c], c) for c in self.bfs_order() if self.parent[c] is not None]

    def bfs_order(self) -> list[str]:
        out = [self.root]
        for u in out:
            out.extend(self.children[u])
        return out

    def edge_pairs(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self.edges())

    def edge_ids(self, lg: LineGraph) -> frozenset[int]:
        return frozenset(lg.edge(p, c).id for p, c in self.edges())

    def total_weight(self) -> int:
        return sum(self.weight.values())

    def max_depth(self) -> int:
        return max(self.depth.values())

    def __repr__(self) -> str:
        return f"RootedTree(root={self.root!r}, edges={self.edges()})"


def default_root(h: Hypergraph) -> str:
    """Largest relation by arity; ties go to the smallest id."""
    return min(h.edges, key=lambda r: (-len(h[r]), h.index[r]))


def _ranks(h: Hypergraph, tie: Sequence[str] | None) -> dict[str, int]:
    if tie is None:
        return dict(h.index)
    ranks = {r: k for k, r in enumerate(tie)}
    missing = set(h.edges) - set(ranks)
    if missing:
        raise ValueError(f"tie permutation misses {sorted(missing, key=sort_key)}")
    return ranks


def _run_mcs(h: Hypergraph, root: str, tie: Sequence[str] | None, on_mark=None):
    """Core MCS loop with bucketed priority queues.

    Buckets hold lazy heaps of ``(rank, edge)``; an entry is stale once the
    edge is labeled or its count has moved on. ``on_mark(x, labeled, current, parent)``
    is called for every newly marked vertex before parents are reassigned;
    ``parent`` is the live tentative-parent map.
    """
    if root not in h:
        raise KeyError(f"root {root!r} is not a hyperedge")
    rank = _ranks(h, tie)
    inc = h.incidence
    labeled: set[str] = set()
    marked: set[str] = set()
    count = dict.fromkeys(h.edges, 0)
    parent: dict[str, str | None] = {root: None}
    buckets: list[list[tuple[int, str]]] = [[]]
    top = 0
    order: list[str] = []
    current = root
    while True:
        labeled.add(current)
        order.append(current)
        for x in sorted(h[current], key=sort_key):
            if x in marked:
                continue
            if on_mark is not None:
                on_mark(x, labeled, current, parent)
            marked.add(x)
            for r in inc[x]:
                if r in labeled:
                    continue
                parent[r] = current
                count[r] += 1
                c = count[r]
                if c == len(buckets):
                    buckets.append([])
                heapq.heappush(buckets[c], (rank[r], r))
                top = max(top, c)
        if len(order) == len(h):
            break
        current = None
        while top > 0:
            heap = buckets[top]
            while heap:
                _, r = heap[0]
                if r in labeled or count[r] != top:
                    heapq.heappop(heap)
                    continue
                current = r
                break
            if current is not None:
                break
            top -= 1
        if current is None:
            raise ValueError("MCS requires a connected hypergraph")
        heapq.heappop(buckets[top])
    return parent, order


def mcs_tree(h: Hypergraph, root: str | None = None, tie: Sequence[str] | None = None) -> RootedTree:
    """Run MCS from ``root`` and return the resulting rooted tree.

    ``tie`` is an optional permutation of the hyperedges; ties between equally
    marked candidates go to the earliest in it (default: smallest id). The
    result is a join tree when ``h`` is alpha-acyclic and merely a spanning tree
    otherwise; check with :func:`validate_join_tree`.
    """
    root = default_root(h) if root is None else root
    parent, order = _run_mcs(h, root, tie)
    return RootedTree.from_parents(h, parent, order)


def mcs_tree_gamma(
    h: Hypergraph, root: str | None = None, tie: Sequence[str] | None = None
) -> tuple[RootedTree, UnweightedGraph]:
    """MCS that also collects the line-graph edge set while marking.

    Every pair of hyperedges sharing a vertex is recorded at the moment that
    vertex is first marked. For gamma-acyclic inputs this edge set is the union
    join graph. Only tree edges carry weights.
    """
    root = default_root(h) if root is None else root
    pairs: set[tuple[str, str]] = set()

    def on_mark(x: str, labeled: set[str], current: str, parent) -> None:
        group = [current] + [r for r in h.incidence[x] if r not in labeled]
        for k, a in enumerate(group):
            for b in group[k + 1:]:
                pairs.add((a, b))

    parent, order = _run_mcs(h, root, tie, on_mark)
    tree = RootedTree.from_parents(h, parent, order)
    return tree, UnweightedGraph.from_pairs(h.edges, pairs)


def mcs_tie_outcomes(h: Hypergraph, root: str) -> set[frozenset[frozenset[str]]]:
    """Edge sets of every tree MCS can produce from ``root`` under any tie-breaking.

    Explores all choices among tied candidates (a superset of the outcomes of
    all tie permutations), memoizing on the labeled set and parent assignment.
    Exponential in the worst case; meant for small hypergraphs.
    """
    if root not in h:
        raise KeyError(f"root {root!r} is not a hyperedge")
    inc = h.incidence
    outcomes: set[frozenset[frozenset[str]]] = set()
    seen: set[tuple[frozenset[str], frozenset[tuple[str, str | None]]]] = set()

    def label(current: str, labeled: frozenset[str], marked: frozenset[str], parent: dict[str, str | None]) -> None:
        labeled = labeled | {current}
        parent = dict(parent)
        fresh = h[current] - marked
        for x in fresh:
            for r in inc[x]:
                if r not in labeled:
                    parent[r] = current
        marked = marked | fresh
        key = (labeled, frozenset(parent.items()))
        if key in seen:
            return
        seen.add(key)
        if len(labeled) == len(h):
            outcomes.add(frozenset(frozenset((r, p)) for r, p in parent.items() if p is not None))
            return
        scores = {r: len(h[r] & marked) for r in h.edges if r not in labeled}
        best = max(scores.values())
        if best == 0:
            raise ValueError("MCS requires a connected hypergraph")
        for r, s in scores.items():
            if s == best:
                label(r, labeled, marked, parent)

    label(root, frozenset(), frozenset(), {root: None})
    return outcomes


def validate_join_tree(h: Hypergraph, tree: RootedTree | Iterable[tuple[str, str]]) -> bool:
    """True iff ``tree`` spans ``h``, uses only line-graph edges, and has the
    running intersection property (each variable's hyperedges form a subtree)."""
    pairs = tree.edges() if isinstance(tree, RootedTree) else [tuple(e) for e in tree]
    n = len(h)
    if len(pairs) != n - 1:
        return False
    parent = {r: r for r in h.edges}

    def find(r: str) -> str:
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for a, b in pairs:
        if a not in h or b not in h or not (h[a] & h[b]):
            return False
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    # in a forest, a node set is connected iff it spans |nodes| - 1 edges
    inside = {x: 0 for x in h.vertices}
    for a, b in pairs:
        for x in h[a] & h[b]:
            inside[x] += 1
    return all(inside[x] == len(rels) - 1 for x, rels in h.incidence.items())
