"""Enumerate spanning trees of an equivalent graph as a stream of edge swaps.

The enumeration is a contraction/deletion recursion run with an explicit
stack. At a node of the recursion some tree edge ``e`` lying on the cycle of
a non-tree edge is chosen; first every tree containing ``e`` is listed (``e``
contracted), then ``e`` is deleted and one swap ``-e +g`` moves the last tree
of the first half into the second half. Every spanning tree therefore appears
exactly once and consecutive trees differ by exactly one swap.
"""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from typing import NamedTuple

from .core import Hypergraph, connected_components, line_graph
from .equivgraph import EquivalentGraph, build_equivalent_graph
from .mcs import RootedTree, default_root, mcs_tree, validate_join_tree

__all__ = [
    "Edit",
    "EditStream",
    "JoinTreeCount",
    "enumerate_edits",
    "materialize_join_trees",
    "join_trees",
    "count_join_trees",
    "equivalent_graph_of",
]


@dataclass(frozen=True)
class Edit:
    add: int
    remove: int

    def __str__(self) -> str:
        return f"SWAP +e{self.add} -e{self.remove}"


class _RollbackUnionFind:
    def __init__(self, items) -> None:
        self.parent = {x: x for x in items}
        self.size = dict.fromkeys(self.parent, 1)
        self.history: list[tuple[object, object] | None] = []

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.history.append(None)
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append((ra, rb))

    def rollback(self) -> None:
        step = self.history.pop()
        if step is not None:
            ra, rb = step
            self.parent[rb] = rb
            self.size[ra] -= self.size[rb]


class EditStream:
    """Single-consumer iterator over the swaps that walk every spanning tree.

    ``initial`` is the first tree; iterating yields :class:`Edit` values, and
    :meth:`trees` yields the trees themselves (starting with ``initial``).
    """

    def __init__(self, eg: EquivalentGraph, initial: frozenset[int]) -> None:
        self.eg = eg
        self.initial = frozenset(initial)
        self._ends = eg.endpoints()
        missing = self.initial - set(self._ends)
        if missing:
            raise ValueError(f"initial tree uses edges not in the equivalent graph: {sorted(missing)}")
        if not _is_spanning_tree(eg.nodes, [self._ends[i] for i in self.initial]):
            raise ValueError("initial edge set is not a spanning tree of the equivalent graph")
        self._started = False

    def __iter__(self) -> Iterator[Edit]:
        if self._started:
            raise RuntimeError("EditStream can only be consumed once")
        self._started = True
        return self._walk()

    def trees(self) -> Iterator[frozenset[int]]:
        current = set(self.initial)
        yield frozenset(current)
        for edit in self:
            current.remove(edit.remove)
            current.add(edit.add)
            yield frozenset(current)

    def _walk(self) -> Iterator[Edit]:
        ends = self._ends
        order = sorted(ends)
        uf = _RollbackUnionFind(self.eg.nodes)
        alive = set(order)
        forced: set[int] = set()
        tree = set(self.initial)

        def live_non_tree() -> int | None:
            for eid in order:
                if eid in alive and eid not in tree:
                    a, b = ends[eid]
                    if uf.find(a) != uf.find(b):
                        return eid
            return None

        def free_adjacency() -> dict:
            adj: dict = {}
            for eid in tree:
                if eid in forced:
                    continue
                a, b = ends[eid]
                ra, rb = uf.find(a), uf.find(b)
                adj.setdefault(ra, []).append((rb, eid))
                adj.setdefault(rb, []).append((ra, eid))
            return adj

        def cycle_edges(f: int) -> list[int]:
            a, b = ends[f]
            src, dst = uf.find(a), uf.find(b)
            adj = free_adjacency()
            back = {src: None}
            stack = [src]
            while stack:
                u = stack.pop()
                if u == dst:
                    break
                for v, eid in adj.get(u, ()):
                    if v not in back:
                        back[v] = (u, eid)
                        stack.append(v)
            path = []
            u = dst
            while back[u] is not None:
                u, eid = back[u]
                path.append(eid)
            return path

        def reconnect(removed: int) -> int:
            # the side of the cut containing one end of the removed tree edge
            adj = free_adjacency()
            start = uf.find(ends[removed][0])
            side = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v, _ in adj.get(u, ()):
                    if v not in side:
                        side.add(v)
                        stack.append(v)
            for eid in order:
                if eid in alive and eid not in tree:
                    a, b = ends[eid]
                    if (uf.find(a) in side) != (uf.find(b) in side):
                        return eid
            raise AssertionError("deleted edge was a bridge")

        stack: list[tuple[str, int]] = [("enter", -1)]
        while stack:
            kind, e = stack.pop()
            if kind == "enter":
                f = live_non_tree()
                if f is None:
                    continue
                e = min(cycle_edges(f))
                a, b = ends[e]
                uf.union(a, b)
                forced.add(e)
                stack.append(("contracted", e))
                stack.append(("enter", -1))
            elif kind == "contracted":
                forced.discard(e)
                uf.rollback()
                alive.discard(e)
                tree.discard(e)
                g = reconnect(e)
                tree.add(g)
                yield Edit(add=g, remove=e)
                stack.append(("deleted", e))
                stack.append(("enter", -1))
            else:
                alive.add(e)


def _is_spanning_tree(nodes, pairs) -> bool:
    if len(pairs) != len(nodes) - 1:
        return False
    uf = _RollbackUnionFind(nodes)
    for a, b in pairs:
        if uf.find(a) == uf.find(b):
            return False
        uf.union(a, b)
    return True


def enumerate_edits(eg: EquivalentGraph, initial: RootedTree | frozenset[int] | None = None) -> EditStream:
    """Edit stream over all spanning trees of ``eg``, starting at ``initial``.

    ``initial`` defaults to the equivalent graph's own tree edges (the MCS tree).
    """
    if initial is None:
        start = eg.tree
    elif isinstance(initial, RootedTree):
        by_pair = {frozenset(e.ends): e.id for e in eg.edges if e.id in eg.tree}
        start = frozenset(by_pair[frozenset(p)] for p in initial.edges())
    else:
        start = frozenset(initial)
    return EditStream(eg, start)


def equivalent_graph_of(h: Hypergraph, root: str | None = None):
    """Line graph, MCS tree and equivalent graph of a connected alpha-acyclic ``h``."""
    lg = line_graph(h)
    tree = mcs_tree(h, default_root(h) if root is None else root)
    if not validate_join_tree(h, tree):
        raise ValueError("hypergraph is not alpha-acyclic; it has no join tree")
    return lg, tree, build_equivalent_graph(lg, tree)


def materialize_join_trees(h: Hypergraph, stream: EditStream) -> list[frozenset[int]]:
    """Every tree of the stream as a set of line-graph edge ids, checked as a join tree."""
    lg = line_graph(h)
    out = []
    for ids in stream.trees():
        pairs = [lg.by_id(i).ends for i in ids]
        if not validate_join_tree(h, pairs):
            raise AssertionError(f"enumerated edge set {sorted(ids)} is not a join tree")
        out.append(ids)
    return out


def join_trees(h: Hypergraph, root: str | None = None) -> Iterator[frozenset[int]]:
    """Lazily yield the join trees of a connected alpha-acyclic ``h`` (line-graph edge ids)."""
    _, _, eg = equivalent_graph_of(h, root)
    yield from enumerate_edits(eg).trees()


class JoinTreeCount(NamedTuple):
    count: int
    complete: bool


def count_join_trees(h: Hypergraph, limit: int | None = None) -> JoinTreeCount:
    """Count join trees, stopping at ``limit``.

    A disconnected hypergraph counts spanning forests: the product over
    components. ``complete`` is false when the limit cut enumeration short.
    """
    total = 1
    for comp in connected_components(h):
        n = 0
        budget = None if limit is None else max(limit // total, 1) + 1
        for _ in join_trees(comp):
            n += 1
            if budget is not None and n >= budget:
                break
        total *= n
        if limit is not None and total > limit:
            return JoinTreeCount(limit, False)
    if limit is not None and total > limit:
        return JoinTreeCount(limit, False)
    return JoinTreeCount(total, True)
