"""Equivalent graphs: the multigraph whose spanning trees are the join trees.

Starting from an MCS tree of an alpha-acyclic hypergraph, every non-tree
line-graph edge is either deleted (it lies in no maximum spanning tree) or
slid so that it touches the lowest common ancestor edges of its endpoints.
Edges keep their line-graph id through every slide, so a spanning tree of the
equivalent graph maps back to a join tree by id.

Vertex duplication and the monotone-weight construction are kept as testing
devices: running the construction with the original weights gives the same
multigraph as running it with the weights of the duplicated hypergraph.
"""
from __future__ import annotations

import dataclasses
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from typing import NamedTuple

from .core import Hypergraph, LineGraph, UnweightedGraph, line_graph, sort_key
from .mcs import RootedTree, default_root, mcs_tree, validate_join_tree
from .treeindex import build_index

__all__ = [
    "EGEdge",
    "EquivalentGraph",
    "DuplicationRecord",
    "MonotoneTree",
    "InvariantViolation",
    "slide",
    "duplicate_vertex",
    "build_mwjt",
    "build_equivalent_graph",
    "build_equivalent_graph_gamma",
    "union_join_graph",
]


class InvariantViolation(RuntimeError):
    """A non-tree edge is heavier than one of its LCA edges: the tree is not maximum."""


@dataclass(frozen=True)
class EGEdge:
    id: int
    a: str
    b: str
    weight: int | None

    @property
    def ends(self) -> tuple[str, str]:
        return (self.a, self.b)


@dataclass(frozen=True)
class EquivalentGraph:
    """Multigraph over the hyperedges; parallel edges are distinct by id.

    ``deleted`` holds ids of line-graph edges that slid into self-loops, i.e.
    edges in no maximum spanning tree. ``tree`` holds the ids of the initial
    tree's edges, which are never moved.
    """

    nodes: tuple[str, ...]
    edges: tuple[EGEdge, ...]
    deleted: frozenset[int]
    tree: frozenset[int]

    def edge(self, eid: int) -> EGEdge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def endpoints(self) -> dict[int, tuple[str, str]]:
        return {e.id: e.ends for e in self.edges}

    def signature(self) -> frozenset[tuple[int, frozenset[str]]]:
        """``(id, endpoints)`` pairs plus deletions; equal iff the multigraphs match."""
        return frozenset((e.id, frozenset(e.ends)) for e in self.edges) | frozenset(
            (eid, frozenset()) for eid in self.deleted
        )

    @property
    def surviving(self) -> frozenset[int]:
        return frozenset(e.id for e in self.edges)


@dataclass(frozen=True)
class DuplicationRecord:
    original: str
    new: str
    affected: frozenset[str]


class MonotoneTree(NamedTuple):
    hypergraph: Hypergraph
    tree: RootedTree
    duplications: tuple[DuplicationRecord, ...]


def slide(eg: EquivalentGraph, edge_id: int, along: int, *, at: str | None = None,
          allow_equal: bool = False) -> EquivalentGraph:
    """Slide edge ``edge_id`` along edge ``along``.

    With ``along = (u, v)`` and ``edge_id = (v, w)``, the end ``v`` moves to
    ``u``. ``at`` picks ``v`` when both ends are shared. The slid edge must be
    strictly lighter unless ``allow_equal``. A resulting self-loop is recorded
    in ``deleted``.
    """
    e, star = eg.edge(edge_id), eg.edge(along)
    if e.id == star.id:
        raise ValueError("cannot slide an edge along itself")
    shared = set(e.ends) & set(star.ends)
    if at is not None:
        if at not in shared:
            raise ValueError(f"{at!r} is not a common endpoint")
        v = at
    elif len(shared) == 1:
        v = shared.pop()
    elif not shared:
        raise ValueError(f"edges {edge_id} and {along} are not incident")
    else:
        raise ValueError("edges are parallel; pass `at` to choose the end to move")
    if e.weight is not None and star.weight is not None:
        if e.weight > star.weight or (e.weight == star.weight and not allow_equal):
            raise ValueError(f"edge {edge_id} (w={e.weight}) is not lighter than {along} (w={star.weight})")
    u = star.b if star.a == v else star.a
    if e.a == v:
        moved = EGEdge(e.id, u, e.b, e.weight)
    else:
        moved = EGEdge(e.id, e.a, u, e.weight)
    if moved.a == moved.b:
        return dataclasses.replace(
            eg, edges=tuple(x for x in eg.edges if x.id != e.id), deleted=eg.deleted | {e.id}
        )
    return dataclasses.replace(eg, edges=tuple(moved if x.id == e.id else x for x in eg.edges))


def _fresh_name(h: Hypergraph, x: str) -> str:
    k = 1
    while f"{x}'{k}" in h.vertices:
        k += 1
    return f"{x}'{k}"


def duplicate_vertex(h: Hypergraph, x: str) -> tuple[Hypergraph, DuplicationRecord]:
    """Add a copy of ``x`` to every hyperedge that contains ``x``."""
    if x not in h.vertices:
        raise KeyError(f"{x!r} is not a vertex")
    new = _fresh_name(h, x)
    affected = frozenset(h.incidence[x])
    chi = {r: (v | {new}) if r in affected else v for r, v in h.chi.items()}
    return Hypergraph(chi), DuplicationRecord(x, new, affected)


def build_mwjt(h: Hypergraph, tree: RootedTree) -> MonotoneTree:
    """Duplicate vertices until tree weights strictly increase from the root down.

    Tree edges are visited breadth-first. For an edge with a parent edge,
    ``delta = w(parent edge) - w(edge) + 1`` copies of the smallest vertex in
    the edge's label but not the parent edge's label are added. Edges at the
    root have no parent edge and are left alone.
    """
    if set(tree.parent) != set(h.edges):
        raise ValueError("tree does not span the hypergraph")
    records: list[DuplicationRecord] = []
    queue = deque(tree.children[tree.root])
    while queue:
        child = queue.popleft()
        up = tree.parent[child]
        grand = tree.parent[up]
        if grand is not None:
            label = h[child] & h[up]
            plabel = h[up] & h[grand]
            delta = len(plabel) - len(label) + 1
            if delta > 0:
                fresh = label - plabel
                if not fresh:
                    raise ValueError(f"edge ({up}, {child}) is contained in its parent edge; not an MCS tree")
                x = min(fresh, key=sort_key)
                for _ in range(delta):
                    h, rec = duplicate_vertex(h, x)
                    records.append(rec)
        queue.extend(tree.children[child])
    return MonotoneTree(h, RootedTree.from_parents(h, tree.parent, tree.order), tuple(records))


def _tree_edge_ids(lg, tree: RootedTree) -> dict[str, int]:
    """Child -> line-graph id of its tree edge."""
    ids = {}
    for p, c in tree.edges():
        ids[c] = _edge_id(lg, p, c)
    return ids


def _edge_id(lg, a: str, b: str) -> int:
    if isinstance(lg, LineGraph):
        return lg.edge(a, b).id
    for eid, x, y in lg.edges:
        if {x, y} == {a, b}:
            return eid
    raise KeyError(f"no edge between {a!r} and {b!r}")


def _oriented(idx, a: str, b: str) -> tuple[str, str]:
    return (a, b) if idx.depth(a) <= idx.depth(b) else (b, a)


def build_equivalent_graph(lg: LineGraph, tree: RootedTree,
                           weights: Mapping[int, int] | None = None) -> EquivalentGraph:
    """Equivalent graph from a line graph and an MCS tree, in one pass over non-tree edges.

    For a non-tree edge ``(ri, rj)`` with ``depth(ri) <= depth(rj)`` and weight
    ``w``, let ``l`` be the LCA, and ``(l, r1)``, ``(l, r2)`` the tree edges from
    ``l`` towards ``ri`` and ``rj`` (the same edge when ``ri`` is an ancestor).
    Lighter than both: deleted. Same edge and equal weight: becomes ``(l, r1)``.
    Distinct edges, all three weights equal: becomes ``(r1, r2)``. Equal to
    exactly one of them: parallel to that (lighter) one. ``weights`` overrides
    the line-graph weights, keyed by edge id; tree edges are never moved.
    """
    w = lg.weights if weights is None else dict(weights)
    idx = build_index(tree)
    tree_ids = _tree_edge_ids(lg, tree)
    tree_set = frozenset(tree_ids.values())
    out: list[EGEdge] = []
    deleted: set[int] = set()
    for e in lg.edges:
        if e.id in tree_set:
            out.append(EGEdge(e.id, e.a, e.b, w[e.id]))
            continue
        ri, rj = _oriented(idx, e.a, e.b)
        ws = w[e.id]
        lam = idx.lca_edges(ri, rj)
        if len(lam) == 1:
            (l, r1), = lam
            r2 = r1
        else:
            (l, r1), (_, r2) = lam
        w1, w2 = w[tree_ids[r1]], w[tree_ids[r2]]
        if ws > w1 or ws > w2:
            raise InvariantViolation(
                f"non-tree edge {e.id} ({e.a},{e.b}) w={ws} heavier than an LCA edge (w={w1},{w2})"
            )
        if ws < w1 and ws < w2:
            deleted.add(e.id)
        elif r1 == r2:
            out.append(EGEdge(e.id, l, r1, ws))
        elif w1 == w2:
            out.append(EGEdge(e.id, r1, r2, ws))
        elif ws == w1:
            out.append(EGEdge(e.id, l, r1, ws))
        else:
            out.append(EGEdge(e.id, l, r2, ws))
    return EquivalentGraph(tuple(lg.nodes), tuple(out), frozenset(deleted), tree_set)


def build_equivalent_graph_gamma(u: UnweightedGraph, tree: RootedTree) -> EquivalentGraph:
    """Equivalent graph for gamma-acyclic inputs, comparing LCA-edge weights only.

    Every non-tree edge lies in some maximum spanning tree, so nothing is
    deleted: one LCA edge gives a parallel edge, equal LCA weights a triangle,
    and unequal weights a parallel copy of the lighter LCA edge. Non-tree edges
    carry no weight.
    """
    idx = build_index(tree)
    tree_ids = _tree_edge_ids(u, tree)
    tree_set = frozenset(tree_ids.values())
    out: list[EGEdge] = []
    for eid, a, b in u.edges:
        if eid in tree_set:
            child = a if tree.parent.get(a) == b else b
            out.append(EGEdge(eid, a, b, tree.weight[child]))
            continue
        ri, rj = _oriented(idx, a, b)
        lam = idx.lca_edges(ri, rj)
        if len(lam) == 1:
            (l, r1), = lam
            out.append(EGEdge(eid, l, r1, None))
            continue
        (l, r1), (_, r2) = lam
        w1, w2 = tree.weight[r1], tree.weight[r2]
        if w1 == w2:
            out.append(EGEdge(eid, r1, r2, None))
        elif w1 < w2:
            out.append(EGEdge(eid, l, r1, None))
        else:
            out.append(EGEdge(eid, l, r2, None))
    return EquivalentGraph(tuple(u.nodes), tuple(out), frozenset(), tree_set)


def union_join_graph(h: Hypergraph, root: str | None = None) -> LineGraph:
    """Union of all join trees of a connected alpha-acyclic ``h``, in line-graph ids."""
    lg = line_graph(h)
    tree = mcs_tree(h, default_root(h) if root is None else root)
    if not validate_join_tree(h, tree):
        raise ValueError("hypergraph is not alpha-acyclic")
    eg = build_equivalent_graph(lg, tree)
    return lg.subgraph(eg.surviving)
