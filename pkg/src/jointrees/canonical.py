"""Canonical (shallowest) join trees of Berge-acyclic hypergraphs.

On a Berge-acyclic input the line graph is geodetic, every spanning tree of it
is a join tree, and the tree of shortest paths from the root is the unique join
tree minimizing every node's depth. MCS finds exactly that tree, whatever its
tie-breaking.
"""
from __future__ import annotations

from collections import deque

from .acyclicity import is_berge
from .core import Hypergraph, LineGraph, line_graph
from .mcs import RootedTree, default_root, mcs_tree

__all__ = [
    "NotBergeAcyclic",
    "canonical_tree",
    "is_canonical",
    "bfs_distances",
    "shortest_path_tree_edges",
    "geodetic_check",
]


class NotBergeAcyclic(ValueError):
    pass


def canonical_tree(h: Hypergraph, root: str | None = None) -> RootedTree:
    if not is_berge(h):
        raise NotBergeAcyclic("hypergraph is not Berge-acyclic")
    return mcs_tree(h, default_root(h) if root is None else root)


def bfs_distances(lg: LineGraph, root: str) -> dict[str, int]:
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in lg.neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_canonical(h: Hypergraph, t: RootedTree) -> bool:
    """Tree edges lie in the line graph and each depth equals the BFS distance from the root."""
    lg = line_graph(h)
    if set(t.parent) != set(h.edges):
        return False
    if any(not lg.has_edge(p, c) for p, c in t.edges()):
        return False
    dist = bfs_distances(lg, t.root)
    return all(t.depth[r] == dist.get(r) for r in h.edges)


def shortest_path_tree_edges(lg: LineGraph, root: str) -> frozenset[frozenset[str]]:
    """Union of all shortest root-to-node paths, as unordered node pairs.

    On a geodetic graph this is a spanning tree.
    """
    dist = bfs_distances(lg, root)
    return frozenset(
        frozenset((u, v))
        for e in lg.edges
        for u, v in (e.ends,)
        if u in dist and v in dist and abs(dist[u] - dist[v]) == 1
    )


def geodetic_check(lg: LineGraph) -> bool:
    """True iff every pair of nodes is joined by exactly one shortest path."""
    for s in lg.nodes:
        dist = {s: 0}
        paths = {s: 1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in lg.neighbors(u):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    paths[v] = paths[u]
                    queue.append(v)
                elif dist[v] == dist[u] + 1:
                    paths[v] += paths[u]
        if any(c > 1 for c in paths.values()):
            return False
    return True
