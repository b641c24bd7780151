"""Brute-force references for tests and the ``verify`` command.

Everything here is exponential and guarded by a node limit
(``JOINTREES_ORACLE_MAX_NODES``, default 10); exceeding it raises.
"""
from __future__ import annotations

import os
import random
from collections.abc import Iterable

from .acyclicity import find_gamma_cycle, is_alpha, is_berge
from .core import Hypergraph, LineGraph, line_graph
from .mcs import validate_join_tree

__all__ = [
    "OracleTooLarge",
    "all_spanning_trees",
    "all_join_trees_bruteforce",
    "max_weight_spanning_trees",
    "has_join_tree",
    "random_acyclic_hypergraph",
    "random_tree",
]


class OracleTooLarge(ValueError):
    pass


def _guard(n: int, limit: int | None) -> None:
    limit = int(os.environ.get("JOINTREES_ORACLE_MAX_NODES", "10")) if limit is None else limit
    if n > limit:
        raise OracleTooLarge(f"{n} nodes exceeds the oracle limit of {limit}")


def _edge_triples(g) -> list[tuple[int, str, str]]:
    if isinstance(g, LineGraph):
        return [(e.id, e.a, e.b) for e in g.edges]
    return [(eid, a, b) for eid, a, b in g.edges]


def all_spanning_trees(g, max_nodes: int | None = None) -> list[frozenset[int]]:
    """Every spanning tree of a (multi)graph as a set of edge ids.

    ``g`` needs ``nodes`` and ``edges``; edges are line-graph edges or
    ``(id, a, b)`` triples. Include/exclude recursion over edges in id order,
    pruning branches whose remaining edges cannot connect the graph.
    """
    nodes = list(g.nodes)
    _guard(len(nodes), max_nodes)
    edges = sorted((e for e in _edge_triples(g) if e[1] != e[2]), key=lambda e: e[0])
    need = len(nodes) - 1
    out: list[frozenset[int]] = []
    if need <= 0:
        return [frozenset()]

    def find(parent: dict, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def connectable(k: int, chosen: list[int]) -> bool:
        parent = {v: v for v in nodes}
        for eid in chosen:
            _, a, b = by_id[eid]
            parent[find(parent, a)] = find(parent, b)
        for _, a, b in edges[k:]:
            parent[find(parent, a)] = find(parent, b)
        roots = {find(parent, v) for v in nodes}
        return len(roots) == 1

    by_id = {e[0]: e for e in edges}

    def rec(k: int, chosen: list[int], parent: dict) -> None:
        if len(chosen) == need:
            out.append(frozenset(chosen))
            return
        if len(edges) - k < need - len(chosen) or not connectable(k, chosen):
            return
        eid, a, b = edges[k]
        ra, rb = find(parent, a), find(parent, b)
        if ra != rb:
            merged = dict(parent)
            merged[ra] = rb
            rec(k + 1, chosen + [eid], merged)
        rec(k + 1, chosen, parent)

    rec(0, [], {v: v for v in nodes})
    return out


def max_weight_spanning_trees(lg: LineGraph, max_nodes: int | None = None) -> list[frozenset[int]]:
    trees = all_spanning_trees(lg, max_nodes)
    if not trees:
        return []
    w = lg.weights
    total = {t: sum(w[i] for i in t) for t in trees}
    best = max(total.values())
    return [t for t in trees if total[t] == best]


def all_join_trees_bruteforce(h: Hypergraph, max_nodes: int | None = None) -> list[frozenset[int]]:
    """Join trees as line-graph edge-id sets, by filtering all spanning trees.

    The running-intersection filter is cross-checked against the
    maximum-weight filter whenever the former is non-empty.
    """
    lg = line_graph(h)
    trees = all_spanning_trees(lg, max_nodes)
    rip = [t for t in trees if validate_join_tree(h, [lg.by_id(i).ends for i in t])]
    if rip:
        w = lg.weights
        best = max(sum(w[i] for i in t) for t in trees)
        mwst = {t for t in trees if sum(w[i] for i in t) == best}
        if set(rip) != mwst:
            raise AssertionError("join trees differ from maximum spanning trees on an acyclic input")
    return rip


def has_join_tree(h: Hypergraph, max_nodes: int | None = None) -> bool:
    return bool(all_join_trees_bruteforce(h, max_nodes))


def random_tree(rng: random.Random, n: int) -> dict[int, int | None]:
    """Random recursive tree on ``0..n-1``: node ``k`` attaches to a uniform earlier node."""
    parent: dict[int, int | None] = {0: None}
    for k in range(1, n):
        parent[k] = rng.randrange(k)
    return parent


def _with_private(chi: dict[str, set[str]], rng: random.Random, prob: float, prefix: str = "p") -> None:
    """Give some relations a private variable; force one where sets collide or are empty."""
    k = 0
    seen: set[frozenset[str]] = set()
    for r in sorted(chi, key=lambda s: int(s[1:])):
        if not chi[r] or frozenset(chi[r]) in seen or rng.random() < prob:
            chi[r].add(f"{prefix}{k}")
            k += 1
        seen.add(frozenset(chi[r]))


def _alpha_candidate(rng: random.Random, n: int, max_vars: int) -> dict[str, set[str]]:
    parent = random_tree(rng, n)
    adj: dict[int, list[int]] = {v: [] for v in parent}
    for v, p in parent.items():
        if p is not None:
            adj[v].append(p)
            adj[p].append(v)
    chi = {f"R{v + 1}": set() for v in parent}
    shared = rng.randint(1, max(1, max_vars - n // 2))
    for s in range(shared):
        # a random connected subtree: grow from a random node
        start = rng.randrange(n)
        nodes = {start}
        frontier = list(adj[start])
        target = rng.randint(2, max(2, min(n, 4)))
        while frontier and len(nodes) < target:
            v = frontier.pop(rng.randrange(len(frontier)))
            if v not in nodes:
                nodes.add(v)
                frontier.extend(u for u in adj[v] if u not in nodes)
        for v in nodes:
            chi[f"R{v + 1}"].add(f"x{s}")
    # keep every tree edge alive so the hypergraph stays connected
    for v, p in parent.items():
        if p is not None and not (chi[f"R{v + 1}"] & chi[f"R{p + 1}"]):
            name = f"y{v}"
            chi[f"R{v + 1}"].add(name)
            chi[f"R{p + 1}"].add(name)
    _with_private(chi, rng, 0.3)
    return chi


def _berge_candidate(rng: random.Random, n: int) -> dict[str, set[str]]:
    parent = random_tree(rng, n)
    # group each node's child edges; a group of edges at one parent shares one variable
    chi = {f"R{v + 1}": set() for v in parent}
    children: dict[int, list[int]] = {v: [] for v in parent}
    for v, p in parent.items():
        if p is not None:
            children[p].append(v)
    k = 0
    for p, cs in children.items():
        rng.shuffle(cs)
        while cs:
            size = rng.randint(1, len(cs))
            group, cs = cs[:size], cs[size:]
            name = f"x{k}"
            k += 1
            chi[f"R{p + 1}"].add(name)
            for c in group:
                chi[f"R{c + 1}"].add(name)
    _with_private(chi, rng, 0.4)
    return chi


def random_acyclic_hypergraph(
    seed: int,
    kind: str = "alpha",
    max_edges: int = 6,
    max_vars: int = 12,
    min_edges: int = 2,
    max_tries: int = 1000,
) -> Hypergraph:
    """Seeded random connected hypergraph of the requested acyclicity class.

    ``kind`` is ``"alpha"``, ``"berge"`` or ``"gamma"``. Candidates are
    rejection-sampled until the class check and the size bounds pass.
    """
    if kind not in ("alpha", "berge", "gamma"):
        raise ValueError(f"unknown class {kind!r}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        n = rng.randint(min_edges, max_edges)
        if kind == "alpha":
            chi = _alpha_candidate(rng, n, max_vars)
        else:
            base = n
            if kind == "gamma":
                base = max(min_edges, n - rng.randint(0, n // 2))
            chi = _berge_candidate(rng, base)
            if kind == "gamma":
                # extra relations drawn as subsets of existing ones
                names = sorted(chi, key=lambda s: int(s[1:]))
                for k in range(base, n):
                    src = chi[rng.choice(names)]
                    pick = set(rng.sample(sorted(src), rng.randint(1, len(src))))
                    chi[f"R{k + 1}"] = pick
                _with_private(chi, rng, 0.0, "q")
        if len({x for s in chi.values() for x in s}) > max_vars:
            continue
        h = Hypergraph.from_relations(chi, merge_duplicates=False)
        if kind == "alpha" and is_alpha(h):
            return h
        if kind == "berge" and is_berge(h):
            return h
        if kind == "gamma" and is_alpha(h) and find_gamma_cycle(h) is None:
            return h
    raise RuntimeError(f"no {kind} hypergraph found for seed {seed}")


def sample(kind: str, seeds: Iterable[int], **bounds) -> list[Hypergraph]:
    return [random_acyclic_hypergraph(s, kind, **bounds) for s in seeds]


def naive_lca(parent: dict, u, v):
    anc = set()
    x = u
    while x is not None:
        anc.add(x)
        x = parent[x]
    x = v
    while x not in anc:
        x = parent[x]
    return x


def naive_depth(parent: dict, u) -> int:
    d = 0
    while parent[u] is not None:
        u = parent[u]
        d += 1
    return d


def naive_path(parent: dict, u, v) -> list:
    """Nodes on the tree path from ``u`` to ``v``."""
    l = naive_lca(parent, u, v)
    left, right = [], []
    x = u
    while x != l:
        left.append(x)
        x = parent[x]
    x = v
    while x != l:
        right.append(x)
        x = parent[x]
    return left + [l] + right[::-1]
