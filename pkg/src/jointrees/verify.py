"""Differential checks of the fast algorithms against the brute-force oracle."""
from __future__ import annotations

from .acyclicity import UNKNOWN, classify, gyo_reduce
from .canonical import canonical_tree, is_canonical
from .core import Hypergraph, connected_components, line_graph
from .enumeration import enumerate_edits, equivalent_graph_of
from .equivgraph import build_equivalent_graph, build_equivalent_graph_gamma, build_mwjt
from .mcs import mcs_tree_gamma
from .oracle import OracleTooLarge, all_join_trees_bruteforce, all_spanning_trees, max_weight_spanning_trees
from .planconv import orphan_plan_from_cycle, convert_plan, is_connected_plan, sweep_plans

__all__ = ["differential_check", "gamma_path_trees"]


class _Multigraph:
    def __init__(self, nodes, edges) -> None:
        self.nodes = nodes
        self.edges = edges


def gamma_path_trees(h: Hypergraph, root: str) -> set[frozenset[int]]:
    """Join trees (line-graph ids) read off the gamma-specific equivalent graph by brute force."""
    lg = line_graph(h)
    tree, u = mcs_tree_gamma(h, root)
    eg = build_equivalent_graph_gamma(u, tree)
    to_lg = {eid: lg.edge(a, b).id for eid, a, b in u.edges}
    g = _Multigraph(eg.nodes, [(e.id, e.a, e.b) for e in eg.edges])
    return {frozenset(to_lg[i] for i in t) for t in all_spanning_trees(g)}


def _component_checks(h: Hypergraph, plan_limit: int) -> dict[str, object]:
    out: dict[str, object] = {}
    cls = classify(h)
    try:
        oracle = set(all_join_trees_bruteforce(h))
    except OracleTooLarge:
        return {"skipped": f"{len(h)} relations exceeds the oracle limit"}
    out["gyo_vs_oracle"] = bool(gyo_reduce(h)) == bool(oracle)
    if not cls.alpha:
        return out
    lg = line_graph(h)
    out["rip_vs_max_weight"] = oracle == set(max_weight_spanning_trees(lg))
    ok_enum = ok_dup = True
    for root in h.edges:
        _, tree, eg = equivalent_graph_of(h, root)
        trees = list(enumerate_edits(eg).trees())
        ok_enum &= len(trees) == len(set(trees)) and set(trees) == oracle
        mono = build_mwjt(h, tree)
        dup = build_equivalent_graph(lg, tree, weights=line_graph(mono.hypergraph).weights)
        ok_dup &= dup.signature() == eg.signature()
    out["enumeration_vs_oracle"] = ok_enum
    out["duplicated_weights_same_eg"] = ok_dup
    if cls.berge:
        out["canonical_bfs_depths"] = all(is_canonical(h, canonical_tree(h, r)) for r in h.edges)
    if cls.gamma is True:
        out["gamma_path_vs_general"] = all(gamma_path_trees(h, r) == oracle for r in h.edges)
    if len(h) <= plan_limit and cls.gamma is not UNKNOWN:
        if cls.gamma:
            out["plans_convert"] = sweep_plans(h, plan_limit).clean
        else:
            plan = orphan_plan_from_cycle(h, cls.gamma_cycle_witness)
            out["cycle_gives_orphan"] = bool(plan) and is_connected_plan(h, plan) and not convert_plan(h, plan)
    return out


def differential_check(h: Hypergraph, plan_limit: int = 7) -> list[dict[str, object]]:
    """One dict of named boolean checks per connected component."""
    return [
        {"relations": list(c.edges), **_component_checks(c, plan_limit)}
        for c in connected_components(h)
    ]
