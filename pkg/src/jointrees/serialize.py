"""JSON and DOT renderings of trees and equivalent graphs."""
from __future__ import annotations

from collections.abc import Sequence

from .core import Hypergraph, LineGraph, sort_key
from .equivgraph import EquivalentGraph
from .mcs import RootedTree

__all__ = [
    "tree_to_json",
    "tree_from_json",
    "trees_from_json",
    "forest_to_json",
    "tree_to_dot",
    "forest_to_dot",
    "eg_to_json",
    "eg_to_dot",
]


def _names(xs) -> list[str]:
    return sorted(xs, key=sort_key)


def tree_to_json(t: RootedTree, lg: LineGraph | None = None) -> dict:
    edges = []
    for p, c in t.edges():
        e = {"parent": p, "child": c, "weight": t.weight[c], "label": _names(t.label[c])}
        if lg is not None:
            e["id"] = lg.edge(p, c).id
        edges.append(e)
    return {
        "root": t.root,
        "edges": edges,
        "depth": {r: t.depth[r] for r in t.bfs_order()},
    }


def forest_to_json(trees: Sequence[RootedTree], lg: LineGraph | None = None) -> dict:
    """One tree as a plain object; several as ``{"components": [...]}``."""
    if len(trees) == 1:
        return tree_to_json(trees[0], lg)
    return {"components": [tree_to_json(t, lg) for t in trees]}


def tree_from_json(doc: dict, h: Hypergraph) -> RootedTree:
    """Rebuild a tree over ``h``; weights and labels are recomputed from ``h``."""
    try:
        root = doc["root"]
        parent: dict[str, str | None] = {root: None}
        for e in doc["edges"]:
            parent[e["child"]] = e["parent"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed tree document: {exc}") from exc
    return RootedTree.from_parents(h, parent)


def trees_from_json(doc: dict, h: Hypergraph) -> list[RootedTree]:
    """Accept either a single tree or a ``components`` list; each is restricted to its relations."""
    docs = doc["components"] if "components" in doc else [doc]
    out = []
    for d in docs:
        names = {d["root"]} | {e["child"] for e in d["edges"]}
        out.append(tree_from_json(d, h.restrict(names)))
    return out


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def tree_to_dot(t: RootedTree, name: str = "jointree") -> str:
    lines = [f"digraph {name} {{"]
    for r in t.bfs_order():
        lines.append(f"  {_q(r)};")
    for p, c in t.edges():
        label = "{" + ",".join(_names(t.label[c])) + "}"
        lines.append(f"  {_q(p)} -> {_q(c)} [label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def forest_to_dot(trees: Sequence[RootedTree]) -> str:
    if len(trees) == 1:
        return tree_to_dot(trees[0])
    return "".join(tree_to_dot(t, f"component{k + 1}") for k, t in enumerate(trees))


def eg_to_json(eg: EquivalentGraph) -> dict:
    return {
        "nodes": list(eg.nodes),
        "edges": [
            {"id": e.id, "a": e.a, "b": e.b, "weight": e.weight, "tree": e.id in eg.tree}
            for e in sorted(eg.edges, key=lambda e: e.id)
        ],
        "deleted": sorted(eg.deleted),
    }


def eg_to_dot(eg: EquivalentGraph, name: str = "equivalent") -> str:
    lines = [f"graph {name} {{"]
    for r in eg.nodes:
        lines.append(f"  {_q(r)};")
    for e in sorted(eg.edges, key=lambda e: e.id):
        style = "solid" if e.id in eg.tree else "dashed"
        w = "" if e.weight is None else f" w={e.weight}"
        lines.append(f"  {_q(e.a)} -- {_q(e.b)} [label={_q(f'e{e.id}{w}')}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
