"""Shared hypergraphs and helpers for the test suite."""
from __future__ import annotations

import random

from jointrees.core import Hypergraph


def hg(**rels: str) -> Hypergraph:
    """``hg(R1="ab", R2="bc")``: one-letter variables."""
    return Hypergraph.from_relations({k: set(v) for k, v in rels.items()})


H_PATH = hg(R1="ab", R2="bc", R3="cd")
H_COMP = hg(A="xy", B="xyz", C="xz")
H_CYC = hg(R1="ab", R2="bc", R3="ca")
H_GAM = hg(R1="ab", R2="bc", R3="abc")

# Six relations that all share a: |H| = 14, |L| = 19, and MCS from P
# yields P-S, P-T, T-U, T-W, U-Y.
H6 = hg(P="ab", S="ae", T="ac", U="acd", W="acf", Y="ad")


def clique(n: int) -> Hypergraph:
    """Clique query: R_i = {a, b_i}, whose line graph is K_n with unit weights."""
    return Hypergraph.from_relations({f"R{i}": {"a", f"b{i}"} for i in range(1, n + 1)})


def random_parent_map(rng: random.Random, n: int) -> dict[str, str | None]:
    parent: dict[str, str | None] = {"n0": None}
    for k in range(1, n):
        # mix of bushy and path-like shapes
        j = k - 1 if rng.random() < 0.5 else rng.randrange(k)
        parent[f"n{k}"] = f"n{j}"
    return parent


class Multigraph:
    """Minimal ``nodes``/``edges`` container for the spanning-tree oracle."""

    def __init__(self, nodes, edges) -> None:
        self.nodes = list(nodes)
        self.edges = list(edges)


def eg_multigraph(eg) -> Multigraph:
    return Multigraph(eg.nodes, [(e.id, e.a, e.b) for e in eg.edges])


def pairs_of(lg, ids) -> frozenset[frozenset[str]]:
    return frozenset(frozenset(lg.by_id(i).ends) for i in ids)
