"""Acceptance criteria, one test each; the terminal summary prints a PASS/FAIL line per criterion."""
import itertools
import random
import time

import pytest

from fixtures import H6, H_COMP, H_CYC, H_GAM, H_PATH, clique, eg_multigraph, hg, random_parent_map
from jointrees.acyclicity import find_gamma_cycle, is_alpha
from jointrees.canonical import bfs_distances, canonical_tree
from jointrees.core import line_graph
from jointrees.enumeration import enumerate_edits, equivalent_graph_of, materialize_join_trees
from jointrees.equivgraph import build_equivalent_graph, build_equivalent_graph_gamma, build_mwjt
from jointrees.mcs import mcs_tie_outcomes, mcs_tree, mcs_tree_gamma, validate_join_tree
from jointrees.oracle import (
    all_join_trees_bruteforce,
    all_spanning_trees,
    max_weight_spanning_trees,
    naive_depth,
    naive_lca,
    naive_path,
    random_acyclic_hypergraph,
)
from jointrees.planconv import Orphan, convert_plan, is_connected_plan, orphan_plan_from_cycle, sweep_plans
from jointrees.treeindex import build_index

criterion = pytest.mark.criterion

ALPHA_CORPUS = [random_acyclic_hypergraph(s, "alpha", max_edges=8, max_vars=12) for s in range(220)]
BERGE_CORPUS = [random_acyclic_hypergraph(s, "berge", max_edges=7) for s in range(120)]
GAMMA_CORPUS = [random_acyclic_hypergraph(s, "gamma", max_edges=7) for s in range(60)]


def _rip_filter(h):
    lg = line_graph(h)
    return {t for t in all_spanning_trees(lg) if validate_join_tree(h, [lg.by_id(i).ends for i in t])}


@criterion(1, "Cayley counts 3, 16, 125, 1296 on clique queries, < 1 s")
def test_cayley_counts():
    t0 = time.perf_counter()
    counts = []
    for n in (3, 4, 5, 6):
        h = clique(n)
        _, tree, eg = equivalent_graph_of(h, "R1")
        trees = materialize_join_trees(h, enumerate_edits(eg, tree))
        counts.append(len(set(trees)))
        assert len(set(trees)) == len(trees)
    elapsed = time.perf_counter() - t0
    print(f"cayley counts {counts} in {elapsed:.3f} s")
    assert counts == [3, 16, 125, 1296]
    assert elapsed < 1.0


@criterion(2, "enumerated sets equal RIP and max-weight oracle sets on >= 200 random inputs, < 30 s")
def test_oracle_equivalence():
    t0 = time.perf_counter()
    assert len(ALPHA_CORPUS) >= 200
    for h in ALPHA_CORPUS:
        assert len(h) <= 8 and len(h.vertices) <= 12
        lg, tree, eg = equivalent_graph_of(h)
        enumerated = set(materialize_join_trees(h, enumerate_edits(eg, tree)))
        assert enumerated == _rip_filter(h)
        assert enumerated == set(max_weight_spanning_trees(lg))
    assert time.perf_counter() - t0 < 30


def _spanning(nodes, pairs) -> bool:
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return len(pairs) == len(nodes) - 1


def _time_first(k: int) -> float:
    best = float("inf")
    for _ in range(3):
        _, tree, eg = equivalent_graph_of(clique(7), "R1")
        t0 = time.perf_counter()
        for _ in zip(range(k), enumerate_edits(eg, tree).trees()):
            pass
        best = min(best, time.perf_counter() - t0)
    return best


@criterion(3, "every edit prefix is a new spanning tree of EG; doubling k costs <= 3x; < 30 s")
def test_edit_stream_contract():
    t0 = time.perf_counter()
    for h in ALPHA_CORPUS:
        _, tree, eg = equivalent_graph_of(h)
        ends = eg.endpoints()
        seen = set()
        for t in enumerate_edits(eg, tree).trees():
            assert _spanning(eg.nodes, [ends[i] for i in t])
            assert t not in seen
            seen.add(t)
    small, large = _time_first(4000), _time_first(8000)
    print(f"k=4000: {small:.4f} s, k=8000: {large:.4f} s, ratio {large / small:.2f}")
    assert large <= 3 * small
    assert time.perf_counter() - t0 < 30


@criterion(4, "build_mwjt weights strictly increase downward; join-tree sets unchanged by duplication; < 10 s")
def test_monotone_weights():
    t0 = time.perf_counter()
    for h in ALPHA_CORPUS[:120] + [H6, H_PATH, clique(4)]:
        before = set(all_join_trees_bruteforce(h))
        for root in h.edges:
            m = build_mwjt(h, mcs_tree(h, root))
            for p, c in m.tree.edges():
                if m.tree.parent[p] is not None:
                    assert m.tree.weight[c] > m.tree.weight[p]
            assert validate_join_tree(m.hypergraph, m.tree)
        # edge ids depend only on which relations intersect, which duplication keeps
        assert set(all_join_trees_bruteforce(m.hypergraph)) == before
    assert time.perf_counter() - t0 < 10


@criterion(5, "the equivalent graph under original and duplicated weights gives identical multigraphs on >= 100 inputs")
def test_duplicated_weights_same_eg():
    checked = 0
    for h in ALPHA_CORPUS[:150]:
        lg = line_graph(h)
        for root in h.edges:
            t = mcs_tree(h, root)
            star = line_graph(build_mwjt(h, t).hypergraph).weights
            a = build_equivalent_graph(lg, t)
            b = build_equivalent_graph(lg, t, weights=star)
            assert a.signature() == b.signature()
            assert a.deleted == b.deleted
        checked += 1
    assert checked >= 100


@criterion(6, "canonical depths equal BFS distances and all tie orders agree on >= 100 Berge inputs, < 60 s")
def test_canonical_tree():
    t0 = time.perf_counter()
    assert len(BERGE_CORPUS) >= 100
    for h in BERGE_CORPUS:
        lg = line_graph(h)
        for root in h.edges:
            t = canonical_tree(h, root)
            assert dict(t.depth) == bfs_distances(lg, root)
            # every reachable tie resolution; this covers every tie permutation
            assert mcs_tie_outcomes(h, root) == {t.edge_pairs()}
    # literal permutation sweep on a few inputs with the full 7 relations
    sevens = [h for h in BERGE_CORPUS if len(h) == 7][:3]
    assert sevens
    for h in sevens:
        root = h.edges[0]
        want = mcs_tree(h, root).edge_pairs()
        for perm in itertools.permutations(h.edges[1:]):
            assert mcs_tree(h, root, tie=(root,) + perm).edge_pairs() == want
    assert time.perf_counter() - t0 < 60


CYCLE_FIXTURES = [H_GAM, H_COMP, H_CYC, H6, hg(A="ab", B="bc", C="cd", D="de", E="ea", F="abcde")]


@criterion(7, "gamma-acyclic inputs: no orphan in any connected plan; gamma cycles yield an orphaned plan")
def test_plan_conversion_both_directions():
    gamma_fixtures = GAMMA_CORPUS + [H_PATH, clique(4), clique(5), hg(R1="abc", R2="cd", R3="ce", R4="ef")]
    for h in gamma_fixtures:
        report = sweep_plans(h, max_n=7)
        assert report.plans > 0 and report.clean
    with_cycle = CYCLE_FIXTURES + [h for h in ALPHA_CORPUS if find_gamma_cycle(h)]
    assert len(with_cycle) > len(CYCLE_FIXTURES)
    for h in with_cycle:
        plan = orphan_plan_from_cycle(h)
        assert is_connected_plan(h, plan)
        assert isinstance(convert_plan(h, plan), Orphan)
        if len(h) <= 7:
            assert sweep_plans(h).orphans


@criterion(8, "MCS trees satisfy e not within p(e) and shared fresh variables imply siblings")
def test_mcs_label_properties():
    for h in ALPHA_CORPUS:
        for root in h.edges:
            t = mcs_tree(h, root)
            up = {c: p for c, p in t.parent.items() if p is not None}
            inner = [c for c in up if t.parent[up[c]] is not None]
            for c in inner:
                assert not t.label[c] <= t.label[up[c]]
            fresh = {c: t.label[c] - t.label[up[c]] for c in inner}
            for c1, c2 in itertools.combinations(inner, 2):
                if fresh[c1] & fresh[c2]:
                    assert up[c1] == up[c2]


@criterion(9, "10,000 random tree-index queries on trees up to 1000 nodes match naive walks, < 5 s")
def test_tree_index_queries():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    done = 0
    while done < 10_000:
        parent = random_parent_map(rng, rng.randint(2, 1000))
        idx = build_index(parent)
        nodes = list(parent)
        for _ in range(1000):
            u, v = rng.choice(nodes), rng.choice(nodes)
            l = naive_lca(parent, u, v)
            assert idx.lca(u, v) == l
            du = naive_depth(parent, u)
            d = rng.randint(0, du)
            x = u
            for _ in range(du - d):
                x = parent[x]
            assert idx.level_ancestor(u, d) == x
            if u != v and parent[u] != v and parent[v] != u:
                path = naive_path(parent, u, v)
                want = [(l, path[i]) for i in (path.index(l) - 1, path.index(l) + 1) if 0 <= i < len(path)]
                assert sorted(idx.lca_edges(u, v)) == sorted(want)
            done += 1
    assert time.perf_counter() - t0 < 5


@criterion(10, "gamma fast path gives the same join-tree set as the general path")
def test_gamma_fast_path():
    for h in GAMMA_CORPUS + BERGE_CORPUS[:40] + [H_PATH, clique(4)]:
        assert is_alpha(h) and find_gamma_cycle(h) is None
        lg = line_graph(h)
        general = set(all_join_trees_bruteforce(h))
        for root in h.edges:
            t, u = mcs_tree_gamma(h, root)
            eg = build_equivalent_graph_gamma(u, t)
            fast = set(all_spanning_trees(eg_multigraph(eg)))
            assert fast == general
            assert {frozenset(lg.by_id(i).ends) for i in eg.tree} == t.edge_pairs()
