import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import H6, H_COMP, H_PATH, clique, eg_multigraph, hg, pairs_of
from jointrees.core import LineGraph, line_graph
from jointrees.equivgraph import (
    EGEdge,
    EquivalentGraph,
    InvariantViolation,
    build_equivalent_graph,
    build_equivalent_graph_gamma,
    build_mwjt,
    duplicate_vertex,
    slide,
    union_join_graph,
)
from jointrees.mcs import RootedTree, mcs_tree, mcs_tree_gamma
from jointrees.oracle import all_join_trees_bruteforce, all_spanning_trees, random_acyclic_hypergraph
from jointrees.treeindex import build_index


def _eg(nodes, edges, tree):
    return EquivalentGraph(tuple(nodes), tuple(EGEdge(*e) for e in edges), frozenset(), frozenset(tree))


def test_slide_moves_shared_end():
    # (T,P) w=1 slides along (W,T) w=2 and becomes (W,P)
    eg = _eg(["P", "T", "W"], [(0, "T", "P", 1), (1, "W", "T", 2)], [1])
    out = slide(eg, 0, 1)
    assert out.edge(0).ends == ("W", "P")
    assert out.edge(1).ends == ("W", "T")


def test_slide_to_self_loop_is_deletion():
    # both ends of (Y,T) climb to the top: first Y->U, then U->T
    eg = _eg(["T", "U", "Y"], [(0, "T", "U", 2), (1, "U", "Y", 3), (2, "Y", "T", 1)], [0, 1])
    eg = slide(eg, 2, 1, at="Y")
    assert set(eg.edge(2).ends) == {"U", "T"}
    eg = slide(eg, 2, 0, at="U")
    assert 2 in eg.deleted and 2 not in eg.surviving


def test_slide_star_fixture():
    eg = _eg(["R0", "R1", "R2"], [(0, "R1", "R2", 1), (1, "R0", "R1", 2)], [1])
    assert set(slide(eg, 0, 1).edge(0).ends) == {"R0", "R2"}


def test_slide_requires_lighter_and_incident():
    eg = _eg(["a", "b", "c", "d"], [(0, "a", "b", 2), (1, "b", "c", 2), (2, "c", "d", 1)], [0, 1])
    with pytest.raises(ValueError):
        slide(eg, 0, 1)
    assert set(slide(eg, 0, 1, allow_equal=True).edge(0).ends) == {"a", "c"}
    with pytest.raises(ValueError):
        slide(eg, 2, 0)
    with pytest.raises(ValueError):
        slide(eg, 0, 0)


def test_duplicate_vertex_examples():
    h, rec = duplicate_vertex(clique(3), "a")
    assert [e.weight for e in line_graph(h).edges] == [2, 2, 2]
    assert rec.new == "a'1" and rec.affected == {"R1", "R2", "R3"}
    h, _ = duplicate_vertex(H_PATH, "b")
    assert {(e.a, e.b): e.weight for e in line_graph(h).edges} == {("R1", "R2"): 2, ("R2", "R3"): 1}


def test_duplicate_vertex_keeps_join_trees():
    h2, _ = duplicate_vertex(H6, "c")
    lg1, lg2 = line_graph(H6), line_graph(h2)
    before = {pairs_of(lg1, t) for t in all_join_trees_bruteforce(H6)}
    after = {pairs_of(lg2, t) for t in all_join_trees_bruteforce(h2)}
    assert before == after


def test_mwjt_examples():
    m = build_mwjt(H_PATH, mcs_tree(H_PATH, "R1"))
    assert [r.original for r in m.duplications] == ["c"]
    assert (m.tree.weight["R2"], m.tree.weight["R3"]) == (1, 2)
    chain = hg(R1="abc", R2="abcd", R3="abcde", R4="abcdef")
    m = build_mwjt(chain, mcs_tree(chain, "R1"))
    assert m.duplications == ()
    m = build_mwjt(clique(4), mcs_tree(clique(4), "R1"))
    assert m.duplications == ()


def test_mwjt_six_relation_fixture():
    m = build_mwjt(H6, mcs_tree(H6, "P"))
    assert [(r.original, r.affected) for r in m.duplications] == [("d", {"U", "Y"})]


def test_equivalent_graph_composite():
    t = RootedTree.from_parents(H_COMP, {"B": None, "A": "B", "C": "B"})
    eg = build_equivalent_graph(line_graph(H_COMP), t)
    lg = line_graph(H_COMP)
    assert eg.deleted == {lg.edge("A", "C").id}
    assert eg.surviving == eg.tree
    assert len(all_spanning_trees(eg_multigraph(eg))) == 1


def test_equivalent_graph_clique3_triangle():
    lg = line_graph(clique(3))
    eg = build_equivalent_graph(lg, mcs_tree(clique(3), "R1"))
    assert not eg.deleted
    assert set(eg.edge(lg.edge("R2", "R3").id).ends) == {"R2", "R3"}
    assert len(all_spanning_trees(eg_multigraph(eg))) == 3


def test_equivalent_graph_six_relation_trace():
    lg = line_graph(H6)
    eg = build_equivalent_graph(lg, mcs_tree(H6, "P"))
    assert eg.deleted == {lg.edge("Y", "W").id, lg.edge("Y", "T").id}
    assert set(eg.edge(lg.edge("Y", "S").id).ends) == {"S", "T"}


def test_equivalent_graph_rejects_non_maximum_tree():
    t = RootedTree.from_parents(H_COMP, {"A": None, "B": "A", "C": "A"})
    with pytest.raises(InvariantViolation):
        build_equivalent_graph(line_graph(H_COMP), t)


def test_gamma_examples():
    h = clique(3)
    t, u = mcs_tree_gamma(h, "R1")
    g = build_equivalent_graph_gamma(u, t)
    general = build_equivalent_graph(line_graph(h), mcs_tree(h, "R1"))
    assert g.signature() == general.signature()
    t, u = mcs_tree_gamma(H_PATH, "R1")
    g = build_equivalent_graph_gamma(u, t)
    assert g.surviving == g.tree
    h = clique(4)
    t, u = mcs_tree_gamma(h, "R1")
    g = build_equivalent_graph_gamma(u, t)
    assert len(g.tree) == 3 and len(g.surviving) == 6
    assert len(all_spanning_trees(eg_multigraph(g))) == 16


def test_gamma_lighter_edge_choice():
    # R is under A; the non-tree edge (R,B) must pair with the lighter A-B edge
    h = hg(A="abx", R="ab", B="ay")
    t, u = mcs_tree_gamma(h, "A")
    assert t.parent == {"A": None, "R": "A", "B": "A"}
    g = build_equivalent_graph_gamma(u, t)
    lg = line_graph(h)
    assert set(g.edge(lg.edge("R", "B").id).ends) == {"A", "B"}
    assert len(all_spanning_trees(eg_multigraph(g))) == len(all_join_trees_bruteforce(h)) == 2


def test_union_join_graph_examples():
    assert {frozenset(e.ends) for e in union_join_graph(H_COMP).edges} == {
        frozenset("AB"), frozenset("BC")
    }
    assert len(union_join_graph(clique(3)).edges) == 3
    assert [e.ends for e in union_join_graph(H_PATH).edges] == [("R1", "R2"), ("R2", "R3")]
    assert isinstance(union_join_graph(H_PATH), LineGraph)
    with pytest.raises(ValueError):
        union_join_graph(hg(R1="ab", R2="bc", R3="ca"))


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6))
def test_eg_spanning_trees_are_the_join_trees(seed):
    h = random_acyclic_hypergraph(seed, "alpha", max_edges=7)
    lg = line_graph(h)
    oracle = set(all_join_trees_bruteforce(h))
    union = set().union(*oracle)
    for root in h.edges:
        t = mcs_tree(h, root)
        eg = build_equivalent_graph(lg, t)
        trees = all_spanning_trees(eg_multigraph(eg))
        assert len(trees) == len(oracle)
        assert set(trees) == oracle
        assert eg.surviving == union
        # deleted edges really are in no join tree; the tree is untouched
        assert not (eg.deleted & union)
        for eid in eg.tree:
            assert set(eg.edge(eid).ends) == set(lg.by_id(eid).ends)
        # a surviving non-tree edge ends up on the LCA or on its two children
        idx = build_index(t)
        for e in eg.edges:
            if e.id in eg.tree:
                continue
            l = idx.lca(*lg.by_id(e.id).ends)
            assert l in e.ends or set(e.ends) <= set(t.children[l])
    assert {frozenset(e.id for e in union_join_graph(h).edges)} == {frozenset(union)}


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6))
def test_duplicated_weights_give_same_eg(seed):
    h = random_acyclic_hypergraph(seed, "alpha", max_edges=7)
    lg = line_graph(h)
    for root in h.edges:
        t = mcs_tree(h, root)
        m = build_mwjt(h, t)
        for p, c in m.tree.edges():
            gp = m.tree.parent[p]
            if gp is not None:
                assert m.tree.weight[c] > m.tree.weight[p]
        lg2 = line_graph(m.hypergraph)
        assert [e.ends for e in lg2.edges] == [e.ends for e in lg.edges]
        a = build_equivalent_graph(lg, t)
        b = build_equivalent_graph(lg, t, weights=lg2.weights)
        assert a.signature() == b.signature()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_duplication_preserves_subset_relations_with_lca_edges(seed):
    h = random_acyclic_hypergraph(seed, "alpha", max_edges=7)
    rng = random.Random(seed)
    lg = line_graph(h)
    t = mcs_tree(h, rng.choice(h.edges))
    m = build_mwjt(h, t)
    h2 = m.hypergraph
    idx = build_index(t)
    tree_ids = t.edge_ids(lg)
    for e in lg.edges:
        if e.id in tree_ids:
            continue
        for l, r in idx.lca_edges(*e.ends):
            before = h[e.a] & h[e.b], h[l] & h[r]
            after = h2[e.a] & h2[e.b], h2[l] & h2[r]
            assert (before[0] == before[1]) == (after[0] == after[1])
            assert (before[0] < before[1]) == (after[0] < after[1])


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_gamma_union_join_graph_is_line_graph(seed):
    h = random_acyclic_hypergraph(seed, "gamma", max_edges=7)
    assert [e.id for e in union_join_graph(h).edges] == [e.id for e in line_graph(h).edges]
