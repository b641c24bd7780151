import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import H6, H_COMP, H_CYC, H_GAM, H_PATH, clique, hg
from jointrees.acyclicity import find_gamma_cycle
from jointrees.mcs import validate_join_tree
from jointrees.oracle import random_acyclic_hypergraph
from jointrees.planconv import (
    Orphan,
    connected_plans,
    convert_plan,
    is_connected_plan,
    is_reverse_gyo,
    orphan_plan_from_cycle,
    sweep_plans,
)


def test_is_connected_plan():
    assert is_connected_plan(H_PATH, ["R1", "R2", "R3"])
    assert not is_connected_plan(H_PATH, ["R1", "R3", "R2"])
    assert is_connected_plan(H_GAM, ["R1", "R2", "R3"])


def test_plan_must_be_permutation():
    with pytest.raises(ValueError):
        convert_plan(H_PATH, ["R1", "R2"])
    with pytest.raises(ValueError):
        is_connected_plan(H_PATH, ["R1", "R1", "R2"])


def test_convert_path():
    t = convert_plan(H_PATH, ["R1", "R2", "R3"])
    assert t.parent == {"R1": None, "R2": "R1", "R3": "R2"}
    assert validate_join_tree(H_PATH, t)


def test_convert_gamma_fixture_from_largest():
    t = convert_plan(H_GAM, ["R3", "R1", "R2"])
    assert t.parent == {"R3": None, "R1": "R3", "R2": "R3"}
    assert validate_join_tree(H_GAM, t)


def test_orphan():
    out = convert_plan(H_GAM, ["R1", "R2", "R3"])
    assert isinstance(out, Orphan) and not out
    assert out.relation == "R3" and out.key == {"a", "b", "c"}
    assert str(out) == "orphan R3 at position 3: key {a,b,c} is in no earlier relation"


def test_first_covering_predecessor_wins():
    t = convert_plan(clique(3), ["R1", "R2", "R3"])
    assert t.parent["R3"] == "R1"


def test_is_reverse_gyo():
    assert is_reverse_gyo(H_PATH, ["R1", "R2", "R3"])
    assert not is_reverse_gyo(H_GAM, ["R1", "R2", "R3"])
    assert is_reverse_gyo(H_GAM, ["R3", "R2", "R1"])
    assert not is_reverse_gyo(H_PATH, ["R1", "R3", "R2"])


def test_sweep_examples():
    assert sweep_plans(H_PATH).clean
    assert sweep_plans(clique(4)).clean
    report = sweep_plans(H_GAM)
    assert ("R1", "R2", "R3") in [p for p, _ in report.orphans]


def test_sweep_size_guard():
    with pytest.raises(ValueError):
        sweep_plans(clique(8))


def test_connected_plans_count():
    # a path of three has 4 connected orders: start anywhere, grow outward
    assert sorted(connected_plans(H_PATH)) == [
        ("R1", "R2", "R3"), ("R2", "R1", "R3"), ("R2", "R3", "R1"), ("R3", "R2", "R1")
    ]
    assert len(list(connected_plans(clique(4)))) == 24


@pytest.mark.parametrize("h", [H_GAM, H_COMP, H6, H_CYC])
def test_cycle_generator_finds_orphans(h):
    plan = orphan_plan_from_cycle(h)
    assert is_connected_plan(h, plan)
    assert isinstance(convert_plan(h, plan), Orphan)


def test_cycle_generator_without_cycle():
    assert orphan_plan_from_cycle(H_PATH) is None
    with pytest.raises(ValueError):
        orphan_plan_from_cycle(H_GAM, ("R1", "a", "R2", "b", "R3", "c"))


def test_longer_cycle_every_position():
    h = hg(A="ab", B="bc", C="cd", D="de", E="ea", F="abcde")
    w = find_gamma_cycle(h)
    k = len(w) // 2
    for i in range(1, k - 1):
        plan = orphan_plan_from_cycle(h, w, i)
        assert is_connected_plan(h, plan)
        assert isinstance(convert_plan(h, plan), Orphan)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_gamma_acyclic_plans_all_convert(seed):
    h = random_acyclic_hypergraph(seed, "gamma", max_edges=6)
    report = sweep_plans(h)
    assert report.clean and report.plans > 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_conversion_agrees_with_reverse_gyo(seed):
    h = random_acyclic_hypergraph(seed, "alpha", max_edges=6)
    for plan in itertools.islice(connected_plans(h), 200):
        out = convert_plan(h, plan)
        if out and validate_join_tree(h, out):
            assert is_reverse_gyo(h, plan)
        if is_reverse_gyo(h, plan):
            assert out and validate_join_tree(h, out)
        cyc = orphan_plan_from_cycle(h)
        if cyc is not None:
            assert not convert_plan(h, cyc)
