"""Converting left-deep linear join plans to join trees.

A plan is an order ``r1, ..., rn`` of the relations. Each ``ri`` after the
first needs a parent: the first earlier relation containing its key, the part
of ``ri`` already covered by the prefix. A relation without one is an orphan.
On gamma-acyclic inputs every connected plan converts; any gamma cycle yields a
connected plan with an orphan.
"""
from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .acyclicity import UNKNOWN, find_gamma_cycle, is_gamma_cycle
from .core import Hypergraph, sort_key
from .mcs import RootedTree, validate_join_tree

__all__ = [
    "Orphan",
    "SweepReport",
    "is_connected_plan",
    "convert_plan",
    "is_reverse_gyo",
    "connected_plans",
    "sweep_plans",
    "orphan_plan_from_cycle",
]


@dataclass(frozen=True)
class Orphan:
    """Conversion failure: ``relation`` has no predecessor covering ``key``."""

    relation: str
    position: int
    key: frozenset[str]

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        key = ",".join(sorted(self.key, key=sort_key))
        return f"orphan {self.relation} at position {self.position + 1}: key {{{key}}} is in no earlier relation"


def _check_plan(h: Hypergraph, plan: Sequence[str]) -> None:
    if sorted(plan, key=sort_key) != sorted(h.edges, key=sort_key):
        raise ValueError("plan must list every relation exactly once")


def is_connected_plan(h: Hypergraph, plan: Sequence[str]) -> bool:
    _check_plan(h, plan)
    cover: frozenset[str] = h[plan[0]]
    for r in plan[1:]:
        if not h[r] & cover:
            return False
        cover |= h[r]
    return True


def convert_plan(h: Hypergraph, plan: Sequence[str]) -> RootedTree | Orphan:
    """Root at ``plan[0]``; parent of each later relation is the first earlier one containing its key."""
    _check_plan(h, plan)
    parent: dict[str, str | None] = {plan[0]: None}
    cover: frozenset[str] = h[plan[0]]
    for i in range(1, len(plan)):
        r = plan[i]
        key = h[r] & cover
        p = next((s for s in plan[:i] if key <= h[s]), None)
        if p is None:
            return Orphan(r, i, key)
        parent[r] = p
        cover |= h[r]
    return RootedTree.from_parents(h, parent, plan)


def is_reverse_gyo(h: Hypergraph, plan: Sequence[str]) -> bool:
    """Whether reading the plan backwards removes an ear at every step.

    In a connected hypergraph an ear always meets the rest, so this asks for
    a non-empty key covered by some predecessor at every position.
    """
    _check_plan(h, plan)
    cover: frozenset[str] = h[plan[0]]
    for i in range(1, len(plan)):
        key = h[plan[i]] & cover
        if not key or not any(key <= h[s] for s in plan[:i]):
            return False
        cover |= h[plan[i]]
    return True


def connected_plans(h: Hypergraph) -> Iterator[tuple[str, ...]]:
    """All connected plans, in lexicographic order of relation ids."""
    names = list(h.edges)
    used: list[str] = []

    def rec(cover: frozenset[str]) -> Iterator[tuple[str, ...]]:
        if len(used) == len(names):
            yield tuple(used)
            return
        for r in names:
            if r in used or (used and not h[r] & cover):
                continue
            used.append(r)
            yield from rec(cover | h[r])
            used.pop()

    yield from rec(frozenset())


@dataclass
class SweepReport:
    plans: int = 0
    orphans: list[tuple[tuple[str, ...], Orphan]] = field(default_factory=list)
    invalid: list[tuple[str, ...]] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.orphans and not self.invalid


def sweep_plans(h: Hypergraph, max_n: int = 7) -> SweepReport:
    """Convert every connected plan; collect orphans and conversions that are not join trees."""
    if len(h) > max_n:
        raise ValueError(f"{len(h)} relations exceeds the sweep limit of {max_n}")
    report = SweepReport()
    for plan in connected_plans(h):
        report.plans += 1
        out = convert_plan(h, plan)
        if isinstance(out, Orphan):
            report.orphans.append((plan, out))
        elif not validate_join_tree(h, out):
            report.invalid.append(plan)
    return report


def _extend_connected(h: Hypergraph, prefix: list[str]) -> list[str]:
    plan = list(prefix)
    cover = frozenset().union(*(h[r] for r in plan))
    rest = [r for r in h.edges if r not in plan]
    while rest:
        nxt = next((r for r in rest if h[r] & cover), None)
        if nxt is None:
            raise ValueError("hypergraph is not connected")
        plan.append(nxt)
        rest.remove(nxt)
        cover |= h[nxt]
    return plan


def orphan_plan_from_cycle(h: Hypergraph, witness: Sequence[str] | None = None,
                           i: int = 1) -> tuple[str, ...] | None:
    """A connected plan with an orphan, built from a gamma cycle.

    With cycle ``r0, ..., r{k-1}``, relation ``ri`` (``1 <= i <= k-2``) is moved
    behind the rest of the cycle, which is ordered ``r0..r{i-1}`` and then
    ``r{k-1}`` down to ``r{i+1}`` so every prefix stays connected. ``ri`` is
    then an orphan: its two private cycle variables lie in no single earlier
    relation. Remaining relations follow in a connected order. Returns
    ``None`` when no cycle is given or found.
    """
    if witness is None:
        witness = find_gamma_cycle(h)
        if witness is None or witness is UNKNOWN:
            return None
    if not is_gamma_cycle(h, witness):
        raise ValueError("witness is not a gamma cycle")
    rels = list(witness[0::2])
    k = len(rels)
    if not 1 <= i <= k - 2:
        raise ValueError(f"i must lie in [1, {k - 2}]")
    prefix = rels[:i] + rels[i + 1:][::-1] + [rels[i]]
    return tuple(_extend_connected(h, prefix))
