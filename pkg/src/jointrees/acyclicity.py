"""GYO reduction and acyclicity classification.

alpha-acyclicity is decided by GYO reduction. Linearity is read off the line
graph. Berge-acyclicity is alpha-acyclic and linear. gamma-acyclicity has no
polynomial test here: an exhaustive cycle search decides it for small inputs
and reports :data:`UNKNOWN` beyond a configurable edge bound.
"""
from __future__ import annotations

import os
from collections.abc import Sequence
from dataclasses import dataclass

from .core import Hypergraph, connected_components, line_graph, sort_key

__all__ = [
    "GyoOrder",
    "GyoFailure",
    "Classification",
    "UNKNOWN",
    "gyo_reduce",
    "is_alpha",
    "is_linear",
    "is_berge",
    "find_gamma_cycle",
    "find_berge_cycle",
    "is_gamma_cycle",
    "is_berge_cycle",
    "classify",
    "default_cycle_bound",
]


class _Unknown:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __bool__(self) -> bool:
        raise TypeError("UNKNOWN has no truth value")


#: Result of a cycle search that was skipped because the input exceeds the bound.
UNKNOWN = _Unknown()


def default_cycle_bound() -> int:
    return int(os.environ.get("JOINTREES_CYCLE_BOUND", "16"))


@dataclass(frozen=True)
class GyoOrder:
    """Successful reduction: ``(edge, parent)`` steps, the last one without parent."""

    steps: tuple[tuple[str, str | None], ...]

    @property
    def order(self) -> tuple[str, ...]:
        return tuple(r for r, _ in self.steps)

    @property
    def parents(self) -> dict[str, str | None]:
        return dict(self.steps)

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class GyoFailure:
    """No ear left; ``residue`` is the irreducible set of hyperedges."""

    residue: frozenset[str]

    def __bool__(self) -> bool:
        return False


def gyo_reduce(h: Hypergraph) -> GyoOrder | GyoFailure:
    """Remove ears until one hyperedge is left or none can be removed.

    An ear is a remaining hyperedge whose intersection with the union of the
    other remaining hyperedges lies inside one of them (its parent). Among ears
    the smallest id is removed first, and its parent is the smallest candidate.
    """
    if len(connected_components(h)) != 1:
        raise ValueError("gyo_reduce expects a connected hypergraph")
    remaining = list(h.edges)
    steps: list[tuple[str, str | None]] = []
    while len(remaining) > 1:
        for r in remaining:
            others = [s for s in remaining if s != r]
            shared = h[r] & frozenset().union(*(h[s] for s in others))
            parent = next((s for s in others if shared <= h[s]), None)
            if parent is not None:
                steps.append((r, parent))
                remaining.remove(r)
                break
        else:
            return GyoFailure(frozenset(remaining))
    steps.append((remaining[0], None))
    return GyoOrder(tuple(steps))


def is_alpha(h: Hypergraph) -> bool:
    return all(isinstance(gyo_reduce(c), GyoOrder) for c in connected_components(h))


def is_linear(h: Hypergraph) -> bool:
    return all(e.weight == 1 for e in line_graph(h).edges)


def is_berge(h: Hypergraph) -> bool:
    return is_alpha(h) and is_linear(h)


def is_gamma_cycle(h: Hypergraph, witness: Sequence[str]) -> bool:
    """Check ``(r0, x0, ..., r_{k-1}, x_{k-1})`` against the gamma-cycle definition.

    "No other hyperedge" is read relative to the hyperedges of the cycle.
    """
    rels, xs = list(witness[0::2]), list(witness[1::2])
    k = len(rels)
    if k < 3 or len(xs) != k or len(set(rels)) != k or len(set(xs)) != k:
        return False
    if any(r not in h for r in rels):
        return False
    for i in range(k):
        nxt = rels[(i + 1) % k]
        if xs[i] not in h[rels[i]] or xs[i] not in h[nxt]:
            return False
        if i < k - 1 and any(xs[i] in h[r] for r in rels if r not in (rels[i], nxt)):
            return False
    return True


def is_berge_cycle(h: Hypergraph, witness: Sequence[str]) -> bool:
    rels, xs = list(witness[0::2]), list(witness[1::2])
    k = len(rels)
    if k < 2 or len(xs) != k or len(set(rels)) != k or len(set(xs)) != k:
        return False
    return all(
        r in h and rels[(i + 1) % k] in h and xs[i] in h[r] and xs[i] in h[rels[(i + 1) % k]]
        for i, r in enumerate(rels)
    )


def _ordered(h: Hypergraph, verts) -> list[str]:
    return sorted(verts, key=sort_key)


def find_gamma_cycle(h: Hypergraph, bound: int | None = None):
    """Exhaustive backtracking search for a gamma cycle.

    Returns a witness tuple, ``None`` when there is none, or :data:`UNKNOWN`
    when ``h`` has more hyperedges than ``bound``.
    """
    bound = default_cycle_bound() if bound is None else bound
    if len(h) > bound:
        return UNKNOWN
    edges = h.edges
    path: list[str] = []
    xs: list[str] = []

    def extend() -> tuple[str, ...] | None:
        last = path[-1]
        if len(path) >= 3:
            for x in _ordered(h, h[last] & h[path[0]]):
                if x not in xs:
                    return tuple(v for pair in zip(path, xs + [x]) for v in pair)
        for nxt in edges:
            if nxt in path or any(x in h[nxt] for x in xs):
                continue
            for x in _ordered(h, h[last] & h[nxt]):
                # x may touch only last and nxt among the cycle's hyperedges
                if x in xs or any(x in h[r] for r in path[:-1]):
                    continue
                path.append(nxt)
                xs.append(x)
                found = extend()
                if found:
                    return found
                path.pop()
                xs.pop()
        return None

    for start in edges:
        path[:] = [start]
        xs.clear()
        found = extend()
        if found:
            return found
    return None


def find_berge_cycle(h: Hypergraph, bound: int | None = None):
    """Exhaustive search for a Berge cycle (length >= 2); same return protocol."""
    bound = default_cycle_bound() if bound is None else bound
    if len(h) > bound:
        return UNKNOWN
    edges = h.edges
    path: list[str] = []
    xs: list[str] = []

    def extend() -> tuple[str, ...] | None:
        last = path[-1]
        if len(path) >= 2:
            for x in _ordered(h, h[last] & h[path[0]]):
                if x not in xs:
                    return tuple(v for pair in zip(path, xs + [x]) for v in pair)
        for nxt in edges:
            # rotations are redundant: the start is the smallest edge of the cycle
            if nxt in path or h.index[nxt] < h.index[path[0]]:
                continue
            for x in _ordered(h, h[last] & h[nxt]):
                if x in xs:
                    continue
                path.append(nxt)
                xs.append(x)
                found = extend()
                if found:
                    return found
                path.pop()
                xs.pop()
        return None

    for start in edges:
        path[:] = [start]
        xs.clear()
        found = extend()
        if found:
            return found
    return None


@dataclass(frozen=True)
class Classification:
    alpha: bool
    linear: bool
    berge: bool
    gamma: bool | _Unknown
    gamma_cycle_witness: tuple[str, ...] | None = None
    berge_cycle_witness: tuple[str, ...] | None = None

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "linear": self.linear,
            "berge": self.berge,
            "gamma": "unknown" if self.gamma is UNKNOWN else self.gamma,
            "gamma_cycle_witness": list(self.gamma_cycle_witness) if self.gamma_cycle_witness else None,
            "berge_cycle_witness": list(self.berge_cycle_witness) if self.berge_cycle_witness else None,
        }


def classify(h: Hypergraph, bound: int | None = None) -> Classification:
    alpha = is_alpha(h)
    linear = is_linear(h)
    berge = alpha and linear
    gcyc = find_gamma_cycle(h, bound)
    if gcyc is UNKNOWN:
        gamma = True if berge else (False if not alpha else UNKNOWN)
        gcyc = None
    else:
        gamma = gcyc is None
    bcyc = find_berge_cycle(h, bound)
    if bcyc is UNKNOWN:
        bcyc = None
    if berge and gamma is False:
        raise AssertionError(f"hierarchy violated on {h!r}: Berge-acyclic but gamma cycle {gcyc}")
    if gamma is True and not alpha:
        raise AssertionError(f"hierarchy violated on {h!r}: gamma-acyclic but not alpha-acyclic")
    return Classification(alpha, linear, berge, gamma, gcyc, bcyc)
