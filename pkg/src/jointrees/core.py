"""Query ingestion: join predicates, hypergraphs and weighted line graphs.

A query is a set of equi-join predicates ``R<a>.<i>=R<b>.<j>``. Attributes that
are (transitively) equated form one variable; each relation becomes a hyperedge
over the variables of its joined attributes. The line graph has one node per
relation and one edge per pair of relations sharing at least one variable,
weighted by the number of shared variables.

All values defined here are immutable after construction.
"""
from __future__ import annotations

import json
import re
import warnings
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

__all__ = [
    "Predicate",
    "Hypergraph",
    "LineEdge",
    "LineGraph",
    "UnweightedGraph",
    "QueryParseError",
    "HypergraphFormatError",
    "DuplicateHyperedgeWarning",
    "sort_key",
    "parse_query",
    "query_relations",
    "build_hypergraph",
    "build_line_graph",
    "line_graph",
    "hypergraph_from_file",
    "hypergraph_from_json",
    "load_hypergraph",
    "connected_components",
]


class QueryParseError(ValueError):
    """Raised for malformed predicate text, with the offending line number."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class HypergraphFormatError(ValueError):
    pass


class DuplicateHyperedgeWarning(UserWarning):
    pass


_NUM_SPLIT = re.compile(r"(\d+)")


def sort_key(name: str) -> tuple:
    """Natural ordering key, so that ``R2`` sorts before ``R10``."""
    return tuple((0, int(tok)) if tok.isdigit() else (1, tok) for tok in _NUM_SPLIT.split(name) if tok)


class Predicate(NamedTuple):
    """Equality ``R<a>.<i> = R<b>.<j>``, stored with ``(a, i) < (b, j)``."""

    a: int
    i: int
    b: int
    j: int

    @classmethod
    def normalized(cls, a: int, i: int, b: int, j: int) -> Predicate:
        if a == b:
            raise ValueError(f"self-join R{a}.{i}=R{b}.{j} is not supported")
        if (a, i) > (b, j):
            a, i, b, j = b, j, a, i
        return cls(a, i, b, j)

    def __str__(self) -> str:
        return f"R{self.a}.{self.i}=R{self.b}.{self.j}"


_PRED_RE = re.compile(r"^\s*R(\d+)\.(\d+)\s*=\s*R(\d+)\.(\d+)\s*$")


def parse_query(text: str) -> frozenset[Predicate]:
    """Parse predicate lines into a deduplicated predicate set.

    Blank lines and ``#`` comments are skipped. Symmetric duplicates collapse.
    """
    preds: set[Predicate] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PRED_RE.match(line)
        if m is None:
            raise QueryParseError(f"expected R<a>.<i>=R<b>.<j>, got {raw.strip()!r}", lineno)
        a, i, b, j = (int(g) for g in m.groups())
        if min(a, i, b, j) < 1:
            raise QueryParseError("relation and attribute ids start at 1", lineno)
        if a == b:
            raise QueryParseError(f"self-join on R{a} is not supported", lineno)
        preds.add(Predicate.normalized(a, i, b, j))
    return frozenset(preds)


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Relations (hyperedges) over variables (vertices).

    ``chi`` maps each hyperedge name to its vertex set. Construction validates
    the invariants: no empty hyperedge and no two hyperedges with the same
    vertex set. Edges are kept in natural name order.
    """

    chi: Mapping[str, frozenset[str]]

    def __post_init__(self) -> None:
        ordered = {}
        seen: dict[frozenset[str], str] = {}
        for name in sorted(self.chi, key=sort_key):
            verts = frozenset(self.chi[name])
            if not verts:
                raise HypergraphFormatError(f"hyperedge {name!r} is empty")
            if verts in seen:
                raise HypergraphFormatError(f"hyperedges {seen[verts]!r} and {name!r} have identical vertex sets")
            seen[verts] = name
            ordered[name] = verts
        object.__setattr__(self, "chi", ordered)

    @classmethod
    def from_relations(cls, relations: Mapping[str, Iterable[str]], *, merge_duplicates: bool = True) -> Hypergraph:
        """Build from a name -> variables mapping, merging duplicated hyperedges.

        The first relation (natural order) keeps the vertex set; later
        duplicates are dropped with a :class:`DuplicateHyperedgeWarning`.
        """
        chi: dict[str, frozenset[str]] = {}
        owner: dict[frozenset[str], str] = {}
        for name in sorted(relations, key=sort_key):
            verts = frozenset(str(v) for v in relations[name])
            if not verts:
                raise HypergraphFormatError(f"hyperedge {name!r} is empty")
            if verts in owner and merge_duplicates:
                warnings.warn(
                    f"hyperedge {name!r} duplicates {owner[verts]!r}; merged",
                    DuplicateHyperedgeWarning,
                    stacklevel=2,
                )
                continue
            owner.setdefault(verts, name)
            chi[name] = verts
        if not chi:
            raise HypergraphFormatError("hypergraph has no relations")
        return cls(chi)

    @cached_property
    def edges(self) -> tuple[str, ...]:
        return tuple(self.chi)

    @cached_property
    def vertices(self) -> frozenset[str]:
        return frozenset().union(*self.chi.values())

    @cached_property
    def incidence(self) -> dict[str, tuple[str, ...]]:
        """Vertex -> hyperedges containing it (the neighborhood), in edge order."""
        inc: dict[str, list[str]] = defaultdict(list)
        for name, verts in self.chi.items():
            for x in verts:
                inc[x].append(name)
        return {x: tuple(rs) for x, rs in inc.items()}

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: k for k, name in enumerate(self.edges)}

    @property
    def size(self) -> int:
        return sum(len(v) for v in self.chi.values())

    def __len__(self) -> int:
        return len(self.chi)

    def __contains__(self, name: object) -> bool:
        return name in self.chi

    def __getitem__(self, name: str) -> frozenset[str]:
        return self.chi[name]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return dict(self.chi) == dict(other.chi)

    def __hash__(self) -> int:
        return hash(frozenset(self.chi.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{n}={{{','.join(sorted(v, key=sort_key))}}}" for n, v in self.chi.items())
        return f"Hypergraph({body})"

    def restrict(self, names: Iterable[str]) -> Hypergraph:
        keep = set(names)
        return Hypergraph({n: v for n, v in self.chi.items() if n in keep})

    def to_json(self) -> dict:
        return {"relations": {n: sorted(v, key=sort_key) for n, v in self.chi.items()}}


@dataclass(frozen=True)
class LineEdge:
    id: int
    a: str
    b: str
    weight: int
    label: frozenset[str]

    @property
    def ends(self) -> tuple[str, str]:
        return (self.a, self.b)


def _pair_key(index: Mapping[str, int], a: str, b: str) -> tuple[int, int]:
    ia, ib = index[a], index[b]
    return (ia, ib) if ia < ib else (ib, ia)


def _canonical_pairs(nodes: tuple[str, ...], pairs: Iterable[tuple[str, str]]) -> list[tuple[str, str]]:
    """Orient each pair by node order and sort; edge ids are positions in this list."""
    index = {n: k for k, n in enumerate(nodes)}
    keyed = sorted({_pair_key(index, a, b) for a, b in pairs})
    return [(nodes[i], nodes[j]) for i, j in keyed]


@dataclass(frozen=True, eq=False)
class LineGraph:
    """Weighted simple graph over hyperedges.

    Edge ids are stable: they are the position of the edge in the list of node
    pairs sorted by node order, so any two constructions of the same edge set
    agree on ids.
    """

    nodes: tuple[str, ...]
    edges: tuple[LineEdge, ...]

    @classmethod
    def from_weighted(cls, nodes: Iterable[str], labels: Mapping[tuple[str, str], Iterable[str]]) -> LineGraph:
        nodes = tuple(sorted(nodes, key=sort_key))
        norm: dict[tuple[str, str], frozenset[str]] = {}
        index = {n: k for k, n in enumerate(nodes)}
        for (a, b), lab in labels.items():
            i, j = _pair_key(index, a, b)
            norm[(nodes[i], nodes[j])] = frozenset(lab)
        edges = tuple(
            LineEdge(k, a, b, len(norm[(a, b)]), norm[(a, b)])
            for k, (a, b) in enumerate(_canonical_pairs(nodes, norm))
        )
        return cls(nodes, edges)

    @cached_property
    def _by_pair(self) -> dict[frozenset[str], LineEdge]:
        return {frozenset((e.a, e.b)): e for e in self.edges}

    @cached_property
    def adjacency(self) -> dict[str, tuple[LineEdge, ...]]:
        adj: dict[str, list[LineEdge]] = {n: [] for n in self.nodes}
        for e in self.edges:
            adj[e.a].append(e)
            adj[e.b].append(e)
        return {n: tuple(es) for n, es in adj.items()}

    def edge(self, a: str, b: str) -> LineEdge:
        try:
            return self._by_pair[frozenset((a, b))]
        except KeyError:
            raise KeyError(f"no line-graph edge between {a!r} and {b!r}") from None

    def has_edge(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self._by_pair

    def weight(self, a: str, b: str) -> int:
        e = self._by_pair.get(frozenset((a, b)))
        return 0 if e is None else e.weight

    @property
    def size(self) -> int:
        return sum(e.weight for e in self.edges)

    @property
    def weights(self) -> dict[int, int]:
        return {e.id: e.weight for e in self.edges}

    def by_id(self, eid: int) -> LineEdge:
        e = self.edges[eid]
        assert e.id == eid
        return e

    def subgraph(self, ids: Iterable[int]) -> LineGraph:
        """Same nodes, only the listed edges, ids preserved."""
        keep = set(ids)
        return LineGraph(self.nodes, tuple(e for e in self.edges if e.id in keep))

    def neighbors(self, node: str) -> list[str]:
        return [e.b if e.a == node else e.a for e in self.adjacency[node]]


@dataclass(frozen=True)
class UnweightedGraph:
    """Bare edge set over hyperedges; ids follow the same rule as :class:`LineGraph`."""

    nodes: tuple[str, ...]
    edges: tuple[tuple[int, str, str], ...] = field(default=())

    @classmethod
    def from_pairs(cls, nodes: Iterable[str], pairs: Iterable[tuple[str, str]]) -> UnweightedGraph:
        nodes = tuple(sorted(nodes, key=sort_key))
        return cls(nodes, tuple((k, a, b) for k, (a, b) in enumerate(_canonical_pairs(nodes, pairs))))

    def pairs(self) -> set[frozenset[str]]:
        return {frozenset((a, b)) for _, a, b in self.edges}


def line_graph(h: Hypergraph) -> LineGraph:
    """Line graph computed directly from the hypergraph (vertex neighborhoods)."""
    labels: dict[tuple[str, str], set[str]] = defaultdict(set)
    for x, rels in h.incidence.items():
        for k, a in enumerate(rels):
            for b in rels[k + 1:]:
                labels[(a, b)].add(x)
    return LineGraph.from_weighted(h.edges, labels)


def _relation(a: int) -> str:
    return f"R{a}"


def _attribute(a: int, i: int) -> str:
    return f"R{a}.{i}"


def _components(preds: Iterable[Predicate]) -> dict[tuple[int, int], tuple[int, int]]:
    """Map each joined attribute to the smallest attribute of its component.

    Adjacency lists keyed by attribute stand in for the perfect hash of the
    attribute pair; traversal is an iterative DFS, linear in the predicate count.
    """
    adj: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for p in preds:
        adj[(p.a, p.i)].append((p.b, p.j))
        adj[(p.b, p.j)].append((p.a, p.i))
    comp: dict[tuple[int, int], tuple[int, int]] = {}
    for start in adj:
        if start in comp:
            continue
        members = [start]
        comp[start] = start
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in comp:
                    comp[v] = start
                    members.append(v)
                    stack.append(v)
        rep = min(members)
        for m in members:
            comp[m] = rep
    return comp


def query_relations(preds: Iterable[Predicate]) -> dict[str, frozenset[str]]:
    """One variable per connected component of the predicate graph.

    Each relation maps to the set of components its joined attributes fall
    into. Variable names are the smallest attribute of the component, e.g.
    ``R1.1``. Transitively implied predicates may be omitted. Relations may
    come out with identical variable sets; see :func:`build_hypergraph`.
    """
    preds = list(preds)
    if not preds:
        raise QueryParseError("query has no join predicates")
    relations: dict[str, set[str]] = defaultdict(set)
    for (a, i), (ca, ci) in _components(preds).items():
        relations[_relation(a)].add(_attribute(ca, ci))
    return {r: frozenset(vs) for r, vs in sorted(relations.items(), key=lambda kv: sort_key(kv[0]))}


def build_hypergraph(preds: Iterable[Predicate]) -> Hypergraph:
    """Query hypergraph; relations with identical variable sets are merged with a warning."""
    return Hypergraph.from_relations(query_relations(preds))


def build_line_graph(preds: Iterable[Predicate]) -> LineGraph:
    """Weighted line graph of a query via a counting-array pass.

    Predicates are first resolved to variables (the same components used by
    :func:`build_hypergraph`), giving a multigraph with one parallel edge per
    shared variable between two relations. A per-relation counter then folds
    the parallel edges into weights, resetting as it emits each neighbor.
    """
    preds = list(preds)
    h = build_hypergraph(preds)
    # multigraph M: relation -> [(neighbor, variable)], one entry per shared variable
    multi: dict[str, list[tuple[str, str]]] = {r: [] for r in h.edges}
    for x, rels in h.incidence.items():
        for r in rels:
            for s in rels:
                if s != r:
                    multi[r].append((s, x))
    weight: dict[str, int] = dict.fromkeys(h.edges, 0)
    shared: dict[str, list[str]] = {r: [] for r in h.edges}
    labels: dict[tuple[str, str], list[str]] = {}
    for r in h.edges:
        for s, x in multi[r]:
            weight[s] += 1
            shared[s].append(x)
        for s, _ in multi[r]:
            if weight[s] != 0:
                if h.index[r] < h.index[s]:
                    labels[(r, s)] = shared[s]
                weight[s] = 0
                shared[s] = []
    return LineGraph.from_weighted(h.edges, labels)


def hypergraph_from_json(doc: object) -> Hypergraph:
    if not isinstance(doc, dict) or not isinstance(doc.get("relations"), dict):
        raise HypergraphFormatError('expected {"relations": {"name": ["var", ...], ...}}')
    rels = doc["relations"]
    if not rels:
        raise HypergraphFormatError("relations object is empty")
    for name, verts in rels.items():
        if not isinstance(verts, list):
            raise HypergraphFormatError(f"relation {name!r} must map to a list of variables")
        if not verts:
            raise HypergraphFormatError(f"hyperedge {name!r} is empty")
    return Hypergraph.from_relations({str(k): [str(v) for v in vs] for k, vs in rels.items()})


def hypergraph_from_file(path: str | Path) -> Hypergraph:
    """Load the JSON hypergraph format ``{"relations": {...}}``."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise HypergraphFormatError(f"{path}: invalid JSON: {exc}") from exc
    return hypergraph_from_json(doc)


def load_hypergraph(path: str | Path) -> Hypergraph:
    """Load either format: JSON when the file starts with ``{``, predicate text otherwise."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise HypergraphFormatError(f"{path}: invalid JSON: {exc}") from exc
        return hypergraph_from_json(doc)
    return build_hypergraph(parse_query(text))


def connected_components(h: Hypergraph) -> list[Hypergraph]:
    """Split by line-graph connectivity, ordered by each component's first edge."""
    parent = {r: r for r in h.edges}

    def find(r: str) -> str:
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for rels in h.incidence.values():
        root = find(rels[0])
        for s in rels[1:]:
            rs = find(s)
            if rs != root:
                parent[rs] = root
    groups: dict[str, list[str]] = defaultdict(list)
    for r in h.edges:
        groups[find(r)].append(r)
    return [h.restrict(g) for g in sorted(groups.values(), key=lambda g: h.index[g[0]])]


def is_connected(h: Hypergraph) -> bool:
    return len(connected_components(h)) == 1
