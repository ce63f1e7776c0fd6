"""Graph representation and exact computation of the four network statistics.

A graph here is an undirected simple labeled graph whose nodes may carry a
provider-type label. The four statistics are the edge count, the degree
distribution, the type-mixing matrix, and the degree-mixing matrix. Each one
partitions the set of labeled graphs on n nodes into congruence classes; the
enumeration module sizes those classes.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from .errors import DomainError, ParseError, TypedAttributeMissingError

__all__ = [
    "NodeType",
    "Graph",
    "StatisticKind",
    "StatisticValue",
    "compute_statistic",
    "statistic_key",
    "graph_to_json",
    "graph_from_json",
    "load_graph",
    "save_graph",
    "representative_degree_sequence",
]


class NodeType(enum.Enum):
    PRIMARY = "primary"
    SPECIALTY = "specialty"
    UNTYPED = "untyped"


class StatisticKind(enum.Enum):
    EDGE_COUNT = "edges"
    DEGREE_DISTRIBUTION = "degdist"
    TYPE_MIXING = "typemix"
    DEGREE_MIXING = "degmix"


@dataclass(frozen=True)
class Graph:
    """Undirected simple labeled graph with optional per-node types.

    Edges are stored as a frozenset of index pairs (i, j) with i < j.
    Instances are immutable after construction and safe for concurrent
    reads; derived views (degrees, adjacency) are computed on demand and
    cached.
    """

    node_ids: tuple[str, ...]
    node_type: tuple[NodeType, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = len(self.node_ids)
        if n < 1:
            raise DomainError("a graph needs at least one node")
        if len(self.node_type) != n:
            raise DomainError("node_type length must match node_ids length")
        for i, j in self.edges:
            if i == j:
                raise DomainError(f"self-loop at node index {i}")
            if not (0 <= i < j < n):
                raise DomainError(f"edge ({i},{j}) not canonical for n={n}")

    @staticmethod
    def build(node_ids: Sequence[str], edges, node_type: Sequence[NodeType] | None = None) -> "Graph":
        """Construct from any edge iterable; pairs are canonicalized to i < j."""
        ids = tuple(str(x) for x in node_ids)
        if node_type is None:
            types = tuple(NodeType.UNTYPED for _ in ids)
        else:
            types = tuple(node_type)
        canon = frozenset((min(i, j), max(i, j)) for i, j in edges)
        return Graph(ids, types, canon)

    @property
    def n(self) -> int:
        return len(self.node_ids)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_degrees")
        if cached is None:
            deg = [0] * self.n
            for i, j in self.edges:
                deg[i] += 1
                deg[j] += 1
            cached = tuple(deg)
            object.__setattr__(self, "_degrees", cached)
        return cached

    def adjacency(self) -> tuple[frozenset, ...]:
        cached = self.__dict__.get("_adjacency")
        if cached is None:
            adj = [set() for _ in range(self.n)]
            for i, j in self.edges:
                adj[i].add(j)
                adj[j].add(i)
            cached = tuple(frozenset(s) for s in adj)
            object.__setattr__(self, "_adjacency", cached)
        return cached

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        return (min(i, j), max(i, j)) in self.edges


@dataclass(frozen=True)
class StatisticValue:
    """Tagged value of one of the four statistic maps.

    Only the field matching ``kind`` is populated:
      edge_count          -- total number of edges
      degree_distribution -- D with D[k] = number of vertices of degree k,
                             dense from 0 up to the maximum observed degree
      type_mixing         -- (E_pp, E_ps, E_ss) edge counts by endpoint types
      degree_mixing       -- sparse map (k, l) -> edge count with k <= l,
                             each edge counted once under its endpoint degrees

    node_count is recorded for every kind; type_counts = (n_primary,
    n_specialty) accompanies type_mixing, since the class lives inside the
    set of graphs with that fixed type assignment.
    """

    kind: StatisticKind
    edge_count: int | None = None
    degree_distribution: tuple[int, ...] | None = None
    type_mixing: tuple[int, int, int] | None = None
    degree_mixing: Mapping[tuple[int, int], int] | None = None
    node_count: int | None = field(default=None)
    type_counts: tuple[int, int] | None = field(default=None)

    def __post_init__(self):
        if self.degree_mixing is not None and not isinstance(self.degree_mixing, MappingProxyType):
            object.__setattr__(self, "degree_mixing", MappingProxyType(dict(self.degree_mixing)))


def compute_statistic(g: Graph, kind: StatisticKind) -> StatisticValue:
    """Exact statistic of ``g``; deterministic, does not modify the graph."""
    if kind is StatisticKind.EDGE_COUNT:
        return StatisticValue(kind, edge_count=g.edge_count, node_count=g.n)

    if kind is StatisticKind.DEGREE_DISTRIBUTION:
        deg = g.degrees()
        dist = [0] * (max(deg) + 1)
        for d in deg:
            dist[d] += 1
        return StatisticValue(kind, degree_distribution=tuple(dist), node_count=g.n)

    if kind is StatisticKind.TYPE_MIXING:
        counts = {"pp": 0, "ps": 0, "ss": 0}
        types = g.node_type
        for idx, t in enumerate(types):
            if t is NodeType.UNTYPED:
                raise TypedAttributeMissingError(
                    f"node {g.node_ids[idx]!r} (index {idx}) has no type; "
                    "type mixing requires every node typed"
                )
        for i, j in g.edges:
            a, b = types[i], types[j]
            if a is NodeType.PRIMARY and b is NodeType.PRIMARY:
                counts["pp"] += 1
            elif a is NodeType.SPECIALTY and b is NodeType.SPECIALTY:
                counts["ss"] += 1
            else:
                counts["ps"] += 1
        n_p = sum(1 for t in types if t is NodeType.PRIMARY)
        return StatisticValue(
            kind,
            type_mixing=(counts["pp"], counts["ps"], counts["ss"]),
            node_count=g.n,
            type_counts=(n_p, g.n - n_p),
        )

    if kind is StatisticKind.DEGREE_MIXING:
        deg = g.degrees()
        cells: dict[tuple[int, int], int] = {}
        for i, j in g.edges:
            k, l = sorted((deg[i], deg[j]))
            cells[(k, l)] = cells.get((k, l), 0) + 1
        return StatisticValue(kind, degree_mixing=cells, node_count=g.n)

    raise DomainError(f"unknown statistic kind: {kind!r}")


def statistic_key(sv: StatisticValue):
    """Hashable canonical key for a StatisticValue, for table lookups."""
    if sv.kind is StatisticKind.EDGE_COUNT:
        return sv.edge_count
    if sv.kind is StatisticKind.DEGREE_DISTRIBUTION:
        dist = list(sv.degree_distribution)
        while len(dist) > 1 and dist[-1] == 0:
            dist.pop()
        return tuple(dist)
    if sv.kind is StatisticKind.TYPE_MIXING:
        return sv.type_mixing
    if sv.kind is StatisticKind.DEGREE_MIXING:
        return tuple(sorted((k, l, c) for (k, l), c in sv.degree_mixing.items() if c))
    raise DomainError(f"unknown statistic kind: {sv.kind!r}")


def representative_degree_sequence(distribution: Sequence[int]) -> tuple[int, ...]:
    """One labeled degree sequence realizing a degree distribution.

    Degrees are emitted in descending order: k repeated D[k] times.
    """
    out: list[int] = []
    for k in range(len(distribution) - 1, -1, -1):
        out.extend([k] * distribution[k])
    return tuple(out)


_TYPE_TO_JSON = {NodeType.PRIMARY: "primary", NodeType.SPECIALTY: "specialty", NodeType.UNTYPED: None}
_JSON_TO_TYPE = {"primary": NodeType.PRIMARY, "specialty": NodeType.SPECIALTY, None: NodeType.UNTYPED}


def graph_to_json(g: Graph) -> str:
    """Canonical JSON serialization.

    Fields {nodes: [{id, type}], edges: [[i, j], ...]} with 0-based indices,
    i < j, edges sorted lexicographically. The byte output is stable for a
    given graph so golden files can compare exactly.
    """
    obj = {
        "nodes": [
            {"id": g.node_ids[i], "type": _TYPE_TO_JSON[g.node_type[i]]} for i in range(g.n)
        ],
        "edges": [list(e) for e in sorted(g.edges)],
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


def graph_from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid graph JSON: {exc.msg}", line=exc.lineno) from exc
    try:
        nodes = obj["nodes"]
        edges = obj["edges"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"graph JSON missing required field: {exc}") from exc
    ids = []
    types = []
    for entry in nodes:
        ids.append(str(entry["id"]))
        tval = entry.get("type")
        if tval not in _JSON_TO_TYPE:
            raise DomainError(f"unknown node type {tval!r}")
        types.append(_JSON_TO_TYPE[tval])
    return Graph.build(ids, [(int(i), int(j)) for i, j in edges], types)


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json(fh.read())


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(graph_to_json(g))
