"""Simple undirected graphs on vertices ``0..n-1``.

Edges are canonical ``(u, v)`` tuples with ``u < v``; loops and parallel
edges are rejected at construction.  Instances are immutable, so derived
graphs (edge removal, induced bipartite subgraphs) are new objects sharing
nothing mutable with their parent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import ContractViolation, InternalInvariantError, UsageError

__all__ = [
    "Graph",
    "Bipartition",
    "VertexPartition",
    "parse_edge_list",
    "serialize_edge_list",
    "subtract",
    "induced_bipartite",
    "random_balanced_bipartition",
]

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ContractViolation(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``edges`` holds canonical ``u < v`` pairs."""

    vertex_count: int
    edges: frozenset[Edge]

    @staticmethod
    def build(vertex_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if vertex_count < 0:
            raise ContractViolation("vertex_count must be non-negative")
        canon: set[Edge] = set()
        for u, v in edges:
            e = canonical_edge(u, v)
            if not (0 <= e[0] and e[1] < vertex_count):
                raise ContractViolation(
                    f"edge {e} has an endpoint outside 0..{vertex_count - 1}"
                )
            if e in canon:
                raise ContractViolation(f"duplicate edge {e}")
            canon.add(e)
        return Graph(vertex_count, frozenset(canon))

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in range(self.vertex_count)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    @cached_property
    def max_degree(self) -> int:
        if self.vertex_count == 0:
            return 0
        return max(len(ns) for ns in self.adjacency.values())

    def non_isolated(self) -> frozenset[int]:
        return frozenset(v for v, ns in self.adjacency.items() if ns)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.sorted_edges())


@dataclass(frozen=True)
class Bipartition:
    """A split of a vertex set with the number of edges it cuts in the host graph."""

    a: frozenset[int]
    rest: frozenset[int]
    crossing_edges: int
    tries: int


@dataclass(frozen=True)
class VertexPartition:
    """Pairwise disjoint parts covering ``universe`` exactly."""

    universe: frozenset[int]
    parts: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for part in self.parts:
            if part & seen:
                raise ContractViolation("partition parts overlap")
            seen.update(part)
        if seen != set(self.universe):
            raise ContractViolation("partition parts do not cover the universe")

    def part_of(self) -> dict[int, int]:
        owner: dict[int, int] = {}
        for i, part in enumerate(self.parts):
            for v in part:
                owner[v] = i
        return owner


def read_header_fields(text: str, keys: tuple[str, ...]) -> dict[str, int]:
    """Collect ``key=<int>`` tokens from ``#`` comment lines; first one wins."""
    found: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line.startswith("#"):
            continue
        for token in line.lstrip("#").split():
            name, sep, value = token.partition("=")
            if sep and name in keys and name not in found:
                try:
                    found[name] = int(value)
                except ValueError:
                    raise UsageError(
                        f"line {lineno}: bad header value {token!r}"
                    ) from None
    return found


def _parse_rows(text: str, width: int) -> list[tuple[int, ...]]:
    rows: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != width:
            raise UsageError(
                f"line {lineno}: expected {width} integers, got {raw!r}"
            )
        try:
            rows.append(tuple(int(f) for f in fields))
        except ValueError:
            raise UsageError(
                f"line {lineno}: expected {width} integers, got {raw!r}"
            ) from None
    return rows


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list interchange format.

    An optional ``# n=<vertex_count>`` header fixes the vertex count
    (endpoints must then lie in ``0..n-1``); without it the count is one past
    the largest endpoint.  Data lines hold ``u v`` pairs; blank lines and
    ``#`` comments are ignored.  Loops and duplicate edges raise
    :class:`UsageError`.
    """
    declared = read_header_fields(text, ("n",)).get("n")
    if declared is not None and declared < 0:
        raise UsageError("header vertex count must be non-negative")
    edges: list[Edge] = []
    seen: set[Edge] = set()
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise UsageError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            x, y = int(fields[0]), int(fields[1])
        except ValueError:
            raise UsageError(
                f"line {lineno}: expected two integers, got {raw!r}"
            ) from None
        if x == y:
            raise UsageError(f"line {lineno}: loop at vertex {x}")
        if x < 0 or y < 0:
            raise UsageError(f"line {lineno}: negative vertex id")
        if declared is not None and (x >= declared or y >= declared):
            raise UsageError(f"line {lineno}: endpoint outside 0..{declared - 1}")
        e = canonical_edge(x, y)
        if e in seen:
            raise UsageError(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
        edges.append(e)
        top = max(top, y if y > x else x)
    n = declared if declared is not None else top + 1
    return Graph(n, frozenset(edges))


def serialize_edge_list(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# n={g.vertex_count}"]
    lines.extend(f"# {c}" for c in comments)
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def subtract(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    """Remove ``edges`` from ``g``; removing an absent edge is a contract error."""
    to_remove = {canonical_edge(u, v) for u, v in edges}
    missing = to_remove - g.edges
    if missing:
        raise ContractViolation(f"cannot remove absent edges, e.g. {min(missing)}")
    return Graph(g.vertex_count, g.edges - to_remove)


def induced_bipartite(g: Graph, a: Iterable[int], b: Iterable[int]) -> Graph:
    """Subgraph of ``g`` keeping exactly the edges with one endpoint in each set."""
    sa, sb = frozenset(a), frozenset(b)
    if sa & sb:
        raise ContractViolation("sides of a bipartite restriction must be disjoint")
    kept = frozenset(
        e for e in g.edges if (e[0] in sa and e[1] in sb) or (e[0] in sb and e[1] in sa)
    )
    return Graph(g.vertex_count, kept)


def crossing_edge_count(g: Graph, a: frozenset[int]) -> int:
    return sum(1 for u, v in g.edges if (u in a) != (v in a))


def random_balanced_bipartition(
    g: Graph,
    vertices: Iterable[int],
    rng: np.random.Generator,
    max_tries: int = 64,
) -> Bipartition:
    """Sample ``a`` of size ``ceil(|vertices|/2)`` cutting at least half of g's edges.

    Each try draws a uniform subset of the given size; the expected number of
    cut edges is at least ``e(g)/2`` (each edge crosses with probability at
    least 1/2 whether it has one or both endpoints among ``vertices``), so a
    qualifying draw appears within a few tries.  Exhausting ``max_tries`` is
    treated as an internal failure rather than a user error.
    """
    pool = sorted(set(vertices))
    if not pool:
        raise ContractViolation("cannot bipartition an empty vertex set")
    half = (len(pool) + 1) // 2
    target = g.edge_count / 2
    arr = np.array(pool)
    for attempt in range(1, max_tries + 1):
        chosen = rng.choice(arr, size=half, replace=False)
        a = frozenset(int(v) for v in chosen)
        crossing = crossing_edge_count(g, a)
        if crossing >= target:
            return Bipartition(a, frozenset(pool) - a, crossing, attempt)
    raise InternalInvariantError(
        f"no balanced split reached {target} crossing edges in {max_tries} tries"
    )
