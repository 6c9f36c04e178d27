"""Shared helpers for the test suite.

Random instances come from hand-rolled seeded loops (random.Random with a
fixed seed per test), so every failure reproduces with plain pytest and no
plugin state.
"""

import random
from itertools import combinations

import pytest

from pathfree import Graph


def random_graph(rnd: random.Random, n_max: int = 10, density: float = 0.4) -> Graph:
    """One random graph: n <= n_max vertices, each pair kept with ``density``."""
    n = rnd.randint(2, n_max)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rnd.random() < density]
    return Graph.build(n, edges)


def path_graph(n: int) -> Graph:
    return Graph.build(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.build(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.build(n, list(combinations(range(n), 2)))


def star_graph(leaves: int) -> Graph:
    return Graph.build(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def has_path_on(adjacency: dict[int, set[int]], k: int) -> bool:
    """Reference oracle: does any simple path span k vertices?

    Depth-first extension over all starts; exponential, fine below ~12
    vertices.  Kept independent of the package's own path search on purpose.
    """
    if k <= 1:
        return bool(adjacency) or k <= 0

    def extend(v: int, seen: set[int]) -> bool:
        if len(seen) >= k:
            return True
        for w in adjacency.get(v, ()):
            if w not in seen:
                seen.add(w)
                if extend(w, seen):
                    return True
                seen.remove(w)
        return False

    return any(extend(v, {v}) for v in adjacency)


def edge_adjacency(edges) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


@pytest.fixture
def rnd() -> random.Random:
    return random.Random(0xC0FFEE)
