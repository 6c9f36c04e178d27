"""Seeded test-graph generators.

Every generator is a pure function of its arguments including the seed, so
runs are reproducible from their recorded configuration alone.
"""

from __future__ import annotations

import numpy as np

from .errors import InternalInvariantError, UsageError
from .graph import Edge, Graph
from .rng import substream

__all__ = [
    "uniform_edges",
    "regular_graph",
    "star_forest_graph",
    "path_union_graph",
    "GENERATOR_MODELS",
]


def uniform_edges(n: int, m: int, seed: int) -> Graph:
    """Uniformly random graph with exactly ``n`` vertices and ``m`` edges."""
    if n < 0 or m < 0:
        raise UsageError("vertex and edge counts must be non-negative")
    total = n * (n - 1) // 2
    if m > total:
        raise UsageError(f"{m} edges do not fit in {n} vertices")
    if m == 0:
        return Graph(n, frozenset())
    rng = substream(seed, "uniform-edges")
    if total <= 4_000_000:
        rows, cols = np.triu_indices(n, k=1)
        picked = rng.choice(total, size=m, replace=False)
        edges = frozenset(
            (int(rows[i]), int(cols[i])) for i in picked
        )
    else:
        # Sparse regime: rejection sampling stays fast because m << total.
        chosen: set[Edge] = set()
        while len(chosen) < m:
            u = int(rng.integers(0, n))
            v = int(rng.integers(0, n))
            if u != v:
                chosen.add((u, v) if u < v else (v, u))
        edges = frozenset(chosen)
    return Graph(n, edges)


def regular_graph(n: int, d: int, seed: int) -> Graph:
    """Random ``d``-regular simple graph via stub pairing plus swap repair.

    A uniform pairing of degree stubs almost always contains a few loops or
    parallel edges; those are removed by random degree-preserving edge swaps,
    which converge quickly at any feasible ``(n, d)``.
    """
    if n < 0 or d < 0:
        raise UsageError("counts must be non-negative")
    if d >= n and not (n == 0 and d == 0):
        raise UsageError("degree must be below the vertex count")
    if (n * d) % 2 != 0:
        raise UsageError("n * d must be even for a d-regular graph")
    if d == 0 or n == 0:
        return Graph(n, frozenset())

    rng = substream(seed, "regular")
    stubs = np.repeat(np.arange(n), d)
    rng.shuffle(stubs)
    pairs: list[list[int]] = [
        [int(stubs[2 * i]), int(stubs[2 * i + 1])] for i in range(len(stubs) // 2)
    ]

    def canon(p: list[int]) -> Edge:
        return (p[0], p[1]) if p[0] < p[1] else (p[1], p[0])

    counts: dict[Edge, int] = {}
    for p in pairs:
        if p[0] != p[1]:
            counts[canon(p)] = counts.get(canon(p), 0) + 1

    def is_bad(p: list[int]) -> bool:
        return p[0] == p[1] or counts[canon(p)] > 1

    budget = 200 * len(pairs) + 1000
    while budget > 0:
        bad = [i for i, p in enumerate(pairs) if is_bad(p)]
        if not bad:
            break
        i = int(bad[int(rng.integers(0, len(bad)))])
        j = int(rng.integers(0, len(pairs)))
        if i == j:
            budget -= 1
            continue
        a, b = pairs[i]
        c, d2 = pairs[j]
        if int(rng.integers(0, 2)):
            c, d2 = d2, c
        new1, new2 = [a, c], [b, d2]
        if new1[0] == new1[1] or new2[0] == new2[1]:
            budget -= 1
            continue
        e1, e2 = canon(new1), canon(new2)
        if e1 == e2 or counts.get(e1, 0) > 0 or counts.get(e2, 0) > 0:
            budget -= 1
            continue
        for old in (pairs[i], pairs[j]):
            if old[0] != old[1]:
                key = canon(old)
                counts[key] -= 1
                if counts[key] == 0:
                    del counts[key]
        pairs[i], pairs[j] = new1, new2
        counts[e1] = 1
        counts[e2] = 1
        budget -= 1
    else:
        raise InternalInvariantError("edge-swap repair did not converge")

    if any(is_bad(p) for p in pairs):
        raise InternalInvariantError("edge-swap repair did not converge")
    g = Graph(n, frozenset(canon(p) for p in pairs))
    if any(g.degree(v) != d for v in range(n)):
        raise InternalInvariantError("repair broke regularity")
    return g


def star_forest_graph(n: int, d: int, seed: int) -> Graph:
    """Disjoint stars with ``d`` leaves each; leftover vertices are isolated.

    Layout is deterministic; the seed is accepted for interface uniformity.
    """
    del seed
    if n < 0 or d < 1:
        raise UsageError("need non-negative n and at least one leaf per star")
    edges = set()
    block = d + 1
    for start in range(0, n - block + 1, block):
        for leaf in range(start + 1, start + block):
            edges.add((start, leaf))
    return Graph(n, frozenset(edges))


def path_union_graph(n: int, d: int, seed: int) -> Graph:
    """Disjoint paths on ``d`` vertices each; leftover vertices are isolated.

    Layout is deterministic; the seed is accepted for interface uniformity.
    """
    del seed
    if n < 0 or d < 2:
        raise UsageError("need non-negative n and paths on at least 2 vertices")
    edges = set()
    for start in range(0, n - d + 1, d):
        for v in range(start, start + d - 1):
            edges.add((v, v + 1))
    return Graph(n, frozenset(edges))


GENERATOR_MODELS = {
    "uniform-m": uniform_edges,
    "d-regular": regular_graph,
    "star-forest": star_forest_graph,
    "path-union": path_union_graph,
}
