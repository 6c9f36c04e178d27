"""Randomized extraction of dense subgraphs with no long paths.

The core move: split a vertex set ``core`` into a random half ``A`` (resampled
until at least half of all edges leave it), scatter ``A`` uniformly into
``q = floor((6/k) * ceil(|core|/2))`` parts, and send every other vertex to
the part holding most of its neighbours.  The union of the block-internal
bipartite graphs ``G[A_i, B_i]`` keeps, in expectation, a max-load fraction of
the crossing edges, while small parts force short paths: a path inside a block
alternates sides, so ``|A_i| < k/2 - 1`` caps it below ``k`` vertices.

Results carry a machine-checked certificate: ``part-size`` (every
``|A_i| < k/2 - 1``), the weaker but still sound ``block-path``
(``2 max|A_i| + 1 < k``, the exact alternation bound), or
``component-order`` (every connected component of the kept subgraph has
fewer than ``k`` vertices).  Uncertified attempts are never promoted.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation, InternalInvariantError, UsageError
from .graph import Edge, Graph, random_balanced_bipartition
from .rng import substream

__all__ = [
    "greedy_bin_assignment",
    "BlockSplit",
    "block_partition",
    "ExtractionResult",
    "extract_path_free_subgraph",
    "DegreeClass",
    "Decomposition",
    "degree_class_decompose",
    "BandExtraction",
    "extract_from_densest_band",
    "DEFAULT_BAND_RATIO",
    "DEFAULT_SELECT_RATIO",
]

# Band geometry and selection thresholds: each degree band spans a factor
# e^-2, and band j is picked when it holds at least an e^-j share of the
# edges.  Stored as the exact rationals of the IEEE doubles so that all
# threshold comparisons are exact; any constants in a small neighbourhood
# would do (the selection argument only needs 1/3 + c/(1-c) < 1).
DEFAULT_BAND_RATIO = Fraction(math.exp(-2))
DEFAULT_SELECT_RATIO = Fraction(math.exp(-1))


def greedy_bin_assignment(
    g: Graph, a_parts: Sequence[frozenset[int]], b: Iterable[int]
) -> tuple[frozenset[int], ...]:
    """Send each vertex of ``b`` to the part with most of its neighbours.

    Ties break to the lowest part index, so the outcome does not depend on
    iteration order; a vertex with no neighbour in any part lands in part 0.
    """
    owner: dict[int, int] = {}
    for i, part in enumerate(a_parts):
        for v in part:
            if v in owner:
                raise ContractViolation(f"vertex {v} appears in two parts")
            owner[v] = i
    out: list[set[int]] = [set() for _ in a_parts]
    for x in b:
        if x in owner:
            raise ContractViolation(f"vertex {x} is on both sides of the split")
        counts = [0] * len(a_parts)
        for w in g.neighbours(x):
            i = owner.get(w)
            if i is not None:
                counts[i] += 1
        out[max(range(len(a_parts)), key=lambda i: (counts[i], -i))].add(x)
    return tuple(frozenset(part) for part in out)


@dataclass(frozen=True)
class BlockSplit:
    """One random block structure: A-parts, matched B-parts, and kept edges."""

    a_parts: tuple[frozenset[int], ...]
    b_parts: tuple[frozenset[int], ...]
    kept_edges: frozenset[Edge]


def block_partition(
    g: Graph, a: frozenset[int], b: frozenset[int], q: int, rng: np.random.Generator
) -> BlockSplit:
    """Scatter ``a`` into ``q`` uniform parts, assign ``b`` greedily, keep blocks.

    The kept edges are exactly those running between ``A_i`` and ``B_i`` for
    some shared ``i``; edges inside ``b`` or across blocks are dropped.
    """
    if q < 1:
        raise UsageError("need at least one block")
    if a & b:
        raise ContractViolation("split sides overlap")
    ordered = sorted(a)
    labels = rng.integers(0, q, size=len(ordered))
    a_parts = tuple(
        frozenset(v for v, lab in zip(ordered, labels) if lab == i) for i in range(q)
    )
    b_parts = greedy_bin_assignment(g, a_parts, sorted(b))
    owner_a: dict[int, int] = {v: i for i, part in enumerate(a_parts) for v in part}
    owner_b: dict[int, int] = {v: i for i, part in enumerate(b_parts) for v in part}
    kept = frozenset(
        e
        for e in g.edges
        if (
            owner_a.get(e[0], -1) == owner_b.get(e[1], -2)
            or owner_a.get(e[1], -1) == owner_b.get(e[0], -2)
        )
    )
    return BlockSplit(a_parts, b_parts, kept)


@dataclass(frozen=True)
class ExtractionResult:
    """Best block subgraph found over the trial budget.

    ``certificate`` is "part-size", "block-path" or "component-order" when
    ``certified`` (or "empty" for an edgeless input); an uncertified result
    reports the best raw attempt but must not be used as a colour class.
    """

    subgraph: Graph
    a_parts: tuple[frozenset[int], ...]
    b_parts: tuple[frozenset[int], ...]
    q: int
    q_clamped: bool
    k: int
    certified: bool
    certificate: str | None
    crossing_edges: int
    trials_run: int
    chosen_trial: int | None
    mean_edges: float


def _component_orders_below(g: Graph, limit: int) -> bool:
    seen: set[int] = set()
    for start in g.non_isolated():
        if start in seen:
            continue
        stack, comp = [start], {start}
        while stack:
            x = stack.pop()
            for y in g.neighbours(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        if len(comp) >= limit:
            return False
        seen |= comp
    return True


def extract_path_free_subgraph(
    g: Graph,
    core: Iterable[int],
    independent: Iterable[int],
    k: int,
    trials: int = 200,
    seed: int = 0,
    threads: int = 1,
) -> ExtractionResult:
    """Run the block-split extraction and return the best certified attempt.

    Preconditions: ``core`` and ``independent`` are disjoint, every edge of
    ``g`` has at least one endpoint in ``core``, ``independent`` spans no
    edge, and ``k >= 4``.  Each trial draws its own substream of ``seed``,
    so results do not depend on execution order or thread count.
    """
    core_set = frozenset(core)
    indep_set = frozenset(independent)
    if not core_set:
        raise ContractViolation("core vertex set is empty")
    if core_set & indep_set:
        raise ContractViolation("core and independent sets overlap")
    if k < 4:
        raise UsageError("extraction certificates need k >= 4")
    if trials < 1:
        raise UsageError("need at least one trial")
    for u, v in g.edges:
        if u not in core_set and v not in core_set:
            raise ContractViolation(f"edge ({u}, {v}) avoids the core")
        if u in indep_set and v in indep_set:
            raise ContractViolation(f"edge ({u}, {v}) inside the independent set")

    half = (len(core_set) + 1) // 2
    q_raw = (6 * half) // k
    q = max(1, q_raw)

    def run_trial(t: int) -> tuple[BlockSplit, int, str | None]:
        rng = substream(seed, "extract-trial", t)
        bp = random_balanced_bipartition(g, core_set, rng)
        split = block_partition(g, bp.a, bp.rest | indep_set, q, rng)
        certificate = None
        # a path inside block (A_i, B_i) alternates sides, so it has at
        # most 2|A_i| + 1 vertices; blocks are vertex-disjoint
        widest = max((len(part) for part in split.a_parts), default=0)
        if 2 * widest < k - 2:
            certificate = "part-size"
        elif 2 * widest + 1 < k:
            certificate = "block-path"
        else:
            kept = Graph(g.vertex_count, split.kept_edges)
            if _component_orders_below(kept, k):
                certificate = "component-order"
        return split, bp.crossing_edges, certificate

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run_trial, range(trials)))
    else:
        outcomes = [run_trial(t) for t in range(trials)]

    mean_edges = float(np.mean([len(split.kept_edges) for split, _, _ in outcomes]))
    best_t: int | None = None
    best_uncert: int | None = None
    for t, (split, _, certificate) in enumerate(outcomes):
        if certificate is not None:
            if best_t is None or len(split.kept_edges) > len(
                outcomes[best_t][0].kept_edges
            ):
                best_t = t
        elif best_uncert is None or len(split.kept_edges) > len(
            outcomes[best_uncert][0].kept_edges
        ):
            best_uncert = t

    chosen = best_t if best_t is not None else best_uncert
    assert chosen is not None
    split, crossing, certificate = outcomes[chosen]
    return ExtractionResult(
        subgraph=Graph(g.vertex_count, split.kept_edges),
        a_parts=split.a_parts,
        b_parts=split.b_parts,
        q=q,
        q_clamped=q_raw < 1,
        k=k,
        certified=best_t is not None,
        certificate=certificate if best_t is not None else None,
        crossing_edges=crossing,
        trials_run=trials,
        chosen_trial=chosen,
        mean_edges=mean_edges,
    )


@dataclass(frozen=True)
class DegreeClass:
    """One degree band: vertices with current degree in [lower, upper]."""

    level: int
    lower: Fraction
    upper: Fraction
    vertices: frozenset[int]
    graph: Graph  # every edge here touches ``vertices``


@dataclass(frozen=True)
class Decomposition:
    classes: tuple[DegreeClass, ...]
    residual: Graph
    residual_vertices: frozenset[int]
    band_ratio: Fraction
    degree_floor: Fraction


def degree_class_decompose(
    g: Graph,
    band_ratio: Fraction = DEFAULT_BAND_RATIO,
    degree_floor: Fraction | int = Fraction(1),
) -> Decomposition:
    """Peel vertices band by band in geometrically shrinking degree ranges.

    Band ``j`` collects the so-far-unclassified vertices whose remaining
    degree lies in ``[ratio^j * D, ratio^(j-1) * D]`` (``D`` the original max
    degree) together with all their remaining edges.  Peeling stops at the
    first ``T`` with ``ratio^T * D <= degree_floor``; whatever is left is the
    residual, whose degrees are all at or below the floor.
    """
    ratio = Fraction(band_ratio)
    floor = Fraction(degree_floor)
    if not 0 < ratio < 1:
        raise UsageError("band ratio must lie strictly between 0 and 1")
    if floor <= 0:
        raise UsageError("degree floor must be positive")

    delta = g.max_degree
    bands = 0
    bound = Fraction(delta)
    while bound > floor:
        bound *= ratio
        bands += 1

    remaining = g
    classified: set[int] = set()
    classes: list[DegreeClass] = []
    for j in range(1, bands + 1):
        upper = ratio ** (j - 1) * delta
        lower = ratio**j * delta
        members = frozenset(
            v
            for v in range(g.vertex_count)
            if v not in classified and remaining.degree(v) >= lower
        )
        for v in members:
            if remaining.degree(v) > upper:
                raise InternalInvariantError(
                    f"band {j} saw degree {remaining.degree(v)} above {upper}"
                )
        taken = frozenset(
            e for e in remaining.edges if e[0] in members or e[1] in members
        )
        classes.append(
            DegreeClass(j, lower, upper, members, Graph(g.vertex_count, taken))
        )
        remaining = Graph(g.vertex_count, remaining.edges - taken)
        classified |= members

    leftovers = frozenset(v for v in range(g.vertex_count) if v not in classified)
    for v in leftovers:
        if remaining.degree(v) > floor:
            raise InternalInvariantError("residual degree above the floor")
    if sum(c.graph.edge_count for c in classes) + remaining.edge_count != g.edge_count:
        raise InternalInvariantError("decomposition lost or duplicated edges")
    return Decomposition(
        classes=tuple(classes),
        residual=remaining,
        residual_vertices=leftovers,
        band_ratio=ratio,
        degree_floor=floor,
    )


@dataclass(frozen=True)
class BandExtraction:
    """Outcome of extracting from the densest degree band (or the residual)."""

    extraction: ExtractionResult
    selection: str  # "band", "residual", or "empty"
    band_level: int | None
    selected_edges: int
    total_edges: int
    achieved_ratio: Fraction
    reference_ratio: float
    bands: int


def extract_from_densest_band(
    g: Graph,
    beta: float,
    r: int,
    k: int,
    trials: int = 200,
    seed: int = 0,
    threads: int = 1,
    band_ratio: Fraction = DEFAULT_BAND_RATIO,
    select_ratio: Fraction = DEFAULT_SELECT_RATIO,
) -> BandExtraction:
    """Decompose by degree bands, pick a dense piece, extract path-free edges.

    Band ``j`` is selected if it holds at least a ``select_ratio^j`` share of
    the edges (first such ``j``); otherwise the residual, which then holds at
    least a third of the edges.  One of the two always fires because the
    geometric shares plus a third sum below 1.  ``reference_ratio`` records
    the asymptotic yardstick ``60 / (beta^0.9 * r)`` for e(H)/e(G); it is
    informational and not a promise at small scale.
    """
    if beta <= 0:
        raise UsageError("density parameter beta must be positive")
    if r < 1:
        raise UsageError("colour budget r must be positive")
    reference = 60.0 / (beta**0.9 * r)
    if g.edge_count == 0:
        empty = ExtractionResult(
            subgraph=Graph(g.vertex_count, frozenset()),
            a_parts=(),
            b_parts=(),
            q=1,
            q_clamped=False,
            k=k,
            certified=True,
            certificate="empty",
            crossing_edges=0,
            trials_run=0,
            chosen_trial=None,
            mean_edges=0.0,
        )
        return BandExtraction(empty, "empty", None, 0, 0, Fraction(0), reference, 0)

    decomp = degree_class_decompose(g, band_ratio, Fraction(r))
    total = g.edge_count

    chosen_band: DegreeClass | None = None
    for cls in decomp.classes:
        if cls.graph.edge_count >= Fraction(select_ratio) ** cls.level * total:
            chosen_band = cls
            break

    if chosen_band is not None:
        band_graph = chosen_band.graph
        touched = frozenset(v for e in band_graph.edges for v in e)
        result = extract_path_free_subgraph(
            band_graph,
            core=chosen_band.vertices,
            independent=touched - chosen_band.vertices,
            k=k,
            trials=trials,
            seed=seed,
            threads=threads,
        )
        selection, level, selected = "band", chosen_band.level, band_graph.edge_count
    else:
        residual = decomp.residual
        if 3 * residual.edge_count < total:
            raise InternalInvariantError(
                "neither a dense band nor a dense residual exists"
            )
        result = extract_path_free_subgraph(
            residual,
            core=decomp.residual_vertices,
            independent=frozenset(),
            k=k,
            trials=trials,
            seed=seed,
            threads=threads,
        )
        selection, level, selected = "residual", None, residual.edge_count

    return BandExtraction(
        extraction=result,
        selection=selection,
        band_level=level,
        selected_edges=selected,
        total_edges=total,
        achieved_ratio=Fraction(result.subgraph.edge_count, total),
        reference_ratio=reference,
        bands=len(decomp.classes),
    )
