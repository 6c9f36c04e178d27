"""Ground-truth checking of colourings against the long-path ban.

The package's convention throughout: a "path on k vertices" means k distinct
vertices joined by k-1 edges, so the forbidden object for parameter ``k`` is
any colour class containing a simple path with k vertices.

The verifier never trusts how a colouring was produced.  It splits the
coloured edges into monochromatic components and, for every component with at
least ``k`` vertices, runs an exact longest-path computation (bitmask dynamic
programming over connected vertex sets, early exit once ``k`` is reachable).

Components larger than the configured cap cannot be searched exactly.  Before
giving up, the verifier tries a vertex-cover certificate: every edge of a
path touches the cover and no two cover-free vertices are adjacent, so a path
on p vertices needs at least (p-1)/2 cover vertices; a greedy cover C with
2|C| + 1 < k therefore rules the path out.  Star-forest classes (bounded
centre sets) always certify this way.  Only components that are both over the
cap and cover-uncertifiable make the verdict ``indeterminate``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colouring import EdgeColouring
from .errors import ContractViolation, SizeCapError, UsageError
from .graph import Edge, Graph

__all__ = [
    "MonochromaticComponent",
    "monochromatic_components",
    "longest_path_exact",
    "longest_path_brute",
    "greedy_vertex_cover",
    "VerificationReport",
    "verify_colouring",
]

DEFAULT_COMPONENT_CAP = 24


@dataclass(frozen=True)
class MonochromaticComponent:
    colour: int
    vertices: tuple[int, ...]
    edge_count: int


def monochromatic_components(
    g: Graph, colouring: EdgeColouring
) -> dict[int, list[MonochromaticComponent]]:
    """Connected components of each colour class, keyed by colour."""
    stray = colouring.assignments.keys() - g.edges
    if stray:
        raise ContractViolation(
            f"colouring assigns edges absent from the graph, e.g. {min(stray)}"
        )
    by_colour: dict[int, list[MonochromaticComponent]] = {}
    for colour, edges in colouring.colour_classes().items():
        adj: dict[int, list[int]] = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        seen: set[int] = set()
        comps: list[MonochromaticComponent] = []
        for start in sorted(adj):
            if start in seen:
                continue
            stack, comp = [start], {start}
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            inside = sum(1 for u, v in edges if u in comp)
            comps.append(
                MonochromaticComponent(colour, tuple(sorted(comp)), inside)
            )
        by_colour[colour] = comps
    return by_colour


def _mask_path_search(
    adj: list[list[int]], stop_at: int | None
) -> tuple[int, list[int] | None]:
    """Longest simple path over adjacency lists on vertices 0..s-1.

    Layer L holds, for every connected vertex set of size L reachable as a
    path, the bitmask of feasible endpoints.  Early exit (with a witness)
    as soon as a path of ``stop_at`` vertices appears.
    """
    s = len(adj)
    if s == 0:
        return 0, None
    layers: list[dict[int, int]] = [{1 << v: 1 << v for v in range(s)}]
    if stop_at is not None and stop_at <= 1:
        return 1, [0]
    best = 1
    while True:
        frontier = layers[-1]
        grown: dict[int, int] = {}
        for mask, ends in frontier.items():
            rest = ends
            while rest:
                bit = rest & -rest
                rest ^= bit
                v = bit.bit_length() - 1
                for w in adj[v]:
                    wbit = 1 << w
                    if not mask & wbit:
                        key = mask | wbit
                        grown[key] = grown.get(key, 0) | wbit
        if not grown:
            return best, None
        layers.append(grown)
        best += 1
        if stop_at is not None and best >= stop_at:
            mask, ends = next(iter(grown.items()))
            return best, _reconstruct(adj, layers, mask, ends)


def _reconstruct(
    adj: list[list[int]], layers: list[dict[int, int]], mask: int, ends: int
) -> list[int]:
    v = (ends & -ends).bit_length() - 1
    path = [v]
    for depth in range(len(layers) - 2, -1, -1):
        mask ^= 1 << v
        prev_ends = layers[depth].get(mask, 0)
        step = None
        for u in adj[v]:
            if prev_ends & (1 << u):
                step = u
                break
        if step is None:
            raise ContractViolation("path reconstruction lost its trail")
        path.append(step)
        v = step
    path.reverse()
    return path


def _subgraph_adjacency(g: Graph, vertices: tuple[int, ...]) -> list[list[int]]:
    index = {v: i for i, v in enumerate(vertices)}
    adj: list[list[int]] = [[] for _ in vertices]
    for u, v in g.edges:
        if u in index and v in index:
            adj[index[u]].append(index[v])
            adj[index[v]].append(index[u])
    return adj


def longest_path_exact(g: Graph, cap: int = DEFAULT_COMPONENT_CAP) -> int:
    """Number of vertices on a longest simple path of ``g``, exactly.

    Refuses graphs whose non-isolated part exceeds ``cap`` vertices; the
    state space is exponential in that count.
    """
    active = tuple(sorted(g.non_isolated()))
    if not active:
        return 1 if g.vertex_count >= 1 else 0
    if len(active) > cap:
        raise SizeCapError(
            f"{len(active)} non-isolated vertices exceed the exact-path cap {cap}"
        )
    best, _ = _mask_path_search(_subgraph_adjacency(g, active), None)
    return best


def greedy_vertex_cover(g: Graph, vertices: tuple[int, ...]) -> tuple[int, ...]:
    """Max-degree-first vertex cover of the edges induced on ``vertices``.

    Any cover works for the path-length certificate; greedy keeps star
    forests at one cover vertex per star.  Ties break toward the lowest id.
    """
    inside = set(vertices)
    local: dict[int, set[int]] = {v: set() for v in vertices}
    for v in vertices:
        for w in g.neighbours(v):
            if w in inside:
                local[v].add(w)
    cover: list[int] = []
    while True:
        best = min(local, key=lambda v: (-len(local[v]), v), default=None)
        if best is None or not local[best]:
            return tuple(cover)
        cover.append(best)
        for w in local.pop(best):
            local[w].discard(best)


def longest_path_brute(g: Graph) -> int:
    """Reference implementation: enumerate every simple path by DFS."""
    active = sorted(g.non_isolated())
    if not active:
        return 1 if g.vertex_count >= 1 else 0
    adj = g.adjacency
    best = 1

    def extend(v: int, visited: set[int], length: int) -> None:
        nonlocal best
        best = max(best, length)
        for w in adj[v]:
            if w not in visited:
                visited.add(w)
                extend(w, visited, length + 1)
                visited.remove(w)

    for v in active:
        extend(v, {v}, 1)
    return best


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one colouring against the path ban and budget."""

    verdict: str  # "pass", "fail", or "indeterminate"
    k: int
    r: int
    colours_used: int
    colours_within_budget: bool
    covers_all_edges: bool
    witness_colour: int | None = None
    witness_path: tuple[int, ...] | None = None
    failures: tuple[tuple[int, tuple[int, ...]], ...] = ()
    component_cap: int = DEFAULT_COMPONENT_CAP
    indeterminate_components: tuple[tuple[int, int], ...] = ()
    cover_certified: tuple[tuple[int, int, int], ...] = ()  # colour, order, |cover|
    worst_component: tuple[int, tuple[int, ...]] | None = None
    # per colour: (colour, component count, max order, max path found or None)
    per_colour_stats: tuple[tuple[int, int, int, int | None], ...] = ()
    class_sizes: dict[int, int] = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.verdict == "pass"

    @property
    def largest_component(self) -> tuple[int, int] | None:
        if self.worst_component is None:
            return None
        return (self.worst_component[0], len(self.worst_component[1]))

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "k": self.k,
            "r": self.r,
            "colours_used": self.colours_used,
            "colours_within_budget": self.colours_within_budget,
            "covers_all_edges": self.covers_all_edges,
            "witness_colour": self.witness_colour,
            "witness_path": list(self.witness_path) if self.witness_path else None,
            "failures": [[c, list(p)] for c, p in self.failures],
            "component_cap": self.component_cap,
            "indeterminate_components": [
                list(t) for t in self.indeterminate_components
            ],
            "cover_certified": [list(t) for t in self.cover_certified],
            "worst_component": [self.worst_component[0], list(self.worst_component[1])]
            if self.worst_component
            else None,
            "per_colour_stats": [list(t) for t in self.per_colour_stats],
            "class_sizes": {str(c): m for c, m in sorted(self.class_sizes.items())},
        }


def verify_colouring(
    g: Graph,
    colouring: EdgeColouring,
    r: int,
    k: int,
    cap: int = DEFAULT_COMPONENT_CAP,
) -> VerificationReport:
    """Decide whether any colour class contains a path on ``k`` vertices.

    Partial colourings are allowed (uncoloured edges are simply not part of
    any class); ``covers_all_edges`` reports whether the colouring is total.
    The verdict is independent of the colour budget, which is reported via
    ``colours_within_budget = colours_used <= r``.
    """
    if k < 2:
        raise UsageError("a path needs at least 2 vertices, so k >= 2")
    if r < 0:
        raise UsageError("colour budget must be non-negative")
    comps = monochromatic_components(g, colouring)

    failures: list[tuple[int, tuple[int, ...]]] = []
    indeterminate: list[tuple[int, int]] = []
    covered: list[tuple[int, int, int]] = []
    worst: tuple[int, tuple[int, ...]] | None = None
    stats: list[tuple[int, int, int, int | None]] = []
    classes = colouring.colour_classes()
    class_sizes = {c: len(es) for c, es in classes.items()}

    for colour in sorted(comps):
        # the search graph must carry only this colour's edges; other
        # colours may run between the same vertices
        class_graph = Graph(g.vertex_count, frozenset(classes[colour]))
        max_order = 0
        max_found: int | None = None
        for comp in comps[colour]:
            order = len(comp.vertices)
            max_order = max(max_order, order)
            if worst is None or order > len(worst[1]):
                worst = (colour, comp.vertices)
            if order < k:
                continue
            if order > cap:
                size = len(greedy_vertex_cover(class_graph, comp.vertices))
                if 2 * size + 1 < k:
                    covered.append((colour, order, size))
                else:
                    indeterminate.append((colour, order))
                continue
            adj = _subgraph_adjacency(class_graph, comp.vertices)
            length, path = _mask_path_search(adj, stop_at=k)
            max_found = length if max_found is None else max(max_found, length)
            if length >= k and path is not None:
                failures.append((colour, tuple(comp.vertices[i] for i in path)))
                break  # one witness per colour is plenty
        stats.append((colour, len(comps[colour]), max_order, max_found))

    if failures:
        verdict = "fail"
    elif indeterminate:
        verdict = "indeterminate"
    else:
        verdict = "pass"
    colours_used = colouring.colours_used
    return VerificationReport(
        verdict=verdict,
        k=k,
        r=r,
        colours_used=colours_used,
        colours_within_budget=colours_used <= r,
        covers_all_edges=colouring.assignments.keys() == g.edges,
        witness_colour=failures[0][0] if failures else None,
        witness_path=failures[0][1] if failures else None,
        failures=tuple(failures),
        component_cap=cap,
        indeterminate_components=tuple(indeterminate),
        cover_certified=tuple(covered),
        worst_component=worst,
        per_colour_stats=tuple(stats),
        class_sizes=class_sizes,
    )
