"""Edge-colouring primitives.

Three building blocks, each of which colours some edges of its input and
leaves the rest as an explicitly returned residual graph:

* :func:`proper_edge_colouring` properly colours all edges with at most
  ``max_degree + 1`` colours (Misra-Gries fan rotation).  Classes are
  matchings, so no class contains a path on 3 vertices.
* :func:`low_degree_refinement` colours every edge incident to a vertex of
  degree at most ``r/7``: properly inside the low-degree set, and with
  per-vertex distinct colours on the edges leaving it.  Classes are
  matchings or star forests, so no class contains a path on 4 vertices.
* :func:`star_refinement` removes up to ``s * floor(k/3)`` vertices of
  degree at least ``8 e / (k s)``, packing them into ``s`` centre sets of
  size at most ``floor(k/3)`` and giving all edges that touch a centre set
  the same colour.  Any path inside a class alternates between centre and
  non-centre vertices, so it sees fewer than ``k`` vertices whenever
  ``k >= 4``.

Colour indices in every result are compact: each primitive uses exactly
``colour_base .. colour_base + colours_used - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractViolation, InternalInvariantError, UsageError
from .graph import Edge, Graph

__all__ = [
    "EdgeColouring",
    "RefinementResult",
    "proper_edge_colouring",
    "low_degree_refinement",
    "star_refinement",
    "serialize_colouring",
    "parse_colouring",
]


@dataclass(frozen=True)
class EdgeColouring:
    """Assignment of colour indices to (a subset of) a graph's edges."""

    assignments: dict[Edge, int]

    @property
    def colours_used(self) -> int:
        return len(set(self.assignments.values()))

    def colour_classes(self) -> dict[int, list[Edge]]:
        classes: dict[int, list[Edge]] = {}
        for edge, colour in self.assignments.items():
            classes.setdefault(colour, []).append(edge)
        return {c: sorted(es) for c, es in sorted(classes.items())}

    def merged_with(self, other: "EdgeColouring") -> "EdgeColouring":
        overlap = self.assignments.keys() & other.assignments.keys()
        if overlap:
            raise ContractViolation(
                f"colourings overlap on {len(overlap)} edges, e.g. {min(overlap)}"
            )
        combined = dict(self.assignments)
        combined.update(other.assignments)
        return EdgeColouring(combined)


def _compact(raw: dict[Edge, int], colour_base: int) -> EdgeColouring:
    used = sorted(set(raw.values()))
    remap = {c: colour_base + i for i, c in enumerate(used)}
    return EdgeColouring({e: remap[c] for e, c in raw.items()})


def proper_edge_colouring(g: Graph, colour_base: int = 0) -> EdgeColouring:
    """Colour all edges so adjacent edges differ, using <= max_degree+1 colours.

    Misra-Gries: for each uncoloured edge (u, v), build a maximal fan of u
    starting at v, free a colour at u by inverting a two-coloured path, then
    rotate a fan prefix.  With palette size max_degree+1 every vertex always
    has a free colour, and the fan lemma guarantees a rotatable prefix, so
    each edge is coloured in one pass.
    """
    palette = g.max_degree + 1
    # at[v] maps colour -> neighbour reached through the edge of that colour.
    at: list[dict[int, int]] = [dict() for _ in range(g.vertex_count)]
    colour_of: dict[Edge, int] = {}

    def set_colour(x: int, y: int, c: int) -> None:
        colour_of[(x, y) if x < y else (y, x)] = c
        at[x][c] = y
        at[y][c] = x

    def unset_colour(x: int, y: int) -> int:
        c = colour_of.pop((x, y) if x < y else (y, x))
        del at[x][c]
        del at[y][c]
        return c

    def free_colour(v: int) -> int:
        for c in range(palette):
            if c not in at[v]:
                return c
        raise InternalInvariantError(f"no free colour at vertex {v}")

    def invert_path(u: int, c: int, d: int) -> None:
        # Maximal path from u alternating d, c (u has no c-edge). Proper
        # colourings make it simple, and it cannot return to u.
        hops: list[tuple[int, int, int]] = []
        prev, want = u, d
        while want in at[prev]:
            nxt = at[prev][want]
            hops.append((prev, nxt, want))
            prev, want = nxt, c if want == d else d
        for x, y, _ in hops:
            unset_colour(x, y)
        for x, y, col in hops:
            set_colour(x, y, c if col == d else d)

    for u, v in g.sorted_edges():
        # Maximal fan of u starting at v: each next fan edge's colour is
        # free at the previous fan vertex.
        fan = [v]
        in_fan = {v}
        while True:
            last = fan[-1]
            step = None
            for c in sorted(at[u]):
                w = at[u][c]
                if w not in in_fan and c not in at[last]:
                    step = w
                    break
            if step is None:
                break
            fan.append(step)
            in_fan.add(step)

        c = free_colour(u)
        d = free_colour(fan[-1])
        if c != d and d in at[u]:
            invert_path(u, c, d)

        # First fan vertex with d free whose prefix is still a fan. The fan
        # lemma guarantees one exists after the inversion.
        target = None
        for j, w in enumerate(fan):
            if j > 0:
                edge = (u, fan[j]) if u < fan[j] else (fan[j], u)
                if colour_of[edge] in at[fan[j - 1]]:
                    break  # prefix stopped being a fan; later vertices unusable
            if d not in at[w]:
                target = j
                break
        if target is None:
            raise InternalInvariantError("fan rotation found no target vertex")

        shifted = [unset_colour(u, fan[i]) for i in range(1, target + 1)]
        for i in range(target):
            set_colour(u, fan[i], shifted[i])
        set_colour(u, fan[target], d)

    if len(colour_of) != g.edge_count:
        raise InternalInvariantError("proper colouring missed edges")
    return _compact(colour_of, colour_base)


@dataclass(frozen=True)
class RefinementResult:
    """Partial colouring plus the residual left for later stages.

    ``vertices_removed`` are the vertices whose incident edges were coloured
    (low-degree set or star centres); ``parts`` holds the centre set of each
    colour class for star refinements and is None otherwise.
    ``degree_bound_ok`` records whether the residual met the stage's degree
    target; ``budget_ok`` whether ``colours_used`` stayed within ``budget``.
    """

    colouring: EdgeColouring
    residual: Graph
    colour_base: int
    colours_used: int
    budget: Fraction
    budget_ok: bool
    threshold: Fraction
    vertices_removed: frozenset[int]
    degree_bound_ok: bool
    parts: tuple[frozenset[int], ...] | None = None


def low_degree_refinement(g: Graph, r: int, colour_base: int = 0) -> RefinementResult:
    """Colour all edges at vertices of degree <= r/7; residual is the rest.

    Inside the low-degree set a proper colouring takes at most
    ``floor(r/7) + 1`` colours.  Edges from a low vertex to a high one get
    per-low-vertex distinct colours from a second range of at most
    ``floor(r/7)`` colours, whose classes are star forests centred at high
    vertices.  Total is within ``r/3`` once ``r >= 42``; smaller ``r`` simply
    reports ``budget_ok = False``.
    """
    if r < 1:
        raise UsageError("colour budget r must be positive")
    threshold = Fraction(r, 7)
    low = frozenset(v for v in range(g.vertex_count) if 7 * g.degree(v) <= r)

    inner_edges = [e for e in g.edges if e[0] in low and e[1] in low]
    inner = Graph(g.vertex_count, frozenset(inner_edges))
    proper = proper_edge_colouring(inner, colour_base)
    first_range = proper.colours_used

    raw: dict[Edge, int] = dict(proper.assignments)
    star_width = 0
    for v in sorted(low):
        rank = 0
        for w in g.neighbours(v):
            if w in low:
                continue
            edge = (v, w) if v < w else (w, v)
            raw[edge] = colour_base + first_range + rank
            rank += 1
        star_width = max(star_width, rank)

    residual_edges = frozenset(
        e for e in g.edges if e[0] not in low and e[1] not in low
    )
    used = first_range + star_width
    budget = Fraction(r, 3)
    return RefinementResult(
        colouring=EdgeColouring(raw),
        residual=Graph(g.vertex_count, residual_edges),
        colour_base=colour_base,
        colours_used=used,
        budget=budget,
        budget_ok=used <= budget,
        threshold=threshold,
        vertices_removed=low,
        degree_bound_ok=True,
    )


def star_refinement(
    g: Graph, s: int, k: int, colour_base: int = 0
) -> RefinementResult:
    """Colour the edges at up to ``s * floor(k/3)`` highest-degree vertices.

    Vertices of degree at least ``8 e / (k s)`` are packed, in decreasing
    degree order, into ``s`` centre sets of size at most ``floor(k/3)``; each
    edge touching a centre set is claimed by the first such set and takes its
    colour.  Vertices beyond the packing capacity stay in the residual, which
    then misses the degree target and is reported via ``degree_bound_ok``.
    """
    if s < 1:
        raise UsageError("need at least one star colour")
    if k < 4:
        raise UsageError(
            "star classes contain 3-vertex paths, so k must be at least 4"
        )
    budget = Fraction(s)
    edges_total = g.edge_count
    if edges_total == 0:
        return RefinementResult(
            colouring=EdgeColouring({}),
            residual=g,
            colour_base=colour_base,
            colours_used=0,
            budget=budget,
            budget_ok=True,
            threshold=Fraction(0),
            vertices_removed=frozenset(),
            degree_bound_ok=True,
        )

    threshold = Fraction(8 * edges_total, k * s)
    heavy = sorted(
        (v for v in range(g.vertex_count) if g.degree(v) * k * s >= 8 * edges_total),
        key=lambda v: (-g.degree(v), v),
    )
    capacity = k // 3
    centres = heavy[: s * capacity]
    owner = {v: i // capacity for i, v in enumerate(centres)}

    raw: dict[Edge, int] = {}
    residual_edges: list[Edge] = []
    for e in g.edges:
        first = min(
            (owner[x] for x in e if x in owner),
            default=None,
        )
        if first is None:
            residual_edges.append(e)
        else:
            raw[e] = first

    colouring = _compact(raw, colour_base)
    used_ids = sorted(set(raw.values()))
    parts = tuple(
        frozenset(v for v in centres if owner[v] == i) for i in used_ids
    )
    residual = Graph(g.vertex_count, frozenset(residual_edges))
    degree_ok = all(
        residual.degree(v) * k * s < 8 * edges_total
        for v in residual.non_isolated()
    )
    used = len(used_ids)
    if used > s:
        raise InternalInvariantError("star refinement exceeded its colour count")
    return RefinementResult(
        colouring=colouring,
        residual=residual,
        colour_base=colour_base,
        colours_used=used,
        budget=budget,
        budget_ok=True,
        threshold=threshold,
        vertices_removed=frozenset(centres),
        degree_bound_ok=degree_ok,
        parts=parts,
    )


def serialize_colouring(
    g: Graph, colouring: EdgeColouring, r: int | None = None, k: int | None = None
) -> str:
    """Text form of a total colouring: ``u v colour`` rows.

    Follows the edge-list conventions: a ``# n=...`` comment header carries
    the vertex count, plus ``r``/``k`` when given so a verification run can
    be replayed from the file alone.  The colouring must cover exactly the
    edges of ``g``.
    """
    if colouring.assignments.keys() != g.edges:
        raise ContractViolation("colouring must cover exactly the graph's edges")
    head = [f"n={g.vertex_count}"]
    if r is not None:
        head.append(f"r={r}")
    if k is not None:
        head.append(f"k={k}")
    head.append(f"colours_used={colouring.colours_used}")
    lines = ["# " + " ".join(head)]
    for u, v in g.sorted_edges():
        lines.append(f"{u} {v} {colouring.assignments[(u, v)]}")
    return "\n".join(lines) + "\n"


def parse_colouring(text: str) -> tuple[Graph, EdgeColouring, dict[str, int]]:
    """Inverse of :func:`serialize_colouring`; returns graph, colouring, header."""
    from .graph import read_header_fields

    header = read_header_fields(text, ("n", "colours_used", "r", "k"))
    edges: list[Edge] = []
    assignments: dict[Edge, int] = {}
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise UsageError(f"line {lineno}: expected 'u v colour'")
        try:
            u, v, c = (int(f) for f in fields)
        except ValueError:
            raise UsageError(f"line {lineno}: expected integers") from None
        if c < 0:
            raise UsageError(f"line {lineno}: negative colour")
        if u == v:
            raise UsageError(f"line {lineno}: loop at {u}")
        if u < 0 or v < 0:
            raise UsageError(f"line {lineno}: negative vertex id")
        e = (u, v) if u < v else (v, u)
        if e in assignments:
            raise UsageError(f"line {lineno}: duplicate edge {e}")
        edges.append(e)
        assignments[e] = c
        top = max(top, e[1])
    n = header.get("n", top + 1)
    if any(v >= n for e in edges for v in e):
        raise UsageError(f"endpoint outside 0..{n - 1}")
    g = Graph.build(n, edges)
    colouring = EdgeColouring(assignments)
    if "colours_used" in header and colouring.colours_used != header["colours_used"]:
        raise UsageError(
            f"header declares {header['colours_used']} colours but rows use "
            f"{colouring.colours_used}"
        )
    return g, colouring, header
