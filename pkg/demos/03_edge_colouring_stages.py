#!/usr/bin/env python3
"""
The three colouring building blocks, shown one at a time.

1. proper_edge_colouring: no two touching edges share a colour, at most
   max_degree + 1 colours on any simple graph.
2. low_degree_refinement: peel every vertex of degree <= r/7, colouring
   the peeled edges with matchings plus small outward star classes.
3. star_refinement: spend s colours on star forests centred at the
   highest-degree vertices, capping the residual maximum degree.
"""

from pathfree import (
    Graph,
    low_degree_refinement,
    proper_edge_colouring,
    star_refinement,
    uniform_edges,
)

g = uniform_edges(24, 60, seed=11)
print(f"graph: {g.vertex_count} vertices, {g.edge_count} edges, "
      f"max degree {g.max_degree}")

proper = proper_edge_colouring(g)
print(f"\nproper colouring uses {proper.colours_used} colours "
      f"(max degree + 1 = {g.max_degree + 1})")
for colour, edges in sorted(proper.colour_classes().items())[:3]:
    touched = sorted({v for e in edges for v in e})
    assert len(touched) == 2 * len(edges)  # a matching touches distinct ends
    print(f"  colour {colour}: {len(edges)} edges, all vertex-disjoint")

r = 21
low = low_degree_refinement(g, r)
print(f"\nlow-degree peel at r={r} (threshold degree {low.threshold}):")
print(f"  peeled {len(low.vertices_removed)} vertices, "
      f"{len(low.colouring.assignments)} edges, {low.colours_used} colours "
      f"(budget {low.budget}, ok={low.budget_ok})")
print(f"  residual keeps {low.residual.edge_count} edges between high vertices")

# the star step only fires on vertices that dominate the edge count, so
# plant a hub into a sparse background to watch it work
hub_edges = [(0, v) for v in range(1, 30)]
background = uniform_edges(30, 45, seed=2)
hubbed = Graph.build(30, list(background.edges | frozenset(hub_edges)))
s, k = 3, 9
star = star_refinement(hubbed, s, k)
print(f"\nstar refinement on a hubbed graph ({hubbed.edge_count} edges, "
      f"hub degree {hubbed.degree(0)}), s={s}, k={k}:")
print(f"  heavy threshold: degree * k * s >= 8 * edges, i.e. degree >= "
      f"{float(star.threshold):.1f}")
print(f"  used {star.colours_used} colour(s) on centres {sorted(star.vertices_removed)}")
for index, part in enumerate(star.parts or ()):
    print(f"  colour {index}: centres {sorted(part)} "
          f"(a class may hold up to k//3 = {k // 3} stars)")
print(f"  residual max degree {star.residual.max_degree} "
      f"(was {hubbed.max_degree}), bound held: {star.degree_bound_ok}")
