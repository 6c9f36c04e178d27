#!/usr/bin/env python3
"""
Full pipeline round trip: generate, colour, serialize, re-verify.

Colours a random graph so that no colour class contains a path on k
vertices, using at most r colours, then writes the colouring to disk in
the plain text format and checks that an independent parse + verify of
that file reaches the same verdict.
"""

import tempfile
from pathlib import Path

from pathfree import (
    PipelineParams,
    colour_graph,
    parse_colouring,
    serialize_colouring,
    uniform_edges,
    verify_colouring,
)

r, k = 48, 8
g = uniform_edges(120, 360, seed=1)
print(f"graph: {g.vertex_count} vertices, {g.edge_count} edges; "
      f"budget r={r}, forbidden path k={k} vertices")

result = colour_graph(g, PipelineParams(r=r, k=k, beta0=0.5, seed=1))
print(f"\npipeline: {result.total_colours} colours, success={result.success}, "
      f"stopped by {result.termination_reason!r}, endgame {result.endgame_case!r}")
for stage in result.stages:
    print(f"  {stage.name:<12} colours [{stage.colour_base}, "
          f"{stage.colour_base + stage.colours_used}) "
          f"edges {stage.edges_before} -> {stage.edges_after}")
for trace in result.rounds:
    print(f"  round {trace.round_index:<6} spent {trace.colours_spent} "
          f"(budget {trace.budget}) edges {trace.edges_before} -> {trace.edges_after}")

report = verify_colouring(g, result.colouring, r, k)
print(f"\nverifier: verdict={report.verdict}, "
      f"colours within budget: {report.colours_within_budget}")
print(f"largest monochromatic component: colour {report.largest_component[0]} "
      f"with {report.largest_component[1]} vertices "
      f"(components may be wide, but none contains a path on {k} vertices)")

with tempfile.TemporaryDirectory() as box:
    path = Path(box) / "colouring.txt"
    path.write_text(serialize_colouring(g, result.colouring, r=r, k=k))
    print(f"\nwrote {path.stat().st_size} bytes; header line:")
    print(" ", path.read_text().splitlines()[0])

    g2, colouring2, header = parse_colouring(path.read_text())
    again = verify_colouring(g2, colouring2, header["r"], header["k"])
    print(f"re-parsed and re-verified: verdict={again.verdict}")
    assert again.verdict == report.verdict == "pass"
