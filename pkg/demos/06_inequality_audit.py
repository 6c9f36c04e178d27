#!/usr/bin/env python3
"""
Run the analytic inequality suite on a reduced grid and show the report.

Every check compares exact rationals (or 50-digit gamma brackets) against
the bounds the colouring analysis relies on.  The full grids run in the
acceptance tests; this demo keeps the grid small so it finishes in a few
seconds while still printing one summary line per inequality.
"""

from pathfree.checks import run_all_checks

results = run_all_checks(
    q_range=(2, 8),
    n_range=(1, 10),
    schur_samples=120,
    mc_seeds=8,
    mc_trials=1000,
)

for result in results:
    print(result.summary_line())

worst = min(results, key=lambda r: r.min_margin)
print(f"\ntightest margin: {worst.name} at {worst.min_margin:.3g}")
assert all(r.ok for r in results)
print("all inequalities hold on this grid")
