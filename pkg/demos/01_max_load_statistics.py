#!/usr/bin/env python3
"""
Exact maximum-load statistics for balls thrown into bins.

Throw n balls uniformly into q bins and look at the fullest bin.  The
package computes E[max load] as an exact rational, compares it against
the unified and closed-form lower bounds, and cross-checks with a seeded
Monte Carlo run.  Everything printed here is reproducible.
"""

from fractions import Fraction

from pathfree import (
    compute_bins_stats,
    exact_max_load_expectation,
    max_load_expectation_lower_bound,
    max_load_fraction_lower_bound,
    monte_carlo_max_load,
)

print("Exact expectations E[M_{q,n}] (fullest bin out of q, n balls)")
print(f"{'q':>4} {'n':>4} {'E[M] exact':>14} {'float':>8} {'E[M]/n':>10}")
for q, n in [(2, 2), (2, 8), (4, 4), (6, 12), (10, 10), (16, 24)]:
    exact = exact_max_load_expectation(q, n)
    print(f"{q:>4} {n:>4} {str(exact):>14} {float(exact):>8.4f} "
          f"{float(exact / n):>10.4f}")

print()
print("The unified bound never exceeds the exact value:")
for q, n in [(4, 4), (8, 16), (12, 6), (24, 24)]:
    exact = float(exact_max_load_expectation(q, n))
    solved = max_load_expectation_lower_bound(q, n)
    print(f"  q={q:<3} n={n:<3} exact={exact:.4f}  "
          f"bound={solved.value:.4f}  branch={solved.branch}")

print()
print("Closed-form fraction floor at real-valued arguments:")
for q0, n0 in [(4.0, 4.0), (4.5, 6.5), (16.0, 16.0)]:
    print(f"  w({q0}, {n0}) >= {max_load_fraction_lower_bound(q0, n0):.6f}")

print()
print("Monte Carlo agrees with the exact mean (seeded, 20000 trials):")
for q, n in [(4, 4), (6, 12)]:
    est = monte_carlo_max_load(q, n, trials=20000, seed=7)
    exact = float(exact_max_load_expectation(q, n))
    print(f"  q={q} n={n}: mc={est.mean:.4f} +- {est.stderr:.4f}, exact={exact:.4f}")

print()
record = compute_bins_stats(6, 12, trials=20000, seed=7).to_record()
print("Full record for (q=6, n=12), as the CLI would emit it:")
for key in sorted(record):
    print(f"  {key}: {record[key]}")

assert Fraction(record["expected_max"]) == exact_max_load_expectation(6, 12)
