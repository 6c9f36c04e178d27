#!/usr/bin/env python3
"""
Averaging two coordinates of a probability vector never helps the top bin.

Start from a skewed distribution over 4 cells and repeatedly apply
T-transforms (replace p_i, p_j by weighted averages).  Each step produces
a vector majorized by the previous one, so the expected maximum cell
count for n thrown balls can only go down, ending at the uniform vector.
"""

from fractions import Fraction

from pathfree import multinomial_max_expectation, t_transform

n = 6
p = (Fraction(7, 10), Fraction(2, 10), Fraction(1, 10), Fraction(0))
steps = [
    (0, 1, Fraction(1, 2)),
    (0, 2, Fraction(2, 3)),
    (1, 3, Fraction(1, 2)),
    (0, 3, Fraction(3, 5)),
    (2, 3, Fraction(1, 2)),
    (0, 1, Fraction(1, 2)),
    (2, 0, Fraction(1, 2)),
    (1, 3, Fraction(1, 2)),
]

print(f"n = {n} balls, starting vector p = {tuple(str(x) for x in p)}")
previous = multinomial_max_expectation(p, n)
print(f"E[max cell] = {previous} = {float(previous):.5f}")
for i, j, lam in steps:
    p = t_transform(p, i, j, lam)
    value = multinomial_max_expectation(p, n)
    arrow = "down" if value < previous else "flat"
    print(f"  mix ({i},{j}) at {lam}: p = {tuple(f'{float(x):.3f}' for x in p)}  "
          f"E = {float(value):.5f} ({arrow})")
    assert value <= previous, "a T-transform must never increase the maximum"
    previous = value

uniform = tuple(Fraction(1, 4) for _ in range(4))
floor = multinomial_max_expectation(uniform, n)
print(f"uniform floor: E = {floor} = {float(floor):.5f}")
assert previous >= floor
