"""The generalized construction: a free degree-n polynomial in the integrand.

Replacing the constant numerator of the second-kind integral with any
polynomial P of degree n, evaluated on lattice level -(n+1), still yields an
exact solution.  P = 0 gives the zero function; P = 1 at n = 0 recovers the
plain second-kind solution; anything else sweeps a two-parameter family
C1 * polynomial + (P-term).
"""

import random
from fractions import Fraction as F

from hyperlat import (
    HalfInt,
    HyperEquation,
    QuadraticLattice,
    Window,
    solve,
)

lattice = QuadraticLattice(F(1), F(1), F(0))
equation = HyperEquation(lattice, (F(0), F(1), F(0)), (F(1), F(-2)))
window = Window(HalfInt.from_int(4), 8)

rng = random.Random(7)
for n in (1, 2, 3):
    print(f"n = {n}:")
    for trial in range(3):
        P = tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n + 1))
        report = solve(equation, n, window, kind="generalized", P=P)
        print(f"  P = {[str(c) for c in P]}"
              f"  ->  max |L[y]| = {report.residual_max_abs()}")
    print()

trivial = solve(equation, 2, window, kind="generalized", P=(F(0), F(0), F(0)))
print("P = 0 gives the zero function:", trivial.solution.is_zero())
match = (solve(equation, 0, window, kind="generalized", P=(F(1),)).solution
         == solve(equation, 0, window, kind="second").solution)
print("P = 1 at n = 0 reproduces the second-kind solution:", match)
