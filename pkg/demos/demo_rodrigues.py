"""Polynomial eigenfunctions from the difference Rodrigues formula.

The second-order equation

    sigma(s) delta_{-1} nabla_0 y + tau(s) delta_0 y + lambda y = 0

on the quadratic lattice x(s) = s(s+1) has, at lambda = lambda_n, a
polynomial solution of degree n in x(s).  We build it as the n-fold forward
difference of the weight product Y_n = rho * sigma(s) ... sigma(s-n+1),
divided by rho, and confirm the residual is literally zero and that an
independent null-space computation finds the same polynomial.
"""

from fractions import Fraction as F

from hyperlat import (
    HalfInt,
    HyperEquation,
    QuadraticLattice,
    Window,
    brute_force_polynomial_oracle,
    lambda_n,
    polynomial_coefficients,
    solve,
)

lattice = QuadraticLattice(F(1), F(1), F(0))         # x(s) = s^2 + s
equation = HyperEquation(lattice,
                         sigma_t=(F(0), F(1), F(0)),  # sigma~(x) = x
                         tau_t=(F(1), F(-2)))         # tau~(x)  = 1 - 2x
window = Window(HalfInt.from_int(4), 8)

print("eigenvalues lambda_n = -kappa_n nu(n):")
print("  ", [str(lambda_n(equation, n)) for n in range(6)])
print()

for n in range(4):
    report = solve(equation, n, window)
    values = ", ".join(str(v) for v in report.solution.values[:4])
    print(f"n = {n}:  lambda_n = {report.lam_n}")
    print(f"  y_n on s = 4..7:            {values}, ...")
    print(f"  max |L[y_n]| on the window: {report.residual_max_abs()}")
    coeffs = polynomial_coefficients(lattice, report.solution, n)
    oracle = brute_force_polynomial_oracle(equation, n)
    scale = next(a / b for a, b in zip(coeffs, oracle) if b != 0)
    agree = all(a == scale * b for a, b in zip(coeffs, oracle))
    print(f"  monomial coefficients in x(s): {[str(c) for c in coeffs]}")
    print(f"  independent null-space oracle agrees up to scale: {agree}")
    print()
