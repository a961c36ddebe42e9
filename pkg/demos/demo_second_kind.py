"""The second-kind companion solution on a q-quadratic lattice.

At lambda = lambda_n the equation has, besides the degree-n polynomial, an
independent solution built from the discrete integral of
1/(rho(t) sigma(t) ... sigma(t-n)).  Both have exactly zero residual; the
companion fails the degree-n test, which certifies independence, and moving
the integral's base point N changes it only by a multiple of the polynomial.
"""

from fractions import Fraction as F

from hyperlat import (
    HalfInt,
    HyperEquation,
    QQuadraticLattice,
    Window,
    apply_L,
    iterated_delta,
    solve,
)

lattice = QQuadraticLattice(F(2), F(1), F(1), F(0))   # q = 4
equation = HyperEquation(lattice,
                         sigma_t=(F(0), F(1), F(0)),   # sigma~(x) = x
                         tau_t=(F(1), F(-1)))          # tau~(x)  = 1 - x
window = Window(HalfInt.from_int(4), 8)
n = 2

poly = solve(equation, n, window)
second = solve(equation, n, window, kind="second")

print(f"n = {n}, lambda_n = {poly.lam_n}")
print(f"polynomial residual:   {poly.residual_max_abs()}")
print(f"second-kind residual:  {second.residual_max_abs()}")

killed = iterated_delta(lattice, 0, n + 1, poly.solution)
survives = iterated_delta(lattice, 0, n + 1, second.solution)
print(f"delta^{n + 1} kills the polynomial:      {killed.is_zero()}")
print(f"delta^{n + 1} kills the second solution: {survives.is_zero()}  (independence)")

# any combination is again a solution
mix = F(3) * poly.solution + F(-2, 7) * second.solution
residual = apply_L(equation.with_lambda(poly.lam_n), mix)
print(f"3*y_n - 2/7*companion still solves:      {residual.is_zero()}")

# shifting the sum base perturbs the companion by a multiple of y_n
shifted = solve(equation, n, window, kind="second", N=window.start + 2)
difference = second.solution - shifted.solution
ratios = {difference.value_at(s) / poly.solution.value_at(s)
          for s in window.points() if poly.solution.value_at(s) != 0}
print(f"base-point shift is {ratios.pop()} times the polynomial"
      f" (one ratio at every point: {not ratios})")
