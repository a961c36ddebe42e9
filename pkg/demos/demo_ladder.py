"""The lattice scalars nu, alpha, kappa and the eigenvalue ladder.

nu and alpha are the q-analogues of mu and 1; kappa_mu combines them with
the equation's top coefficients.  Everything downstream is a closed form in
them:

    mu_k      = lambda + kappa_k nu(k)        (vanishes at lambda = lambda_k)
    lambda_n  = -kappa_n nu(n)
    hat_mu_n  = -kappa_{n-1} nu(n+1) = lambda_n - kappa_{-1}

The Suslov summation identities are what make the closed forms equal their
defining sums.
"""

from fractions import Fraction as F

from hyperlat import (
    HyperEquation,
    QQuadraticLattice,
    QuadraticLattice,
    hat_mu_n,
    lambda_n,
    mu_k,
)

for label, equation in [
        ("quadratic x(s) = s(s+1), sigma~ = x, tau~ = 1 - 2x",
         HyperEquation(QuadraticLattice(F(1), F(1), F(0)),
                       (F(0), F(1), F(0)), (F(1), F(-2)))),
        ("q-quadratic q = 4, sigma~ = x, tau~ = 1 - x",
         HyperEquation(QQuadraticLattice(F(2), F(1), F(1), F(0)),
                       (F(0), F(1), F(0)), (F(1), F(-1))))]:
    lat = equation.lattice
    print(label)
    print("  k:        ", list(range(6)))
    print("  nu(k):    ", [str(lat.nu(k)) for k in range(6)])
    print("  alpha(k): ", [str(lat.alpha(k)) for k in range(6)])
    print("  kappa_k:  ", [str(equation.kappa(k)) for k in range(6)])
    print("  lambda_k: ", [str(lambda_n(equation, k)) for k in range(6)])
    print("  hat_mu_k: ", [str(hat_mu_n(equation, k)) for k in range(1, 6)])
    ok = all(mu_k(equation.with_lambda(lambda_n(equation, k)), k) == 0
             for k in range(6))
    print("  mu_k vanishes at lambda = lambda_k:", ok)
    suslov = all(
        sum(lat.alpha(2 * j) for j in range(k)) == lat.alpha(k - 1) * lat.nu(k)
        and sum(lat.nu(2 * j) for j in range(k)) == lat.nu(k - 1) * lat.nu(k)
        for k in range(1, 13))
    print("  Suslov sums hold for k <= 12:", suslov)
    print()
