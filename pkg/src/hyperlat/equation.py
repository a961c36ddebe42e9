"""The second-order difference equation of hypergeometric type on a lattice.

An equation is the coefficient triple (sigma~, tau~, lambda): polynomials of
degree at most two and one in x(s), plus a constant.  Everything else is
derived from them:

    sigma(s) = sigma~(x(s)) - (1/2) tau~(x(s)) * nabla x_1(s)
    tau(s)   = tau~(x(s))
    L[y](s)  = sigma(s) delta_{-1} nabla_0 y + tau(s) delta_0 y + lambda y

The level-k ladder coefficients

    tau_k(s) = [sigma(s+k) - sigma(s) + tau(s+k) nabla x_1(s+k)] / nabla x_{k+1}(s)
    mu_k     = lambda + kappa_k nu(k)
    lambda_n = -kappa_n nu(n)

drive the polynomial eigenfunctions, and the adjoint coefficients

    sigma*(s) = sigma(s-1) + tau(s-1) nabla x_{-1}(s)
    tau*(s)   = [sigma(s+1) - sigma(s-1) - tau(s-1) nabla x_{-1}(s)] / delta x_{-1}(s)
    lambda*   = lambda - kappa_{-1}

define the adjoint operator L*, which satisfies L*[rho y] = rho L[y] for the
Pearson weight rho.  The weight itself is fixed only up to scale by

    delta_{-1}[sigma rho] = tau rho

and is normalized here to rho(anchor) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (
    DegenerateStep,
    NonConstantLambdaStar,
    OutOfWindow,
    PearsonSingularity,
    WindowTooSmall,
)
from .grid import GridFunction, Window, delta_k, nabla_k
from .lattice import HalfInt, Lattice, kappa
from .numerics import Scalar, is_zero


@dataclass(frozen=True)
class HyperEquation:
    """Coefficients sigma_t = (sigma~(0), sigma~'(0), sigma~''/2) and
    tau_t = (tau~(0), tau~'), with the spectral parameter ``lam``."""

    lattice: Lattice
    sigma_t: tuple
    tau_t: tuple
    lam: Scalar = Fraction(0)

    def __post_init__(self):
        if len(self.sigma_t) != 3:
            raise ValueError("sigma_t must have exactly three coefficients")
        if len(self.tau_t) != 2:
            raise ValueError("tau_t must have exactly two coefficients")
        object.__setattr__(self, "sigma_t", tuple(self.sigma_t))
        object.__setattr__(self, "tau_t", tuple(self.tau_t))

    @property
    def sigma2(self) -> Scalar:
        """sigma~'' (twice the stored leading coefficient)."""
        return 2 * self.sigma_t[2]

    @property
    def tau1(self) -> Scalar:
        """tau~'."""
        return self.tau_t[1]

    def sigma_tilde(self, x: Scalar) -> Scalar:
        return self.sigma_t[0] + self.sigma_t[1] * x + self.sigma_t[2] * x * x

    def tau_tilde(self, x: Scalar) -> Scalar:
        return self.tau_t[0] + self.tau_t[1] * x

    def with_lambda(self, lam: Scalar) -> "HyperEquation":
        return replace(self, lam=lam)

    def kappa(self, mu: int) -> Scalar:
        return kappa(self.lattice, self.sigma2, self.tau1, mu)


@dataclass(frozen=True)
class PearsonWeight:
    """rho on a window, normalized to rho(anchor) = 1."""

    rho: GridFunction
    anchor: HalfInt

    @property
    def window(self) -> Window:
        return self.rho.window

    def value_at(self, s: HalfInt) -> Scalar:
        return self.rho.value_at(s)


@dataclass(frozen=True)
class AdjointCoefficients:
    sigma_star: GridFunction
    tau_star: GridFunction
    lambda_star: Scalar


def sigma_of_s(eq: HyperEquation, s: HalfInt) -> Scalar:
    lat = eq.lattice
    x = lat.x(s)
    return eq.sigma_tilde(x) - eq.tau_tilde(x) * lat.nabla_x(1, s) / 2


def tau_of_s(eq: HyperEquation, s: HalfInt) -> Scalar:
    return eq.tau_tilde(eq.lattice.x(s))


def tau_k(eq: HyperEquation, k: int, s: HalfInt) -> Scalar:
    """Level-k linear coefficient; defined for every integer k (also
    negative), where it has slope kappa_{2k+1} against x_k(s)."""
    lat = eq.lattice
    den = lat.nabla_x(k + 1, s)
    if den == 0:
        raise DegenerateStep(f"zero step of x_{k + 1} at s={s}", point=s)
    shifted = s + k
    num = (sigma_of_s(eq, shifted) - sigma_of_s(eq, s)
           + tau_of_s(eq, shifted) * lat.nabla_x(1, shifted))
    return num / den


def mu_k(eq: HyperEquation, k: int) -> Scalar:
    """mu_k = lambda + kappa_k nu(k); equals lambda plus the telescoped sum
    of delta_j tau_j over j < k."""
    return eq.lam + eq.kappa(k) * eq.lattice.nu(k)


def lambda_n(eq: HyperEquation, n: int) -> Scalar:
    """The eigenvalue lambda_n = -kappa_n nu(n) that makes mu_n vanish."""
    return -eq.kappa(n) * eq.lattice.nu(n)


def admissibility_violation(eq: HyperEquation, n: int) -> int | None:
    """First m < n with lambda_m = lambda_n, or None when n is admissible."""
    target = lambda_n(eq, n)
    for m in range(n):
        if lambda_n(eq, m) == target:
            return m
    return None


def is_admissible(eq: HyperEquation, n: int) -> bool:
    return admissibility_violation(eq, n) is None


def pearson_weight(eq: HyperEquation, window: Window, anchor: HalfInt) -> PearsonWeight:
    """Solve delta_{-1}[sigma rho] = tau rho on the window, rho(anchor) = 1.

    Forward:  rho(s+1) = rho(s) [sigma(s) + tau(s) nabla x_1(s)] / sigma(s+1)
    Backward: the same relation inverted.  Any zero of a divisor, or a zero
    weight value, is reported as a PearsonSingularity at the offending point.
    """
    if anchor not in window:
        raise OutOfWindow(f"anchor {anchor} not in window {window}")
    lat = eq.lattice
    values: list = [None] * window.length
    base = window.index_of(anchor)
    values[base] = Fraction(1)
    s = anchor
    for j in range(base + 1, window.length):
        den = sigma_of_s(eq, s + 1)
        if den == 0:
            raise PearsonSingularity(f"sigma vanishes at s={s + 1}", point=s + 1)
        values[j] = values[j - 1] * (sigma_of_s(eq, s) + tau_of_s(eq, s) * lat.nabla_x(1, s)) / den
        if values[j] == 0:
            raise PearsonSingularity(f"weight vanishes at s={s + 1}", point=s + 1)
        s = s + 1
    s = anchor
    for j in range(base - 1, -1, -1):
        prev = s - 1
        den = sigma_of_s(eq, prev) + tau_of_s(eq, prev) * lat.nabla_x(1, prev)
        if den == 0:
            raise PearsonSingularity(f"backward Pearson step vanishes at s={prev}", point=prev)
        values[j] = values[j + 1] * sigma_of_s(eq, s) / den
        if values[j] == 0:
            raise PearsonSingularity(f"weight vanishes at s={prev}", point=prev)
        s = prev
    return PearsonWeight(GridFunction(window.start, tuple(values)), anchor)


def rho_k(eq: HyperEquation, weight: PearsonWeight, k: int, s: HalfInt) -> Scalar:
    """rho_k(s) = rho(s+k) * prod_{i=1..k} sigma(s+i); rho_0 = rho."""
    if k < 0:
        raise ValueError("rho_k is defined for nonnegative k")
    value = weight.value_at(s + k)
    for i in range(1, k + 1):
        value *= sigma_of_s(eq, s + i)
    return value


def apply_L(eq: HyperEquation, y: GridFunction) -> GridFunction:
    """Residual of L[y] on the interior window (one point lost per side)."""
    if len(y) < 3:
        raise WindowTooSmall("apply_L needs at least three points")
    lat = eq.lattice
    inner = nabla_k(lat, 0, y)           # on [start+1, end]
    second = delta_k(lat, -1, inner)     # on [start+1, end-1]
    first = delta_k(lat, 0, y)           # on [start,   end-1]
    out = []
    for s in second.points():
        out.append(sigma_of_s(eq, s) * second.value_at(s)
                   + tau_of_s(eq, s) * first.value_at(s)
                   + eq.lam * y.value_at(s))
    return GridFunction(second.start, tuple(out))


# ---------------------------------------------------------------------------
# adjoint machinery


def sigma_star(eq: HyperEquation, s: HalfInt) -> Scalar:
    lat = eq.lattice
    return sigma_of_s(eq, s - 1) + tau_of_s(eq, s - 1) * lat.nabla_x(-1, s)


def tau_star(eq: HyperEquation, s: HalfInt) -> Scalar:
    lat = eq.lattice
    den = lat.delta_x(-1, s)
    if den == 0:
        raise DegenerateStep(f"zero step of x_-1 at s={s}", point=s)
    return (sigma_of_s(eq, s + 1) - sigma_of_s(eq, s - 1)
            - tau_of_s(eq, s - 1) * lat.nabla_x(-1, s)) / den


def lambda_star_at(eq: HyperEquation, s: HalfInt) -> Scalar:
    """lambda* from its defining difference expression, evaluated at s:

        lambda - delta_{-1}( [tau(s-1) nabla x_{-1}(s) - nabla sigma(s)] / nabla x(s) )
    """
    lat = eq.lattice

    def h(t: HalfInt) -> Scalar:
        den = lat.nabla_x(0, t)
        if den == 0:
            raise DegenerateStep(f"zero step of x_0 at s={t}", point=t)
        return (tau_of_s(eq, t - 1) * lat.nabla_x(-1, t)
                - (sigma_of_s(eq, t) - sigma_of_s(eq, t - 1))) / den

    den = lat.delta_x(-1, s)
    if den == 0:
        raise DegenerateStep(f"zero step of x_-1 at s={s}", point=s)
    return eq.lam - (h(s + 1) - h(s)) / den


def lambda_star(eq: HyperEquation, tol: Scalar = 0) -> Scalar:
    """lambda* = lambda - kappa_{-1}, cross-checked against the defining
    expression at a regular grid point.  Disagreement is a hard error."""
    closed = eq.lam - eq.kappa(-1)
    s = _regular_point(eq.lattice)
    direct = lambda_star_at(eq, s)
    if not is_zero(direct - closed, tol):
        raise NonConstantLambdaStar(
            f"lambda* mismatch: direct {direct} vs closed form {closed} at s={s}")
    return closed


def _regular_point(lat: Lattice) -> HalfInt:
    # A point where every step used by lambda_star_at is nonzero.  The zero
    # set of the steps is finite, so a short scan suffices.
    for twice in list(range(4, 40)) + list(range(-4, -40, -1)):
        s = HalfInt(twice)
        if all(lat.nabla_x(0, s + d) != 0 for d in (0, 1)) and lat.delta_x(-1, s) != 0:
            return s
    raise DegenerateStep("no regular grid point found for this lattice")


def adjoint_coeffs(eq: HyperEquation, window: Window, tol: Scalar = 0) -> AdjointCoefficients:
    """sigma*, tau* sampled on the window, with the constant lambda*.

    lambda* is evaluated from its defining expression at every window point
    and must be constant (and equal to lambda - kappa_{-1}); anything else
    signals an implementation or lattice-degeneracy fault.
    """
    sig = GridFunction.sample(window, lambda s: sigma_star(eq, s))
    tau = GridFunction.sample(window, lambda s: tau_star(eq, s))
    closed = eq.lam - eq.kappa(-1)
    for s in window.points():
        value = lambda_star_at(eq, s)
        if not is_zero(value - closed, tol):
            raise NonConstantLambdaStar(
                f"lambda* varies: {value} at s={s}, expected {closed}")
    return AdjointCoefficients(sig, tau, closed)


def apply_L_star(eq: HyperEquation, w: GridFunction, tol: Scalar = 0) -> GridFunction:
    """Residual of L*[w] = sigma* delta_{-1} nabla_0 w + tau* delta_0 w + lambda* w."""
    if len(w) < 3:
        raise WindowTooSmall("apply_L_star needs at least three points")
    lat = eq.lattice
    lam_star = lambda_star(eq, tol)
    inner = nabla_k(lat, 0, w)
    second = delta_k(lat, -1, inner)
    first = delta_k(lat, 0, w)
    out = []
    for s in second.points():
        out.append(sigma_star(eq, s) * second.value_at(s)
                   + tau_star(eq, s) * first.value_at(s)
                   + lam_star * w.value_at(s))
    return GridFunction(second.start, tuple(out))


def dual_coefficients(eq: HyperEquation, s: HalfInt, tol: Scalar = 0):
    """Reconstruct (sigma(s), tau(s), lambda) from the starred coefficients.

    The adjoint relations are involutive in exactly this sense:

        sigma(s)  = sigma*(s-1) + tau*(s-1) nabla x_{-1}(s)
        tau(s)    = [sigma*(s+1) - sigma*(s-1) - tau*(s-1) nabla x_{-1}(s)] / delta x_{-1}(s)
        lambda    = lambda* - delta_{-1}( [tau*(s-1) nabla x_{-1}(s) - nabla sigma*(s)] / nabla x(s) )
    """
    lat = eq.lattice
    sig = sigma_star(eq, s - 1) + tau_star(eq, s - 1) * lat.nabla_x(-1, s)
    tau = (sigma_star(eq, s + 1) - sigma_star(eq, s - 1)
           - tau_star(eq, s - 1) * lat.nabla_x(-1, s)) / lat.delta_x(-1, s)

    def h(t: HalfInt) -> Scalar:
        return (tau_star(eq, t - 1) * lat.nabla_x(-1, t)
                - (sigma_star(eq, t) - sigma_star(eq, t - 1))) / lat.nabla_x(0, t)

    lam = lambda_star(eq, tol) - (h(s + 1) - h(s)) / lat.delta_x(-1, s)
    return sig, tau, lam


# ---------------------------------------------------------------------------
# level-nu coefficient functions and the hat ladder


def tau_nu(eq: HyperEquation, nu: int, s: HalfInt) -> Scalar:
    """Identical machinery to tau_k; kept as the level-nu alias."""
    return tau_k(eq, nu, s)


def sigma_tilde_nu(eq: HyperEquation, nu: int, s: HalfInt) -> Scalar:
    """sigma~_nu(s) = sigma(s) + (1/2) tau_nu(s) nabla x_{nu+1}(s), a
    polynomial of degree at most two in x_nu(s)."""
    lat = eq.lattice
    return sigma_of_s(eq, s) + tau_nu(eq, nu, s) * lat.nabla_x(nu + 1, s) / 2


def hat_tau_k(eq: HyperEquation, n: int, k: int, s: HalfInt) -> Scalar:
    """Ladder coefficient of the equation satisfied by the n-th weight
    product Y_n: hat_tau_k(s) = -tau_{n-k-2}(s + k - n + 1).

    Equivalently the explicit quotient

        [sigma(s+k-n+1) - sigma(s-1) - tau(s-1) nabla x_{-1}(s)] / delta x_{k-n-1}(s),

    whose slope against x_{k-n}(s) is -kappa_{2(n-k-2)+1}.  At k = n it
    reduces to tau*(s) = -tau_{-2}(s+1).
    """
    return -tau_k(eq, n - k - 2, s + (k - n + 1))


def hat_mu_n(eq: HyperEquation, n: int, tol: Scalar = 0) -> Scalar:
    """hat_mu_n = -kappa_{n-1} nu(n+1), cross-checked against the equivalent
    form -kappa_{-1} - kappa_n nu(n)."""
    lat = eq.lattice
    primary = -eq.kappa(n - 1) * lat.nu(n + 1)
    other = -eq.kappa(-1) - eq.kappa(n) * lat.nu(n)
    if not is_zero(primary - other, tol):
        raise NonConstantLambdaStar(
            f"hat_mu_n closed forms disagree: {primary} vs {other}")
    return primary
