"""The two nonuniform lattice families and their shift/step geometry.

A lattice is a function x(s) of the form

    q-quadratic:  x(s) = c1*q^s + c2*q^(-s) + c3        (c1*c2 != 0)
    quadratic:    x(s) = ct1*s^2 + ct2*s + ct3          (ct1*ct2 != 0)

together with its shifted copies x_k(s) = x(s + k/2).  All evaluation points
are half-integers, and q is supplied through its square root p, so that
q^(s + k/2) = p^(2s + k) stays an exact rational.  Arguments are carried by
``HalfInt``, which stores twice the value as an integer.

The scalars nu(mu), alpha(mu) and the ladder coefficient kappa_mu govern the
eigenvalue structure of the difference equations built on the lattice:

    nu(mu)    = (q^(mu/2) - q^(-mu/2)) / (q^(1/2) - q^(-1/2))   or  mu
    alpha(mu) = (q^(mu/2) + q^(-mu/2)) / 2                      or  1
    kappa_mu  = alpha(mu-1)*tau1 + nu(mu-1)*sigma2/2

where sigma2 and tau1 are the second and first derivative of the equation's
polynomial coefficients (see ``equation``).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateLattice, LatticeError, RationalParseError
from .numerics import Rational, Scalar, format_rational


@dataclass(frozen=True, order=True)
class HalfInt:
    """An exact half-integer s, stored as ``twice`` = 2s.

    Closed under unit steps (s + j for integer j) and half steps
    (s + k/2 for integer k), which is all the lattice calculus needs.
    """

    twice: int

    @classmethod
    def from_int(cls, value: int) -> "HalfInt":
        return cls(2 * value)

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        """Accepts ``3``, ``-2`` or an exact half such as ``7/2``."""
        from .numerics import parse_rational

        value = parse_rational(text)
        if value.denominator not in (1, 2):
            raise RationalParseError("not a half-integer", 0)
        return cls(int(value * 2))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def plus_half(self, k: int) -> "HalfInt":
        """s + k/2."""
        return HalfInt(self.twice + k)

    def __add__(self, steps: int) -> "HalfInt":
        return HalfInt(self.twice + 2 * steps)

    def __sub__(self, steps: int) -> "HalfInt":
        return HalfInt(self.twice - 2 * steps)

    def __str__(self) -> str:
        return format_rational(self.as_fraction())


def unit_steps(start: HalfInt, end: HalfInt) -> int:
    """Number of unit steps from start to end; they must share parity."""
    gap = end.twice - start.twice
    if gap % 2 != 0:
        raise LatticeError(f"{end} is not a whole number of steps from {start}")
    return gap // 2


class Lattice:
    """Common interface of the two families.  Instances are immutable."""

    allow_degenerate: bool

    def x(self, s: HalfInt) -> Scalar:
        return self.x_k(0, s)

    def x_k(self, k: int, s: HalfInt) -> Scalar:
        """x(s + k/2)."""
        raise NotImplementedError

    def nu(self, mu: int) -> Scalar:
        raise NotImplementedError

    def alpha(self, mu: int) -> Scalar:
        raise NotImplementedError

    @property
    def is_nonuniform(self) -> bool:
        raise NotImplementedError

    # step sizes; a unit step of s on level k
    def delta_x(self, k: int, s: HalfInt) -> Scalar:
        """x_k(s+1) - x_k(s)."""
        return self.x_k(k, s + 1) - self.x_k(k, s)

    def nabla_x(self, k: int, s: HalfInt) -> Scalar:
        """x_k(s) - x_k(s-1)."""
        return self.x_k(k, s) - self.x_k(k, s - 1)

    def mean_shift_beta(self) -> Scalar:
        """The constant beta with (x(s+1)+x(s))/2 = alpha(1)*x_1(s) + beta.

        The coefficient is forced to be alpha(1) = (q^(1/2)+q^(-1/2))/2 by the
        q-lattice algebra (1 on the quadratic family).  beta is a consequence
        of the lattice, not a free parameter; computed from s = 0.
        """
        zero = HalfInt(0)
        return (self.x(zero + 1) + self.x(zero)) / 2 - self.alpha(1) * self.x_k(1, zero)


@dataclass(frozen=True)
class QQuadraticLattice(Lattice):
    """x(s) = c1*q^s + c2*q^(-s) + c3 with q = p^2."""

    p: Rational
    c1: Rational
    c2: Rational
    c3: Rational
    allow_degenerate: bool = False

    def __post_init__(self):
        if self.p == 0 or self.p == 1 or self.p == -1:
            raise LatticeError("p must not be 0, 1, or -1")
        if not self.is_nonuniform and not self.allow_degenerate:
            raise DegenerateLattice(
                "q-quadratic lattice needs c1*c2 != 0 (pass allow_degenerate to override)")

    @property
    def is_nonuniform(self) -> bool:
        return self.c1 * self.c2 != 0

    def x_k(self, k: int, s: HalfInt) -> Scalar:
        e = s.twice + k  # 2s + k, always an integer
        pe = self.p ** e
        return self.c1 * pe + self.c2 / pe + self.c3

    def nu(self, mu: int) -> Scalar:
        pm = self.p ** mu
        return (pm - 1 / pm) / (self.p - 1 / self.p)

    def alpha(self, mu: int) -> Scalar:
        pm = self.p ** mu
        return (pm + 1 / pm) / 2


@dataclass(frozen=True)
class QuadraticLattice(Lattice):
    """x(s) = ct1*s^2 + ct2*s + ct3."""

    ct1: Rational
    ct2: Rational
    ct3: Rational
    allow_degenerate: bool = False

    def __post_init__(self):
        if not self.is_nonuniform and not self.allow_degenerate:
            raise DegenerateLattice(
                "quadratic lattice needs ct1*ct2 != 0 (pass allow_degenerate to override)")

    @property
    def is_nonuniform(self) -> bool:
        return self.ct1 * self.ct2 != 0

    def x_k(self, k: int, s: HalfInt) -> Scalar:
        z = Fraction(s.twice + k, 2)
        return self.ct1 * z * z + self.ct2 * z + self.ct3

    def nu(self, mu: int) -> Scalar:
        return Fraction(mu)

    def alpha(self, mu: int) -> Scalar:
        return Fraction(1)


def kappa(lat: Lattice, sigma2: Scalar, tau1: Scalar, mu: int) -> Scalar:
    """kappa_mu = alpha(mu-1)*tau1 + nu(mu-1)*sigma2/2.

    ``sigma2`` is the full second derivative of the degree-2 coefficient
    polynomial (twice its leading coefficient), ``tau1`` the slope of the
    degree-1 one.
    """
    return lat.alpha(mu - 1) * tau1 + lat.nu(mu - 1) * sigma2 / 2


@dataclass
class KappaTable:
    """Memoized nu/alpha/kappa values for one lattice and one coefficient pair.

    Reads are cheap dictionary hits; population is guarded by a lock so the
    table may be shared between threads.
    """

    lattice: Lattice
    sigma2: Scalar
    tau1: Scalar
    _nu: dict = field(default_factory=dict, repr=False)
    _alpha: dict = field(default_factory=dict, repr=False)
    _kappa: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def nu(self, mu: int) -> Scalar:
        with self._lock:
            if mu not in self._nu:
                self._nu[mu] = self.lattice.nu(mu)
            return self._nu[mu]

    def alpha(self, mu: int) -> Scalar:
        with self._lock:
            if mu not in self._alpha:
                self._alpha[mu] = self.lattice.alpha(mu)
            return self._alpha[mu]

    def kappa(self, mu: int) -> Scalar:
        with self._lock:
            if mu not in self._kappa:
                self._kappa[mu] = kappa(self.lattice, self.sigma2, self.tau1, mu)
            return self._kappa[mu]
