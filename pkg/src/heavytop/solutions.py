"""Pendulum-type particular solutions of the heavy top.

Two one-parameter families, both living on invariant planes of the flow
and parametrized by Jacobi elliptic functions of modulus k:

  first family   M2 = -2k cn(t,k), N1 = 2k^2 sn^2 - 1, N3 = 2k sn dn
                 (axis oscillation in the 1-3 plane, energy e = 2k^2 - 1)
  second family  M3 = (2k/w) cn(wt,k), N1 = 2k^2 sn^2(wt) - 1,
                 N2 = 2k sn(wt) dn(wt), with w^2 = c

The second family also carries exact Weierstrass data through the level
substitution N1 = (2/c) v + e/3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .body import State
from .exact import _frac
from .numerics import (JacobiValues, distance_to_pole, elliptic_K,
                       elliptic_K_complement, jacobi_sn_cn_dn)

FIRST = "first"
SECOND = "second"


@dataclass(frozen=True)
class OrbitPoint:
    """Evaluated triple on one of the invariant planes."""

    values: tuple
    near_pole: bool = False


def pendulum_solution_first(k: float, t) -> OrbitPoint:
    """(M2, N1, N3) along the first family at complex time t.

    Satisfies dM2/dt = N3, dN1/dt = -M2 N3, dN3/dt = M2 N1 and the level
    relations M2^2/2 + N1 = 2k^2 - 1, N1^2 + N3^2 = 1.
    """
    if not 0 < k <= 1:
        raise ValueError("modulus must lie in (0, 1]")
    jv = jacobi_sn_cn_dn(t, k)
    if jv.near_pole:
        return OrbitPoint((complex("nan"),) * 3, near_pole=True)
    M2 = -2 * k * jv.cn
    N1 = 2 * k * k * jv.sn ** 2 - 1
    N3 = 2 * k * jv.sn * jv.dn
    return OrbitPoint((M2, N1, N3))


def pendulum_solution_second(k: float, c, t) -> OrbitPoint:
    """(M3, N1, N2) along the second family at complex time t, with
    frequency w = sqrt(c). Satisfies dM3/dt = -N2, dN1/dt = c M3 N2,
    dN2/dt = -c M3 N1 and c M3^2/2 + N1 = 2k^2 - 1, N1^2 + N2^2 = 1.
    """
    if not 0 < k <= 1:
        raise ValueError("modulus must lie in (0, 1]")
    c = float(c)
    if c <= 0:
        raise ValueError("c must be positive")
    w = math.sqrt(c)
    jv = jacobi_sn_cn_dn(w * complex(t), k)
    if jv.near_pole:
        return OrbitPoint((complex("nan"),) * 3, near_pole=True)
    M3 = (2 * k / w) * jv.cn
    N1 = 2 * k * k * jv.sn ** 2 - 1
    N2 = 2 * k * jv.sn * jv.dn
    return OrbitPoint((M3, N1, N2))


@dataclass(frozen=True)
class PendulumSolution:
    """One member of a solution family, bundled with its full 6D embedding."""

    family: str
    k: float
    c: Fraction = Fraction(1)

    def __post_init__(self):
        if not 0 < self.k <= 1:
            raise ValueError("modulus must lie in (0, 1]")
        if self.family not in (FIRST, SECOND):
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "c", _frac(self.c))

    @property
    def energy(self) -> float:
        return 2 * self.k * self.k - 1

    def triple(self, t) -> OrbitPoint:
        if self.family == FIRST:
            return pendulum_solution_first(self.k, t)
        return pendulum_solution_second(self.k, self.c, t)

    def state(self, t) -> State:
        p = self.triple(t)
        if self.family == FIRST:
            M2, N1, N3 = p.values
            return State((0.0, M2, 0.0), (N1, 0.0, N3))
        M3, N1, N2 = p.values
        return State((0.0, 0.0, M3), (N1, N2, 0.0))


@dataclass(frozen=True)
class PeriodData:
    """Primitive periods, minimal real/imaginary periods and pole positions
    of one family member (all scaled by 1/w for the second family)."""

    T1: complex
    T2: complex
    T_real: float
    T_imag: complex
    poles: tuple

    def contains_pole_conjugate_pair(self) -> bool:
        return len(self.poles) == 2 and abs(self.poles[0] + self.poles[1]) < 1e-12


def periods_and_poles(k: float, family: str = FIRST, c=Fraction(1)) -> PeriodData:
    """Primitive periods 2K +- 2iK' and the two simple poles +- iK' per
    period cell, divided by w = sqrt(c) for the second family."""
    if not 0 < k < 1:
        raise ValueError("degenerate (infinite real period)" if k == 1
                         else "modulus must lie in (0, 1)")
    K = elliptic_K(k)
    Kp = elliptic_K_complement(k)
    w = 1.0
    if family == SECOND:
        w = math.sqrt(float(c))
    elif family != FIRST:
        raise ValueError(f"unknown family {family!r}")
    T1 = complex(2 * K, 2 * Kp) / w
    T2 = complex(2 * K, -2 * Kp) / w
    return PeriodData(
        T1=T1, T2=T2,
        T_real=4 * K / w,
        T_imag=4j * Kp / w,
        poles=(1j * Kp / w, -1j * Kp / w),
    )


def pole_distance(t, k: float) -> float:
    """Distance from complex time t to the nearest first-family pole."""
    return distance_to_pole(t, k)


@dataclass(frozen=True)
class WeierstrassData:
    """Exact invariants of the elliptic curve behind the second family.

    The substitution N1 = (2/c) v + e/3 turns the level dynamics into
    v'^2 = 4v^3 - g2 v - g3 with g2 = c^2 (e^2+3)/3, g3 = c^3 e (e^2-9)/27.
    """

    c: Fraction
    e: Fraction
    g2: Fraction
    g3: Fraction
    discriminant: Fraction
    degenerate: bool

    @property
    def j_invariant(self) -> Fraction:
        if self.degenerate:
            raise ZeroDivisionError("j undefined on degenerate curve (e = +-1)")
        return self.g2 ** 3 / self.discriminant

    def substitution(self) -> str:
        return "N1 = (2/c) v + e/3"


def weierstrass_data(c, e) -> WeierstrassData:
    """Exact g2, g3, discriminant and degeneracy flag for given c and
    energy e. The discriminant factors as c^6 (e^2-1)^2, so the curve is
    degenerate exactly at e = +-1."""
    c, e = _frac(c), _frac(e)
    g2 = c * c * (e * e + 3) / 3
    g3 = c ** 3 * e * (e * e - 9) / 27
    disc = g2 ** 3 - 27 * g3 * g3
    return WeierstrassData(c, e, g2, g3, disc, degenerate=(disc == 0))


def weierstrass_polynomials(c) -> tuple:
    """g2 and g3 as exact polynomial coefficient lists in the energy e:
    g2 = (c^2/3) e^2 + c^2, g3 = (c^3/27) e^3 - (c^3/3) e. Returned as
    ascending coefficient tuples for use with exact Poly arithmetic."""
    c = _frac(c)
    g2 = (c * c, Fraction(0), c * c / 3)
    g3 = (Fraction(0), -c ** 3 / 3, Fraction(0), c ** 3 / 27)
    return g2, g3
