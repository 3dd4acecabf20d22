"""Variational equations along the pendulum families and their exact
reduction to three classification targets.

The chain for the first family: linearize the flow on the invariant
plane, reduce the normal part to one scalar second order equation in
time, algebraize through the circle substitution z = N3/(1+N1) (a
branched double covering of the Riemann sphere), and bring the result to
reduced form w'' = r(z) w. The substitution is applied formally on
rational expressions; no floating elliptic values enter, so the
classification data stays exact.

For the fixed point on the equatorial plane the same reduction admits a
three-singularity form (a hypergeometric-class equation via z = N1^2)
and, along the second family, a Weierstrass-form equation
n'' = (alpha p(t) + beta) n.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .body import FrameParams, State
from .exact import (GaussRational, PartialFractionForm, Poly, PoleTerm,
                    RationalFunction, SqrtQuantity, _frac,
                    partial_fractions)
from .solutions import (FIRST, SECOND, pendulum_solution_first,
                        weierstrass_data)

# ---------------------------------------------------------------------------
# Variational matrix (both families)
# ---------------------------------------------------------------------------

def _skew(v):
    return ((0, -v[2], v[1]),
            (v[2], 0, -v[0]),
            (-v[1], v[0], 0))


def _matmul3(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3))
                 for i in range(3))


def _on_first_curve(st: State) -> bool:
    return st.M[0] == 0 and st.M[2] == 0 and st.N[1] == 0 and \
        st.N[0] * st.N[0] + st.N[2] * st.N[2] == 1


def _on_second_curve(st: State) -> bool:
    return st.M[0] == 0 and st.M[1] == 0 and st.N[2] == 0 and \
        st.N[0] * st.N[0] + st.N[1] * st.N[1] == 1


def variational_matrix(family: str, frame: FrameParams, point: State):
    """6x6 matrix of the flow linearized at a point of the given family.

    Exact for exact inputs. Block structure, with S(v) the cross product
    matrix and J the special frame inverse inertia:

        [ -S(JM) + S(M) J   -S(L) ]
        [  S(N) J           -S(JM)]
    """
    if family == FIRST:
        if not _on_first_curve(point):
            raise ValueError("point does not lie on the first-family plane")
    elif family == SECOND:
        if not _on_second_curve(point):
            raise ValueError("point does not lie on the second-family plane")
    else:
        raise ValueError(f"unknown family {family!r}")

    J = frame.inverse_inertia()
    L = (Fraction(1), Fraction(0), Fraction(0))
    M, N = point.M, point.N
    JM = tuple(sum(J[i][k] * M[k] for k in range(3)) for i in range(3))

    sJM = _skew(JM)
    A11 = tuple(tuple(-sJM[i][j] + _matmul3(_skew(M), J)[i][j] for j in range(3))
                for i in range(3))
    A12 = tuple(tuple(-x for x in row) for row in _skew(L))
    A21 = _matmul3(_skew(N), J)
    A22 = tuple(tuple(-x for x in row) for row in sJM)

    out = []
    for i in range(3):
        out.append(tuple(A11[i]) + tuple(A12[i]))
    for i in range(3):
        out.append(tuple(A21[i]) + tuple(A22[i]))
    return tuple(out)


# ---------------------------------------------------------------------------
# Scalar second order form along the first family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalarCoefficients:
    """Time-domain coefficients of m'' + a1(t) m' + a0(t) m = 0, flagged
    at the zeros of M2 where a1 has a pole."""

    a1: complex
    a0: complex
    flagged: bool = False


def nve_second_order_first(frame: FrameParams, k: float,
                           zero_tol: float = 1e-9) -> Callable[[complex], ScalarCoefficients]:
    """Coefficient evaluator for the scalar normal variational equation
    along the first family: a1 = -2 N3/M2, a0 = (1-c) N1 + 2d N3 + f M2^2.

    The stationary members (k outside (0,1], M2 identically zero) are not
    admitted; isolated zeros of M2 along a genuine orbit produce flagged
    values.
    """
    if not 0 < k <= 1:
        raise ValueError("modulus must lie in (0, 1] (stationary point otherwise)")
    c, d, f = float(frame.c), float(frame.d), float(frame.f)

    def coefficients(t) -> ScalarCoefficients:
        pt = pendulum_solution_first(k, t)
        M2, N1, N3 = pt.values
        a0 = (1 - c) * N1 + 2 * d * N3 + f * M2 * M2
        if pt.near_pole or abs(M2) < zero_tol:
            return ScalarCoefficients(complex("inf"), a0, flagged=True)
        return ScalarCoefficients(-2 * N3 / M2, a0)

    return coefficients


def nve_first_order_rhs(frame: FrameParams, k: float):
    """Right hand side of the 2D normal system (m1, m3) along the first
    family, for numerical cross-checks of the scalar reduction."""
    a, c, d = float(frame.a), float(frame.c), float(frame.d)

    def rhs(t, y):
        pt = pendulum_solution_first(k, t)
        M2, N1, N3 = pt.values
        m1, m3 = y[0], y[1]
        dm1 = 2 * d * M2 * m1 + (c - 1) * M2 * m3
        dm3 = (N1 / M2 + (1 - a) * M2) * m1 + (N3 / M2 - 2 * d * M2) * m3
        return [dm1, dm3]

    return rhs


# ---------------------------------------------------------------------------
# Algebraization over the Riemann sphere
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraizedEquation:
    """m'' + p(z) m' + q(z) m = 0 with exact rational coefficients and four
    regular singular points {i, -i, s, -s}; infinity is ordinary."""

    p: RationalFunction
    q: RationalFunction
    s: Fraction
    singular_points: tuple

    def coefficient_callables(self):
        return (lambda z: self.p(z)), (lambda z: self.q(z))


def algebraized_equation(c, d, f, s) -> AlgebraizedEquation:
    """Exact algebraized first-family equation from raw frame entries.

    Uses the circle parametrization N1 = (1-z^2)/(1+z^2), N3 = 2z/(1+z^2),
    M2 = 2 z'/(1+z^2) with z'^2 = (z^2+1)(z^2-s^2)/(s^2+1), and the energy
    parameter s = k'/k fixed rational.
    """
    c, d, f, s = _frac(c), _frac(d), _frac(f), _frac(s)
    if s == 0:
        raise ValueError("degenerate energy parameter s = 0")
    z = Poly.x()
    one = Poly.constant(1)
    zsq1 = z * z + one
    zsqs = z * z - Poly.constant(s * s)
    zdot2 = RationalFunction(zsq1 * zsqs, Poly.constant(s * s + 1))
    zddot = zdot2.derivative() / 2
    p = (zddot - RationalFunction.of(Poly.of(0, 2))) / zdot2

    N1 = RationalFunction(one - z * z, zsq1)
    N3 = RationalFunction(Poly.of(0, 2), zsq1)
    M2sq = 4 * zdot2 / RationalFunction.of(zsq1 * zsq1)
    a0 = (1 - c) * N1 + 2 * d * N3 + f * M2sq
    q = a0 / zdot2

    i = GaussRational(0, 1)
    sing = (i, -i, GaussRational(s), GaussRational(-s))
    return AlgebraizedEquation(p, q, s, sing)


def algebraize_first(frame: FrameParams, s) -> AlgebraizedEquation:
    return algebraized_equation(frame.c, frame.d, frame.f, s)


# ---------------------------------------------------------------------------
# Reduced form and Fuchsian data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Singularity:
    location: GaussRational
    a: GaussRational   # order-2 partial fraction coefficient
    b: GaussRational   # order-1 coefficient

    @property
    def exponent_difference(self) -> SqrtQuantity:
        return SqrtQuantity(GaussRational(1) + 4 * self.a)


@dataclass(frozen=True)
class FuchsianEquation:
    """Second order equation in reduced form w'' = r(z) w, store as exact
    partial fractions with order <= 2 poles and regular infinity."""

    r: PartialFractionForm
    singularities: tuple
    infinity_order: int

    @property
    def exponent_differences(self) -> tuple:
        return tuple(s.exponent_difference for s in self.singularities)

    def r_rational(self) -> RationalFunction:
        return self.r.reassemble()

    def r_callable(self) -> Callable[[complex], complex]:
        rf = self.r_rational()
        return lambda z: rf(z)

    def a_infinity(self) -> GaussRational:
        """Coefficient of 1/z^2 at infinity (meaningful when
        infinity_order == 2)."""
        rf = self.r_rational()
        num, den = rf.num, rf.den
        if num.is_zero():
            return GaussRational(0)
        if den.degree - num.degree == 2:
            return num.leading() / den.leading()
        return GaussRational(0)

    def to_json(self) -> str:
        obj = {
            "singularities": [
                {"z": str(s.location), "a": str(s.a), "b": str(s.b)}
                for s in self.singularities
            ],
            "infinity_order": self.infinity_order,
        }
        return json.dumps(obj, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "FuchsianEquation":
        obj = json.loads(text)
        sings = []
        for item in obj["singularities"]:
            order = int(item.get("order", 2))
            if order > 2:
                raise ValueError(f"pole of order {order} > 2 unsupported")
            sings.append(Singularity(GaussRational.parse(item["z"]),
                                     GaussRational.parse(item["a"]),
                                     GaussRational.parse(item["b"])))
        sings.sort(key=lambda s: (s.location.re, s.location.im))
        locations = [s.location for s in sings]
        if len(set(locations)) != len(locations):
            raise ValueError("duplicate singular points")
        terms = tuple(PoleTerm(s.location, s.a, s.b) for s in sings)
        pf = PartialFractionForm(terms, Poly(()))
        infinity_order = int(obj["infinity_order"])
        if infinity_order > 2:
            raise ValueError("equation is not Fuchsian at infinity")
        return FuchsianEquation(pf, tuple(sings), infinity_order)


def normal_reduced_form(p: RationalFunction, q: RationalFunction) -> FuchsianEquation:
    """Reduced form r = p'/2 + p^2/4 - q of m'' + p m' + q m = 0, in exact
    partial fractions with singularity bookkeeping."""
    r = p.derivative() / 2 + p * p / 4 - q
    pf = partial_fractions(r)
    sings = tuple(Singularity(t.pole, t.second_order, t.first_order)
                  for t in pf.terms)
    rf = pf.reassemble()
    if rf.is_zero():
        infinity_order = 0
    else:
        infinity_order = max(0, 4 + rf.num.degree - rf.den.degree)
    if infinity_order > 2:
        raise ValueError("equation is not Fuchsian at infinity")
    if not pf.polynomial_part.is_zero():
        raise ValueError("reduced form has a polynomial part; not Fuchsian")
    return FuchsianEquation(pf, sings, infinity_order)


def reduced_equation_first(c, d, f, s) -> FuchsianEquation:
    alg = algebraized_equation(c, d, f, s)
    return normal_reduced_form(alg.p, alg.q)


def reduced_equation_from_dF(d, F, s=1) -> FuchsianEquation:
    """Reduced first-family equation from the two combinations (d, F) that
    the reduced coefficients actually depend on; internally realized with
    f = 0 and c = 2F + 7/8."""
    d, F = _frac(d), _frac(F)
    c = 2 * F + Fraction(7, 8)
    return reduced_equation_first(c, d, Fraction(0), s)


# ---------------------------------------------------------------------------
# Equatorial fixed point: three-singularity form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RiemannPData:
    """Exponent data of the three-singularity equation obtained from the
    first family when the fixed point is equatorial (d = 0, c = 1/C).

    Exponents at 0 are {0, 3/4}, at 1 are {0, 1/2}; the pair at infinity
    has exact sum -1/4 and difference sqrt(8c-7)/4, kept as an exact
    radicand. The Fuchs relation (all six exponents sum to one) holds by
    construction and is exposed for verification.
    """

    c: Fraction
    lam: SqrtQuantity    # difference at z = 0
    nu: SqrtQuantity     # difference at z = 1
    mu: SqrtQuantity     # difference at z = infinity
    exponents_zero: tuple
    exponents_one: tuple
    infinity_sum: Fraction

    def fuchs_relation_sum(self) -> Fraction:
        return (self.exponents_zero[0] + self.exponents_zero[1]
                + self.exponents_one[0] + self.exponents_one[1]
                + self.infinity_sum)

    def differences(self) -> tuple:
        return (self.lam, self.mu, self.nu)


def riemann_p_from_L3zero(c) -> RiemannPData:
    """Exponent data for the equatorial case, c = 1/C in (1/2, inf)."""
    c = _frac(c)
    if c <= Fraction(1, 2):
        raise ValueError("physical range requires c > 1/2")
    mu_radicand = GaussRational((8 * c - 7) / 16)
    return RiemannPData(
        c=c,
        lam=SqrtQuantity(GaussRational(Fraction(9, 16))),
        nu=SqrtQuantity(GaussRational(Fraction(1, 4))),
        mu=SqrtQuantity(mu_radicand),
        exponents_zero=(Fraction(0), Fraction(3, 4)),
        exponents_one=(Fraction(0), Fraction(1, 2)),
        infinity_sum=Fraction(-1, 4),
    )


def riemann_p_equation(c) -> tuple:
    """The equatorial-case equation m'' + p m' + q m = 0 itself, with
    p = (1/2)(1/(z-1) + 1/(2z)) and q = ((1-c)/8)(1/(z-1) - 1/z), as exact
    rational functions (for monodromy and residual checks)."""
    c = _frac(c)
    z = Poly.x()
    one = Poly.constant(1)
    p = (RationalFunction(Poly.constant(Fraction(1, 2)), z - one)
         + RationalFunction(Poly.constant(Fraction(1, 4)), z))
    q = (RationalFunction(Poly.constant((1 - c) / 8), z - one)
         - RationalFunction(Poly.constant((1 - c) / 8), z))
    return p, q


# ---------------------------------------------------------------------------
# Second family: Weierstrass-form data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LameData:
    """Data of the Weierstrass-form equation n'' = (alpha p(t) + beta) n
    along the second family: alpha = 2C(2C+1) (so n-parameter 2C), with
    the curve invariants from the energy substitution."""

    C: Fraction
    alpha: Fraction
    beta: Fraction
    n: Fraction
    g2: Fraction
    g3: Fraction
    discriminant: Fraction
    e: Fraction


def lame_from_second(C, e) -> LameData:
    """Exact Weierstrass-form data at principal moment C in (0,2) and
    energy e (e = +-1 degenerates the curve and is rejected)."""
    C, e = _frac(C), _frac(e)
    if not 0 < C < 2:
        raise ValueError("physical restriction requires C in (0, 2)")
    wd = weierstrass_data(Fraction(1) / C, e)
    if wd.degenerate:
        raise ValueError("degenerate discriminant at e = +-1")
    alpha = 2 * C * (2 * C + 1)
    beta = (e / 3) * C * (1 - 4 * C)
    return LameData(C=C, alpha=alpha, beta=beta, n=2 * C,
                    g2=wd.g2, g3=wd.g3, discriminant=wd.discriminant, e=e)


def lame_beta_coefficient(C) -> Fraction:
    """Coefficient of e in the beta entry: beta(e) = C(1-4C)/3 * e."""
    C = _frac(C)
    return C * (1 - 4 * C) / 3
