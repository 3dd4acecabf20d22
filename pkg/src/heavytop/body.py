"""Rigid body data and the equations of motion.

A heavy top is specified by its principal moments of inertia A, B, C and
the unit vector L from the fixed point axis, given in the principal axes
frame, plus a gravity flag. The torque-free situation (the classical
integrable case with total angular momentum conserved) is encoded by
switching gravity off rather than by a zero L, so the unit length of L
stays an unconditional invariant.

The analysis frame ("special frame") puts the first axis along L inside
the principal plane containing the fixed point; the inverse inertia
matrix then has the form [[a,0,2d],[0,1,0],[2d,0,c]] after normalizing
the middle moment to one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

from .exact import Rational, rational_sqrt, _frac


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


@dataclass(frozen=True)
class BodyParameters:
    """Principal moments A, B, C, the unit vector L (principal axes frame)
    and the gravity flag."""

    A: Fraction
    B: Fraction
    C: Fraction
    L: Tuple[Fraction, Fraction, Fraction]
    gravity_on: bool = True

    def __post_init__(self):
        object.__setattr__(self, "A", _frac(self.A))
        object.__setattr__(self, "B", _frac(self.B))
        object.__setattr__(self, "C", _frac(self.C))
        object.__setattr__(self, "L", tuple(_frac(x) for x in self.L))
        self.validate()

    def validate(self):
        A, B, C = self.A, self.B, self.C
        if not (A > 0 and B > 0 and C > 0):
            raise ValueError("principal moments must be positive")
        if A + B < C or B + C < A or C + A < B:
            raise ValueError("principal moments violate the triangle conditions")
        if self.gravity_on:
            if sum(x * x for x in self.L) != 1:
                raise ValueError("L must be a unit vector when gravity is on")

    @property
    def symmetric(self) -> bool:
        return self.A == self.B or self.B == self.C or self.C == self.A

    def to_json(self) -> str:
        obj = {
            "A": str(self.A), "B": str(self.B), "C": str(self.C),
            "L": [str(x) for x in self.L],
            "gravity": self.gravity_on,
        }
        return json.dumps(obj, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "BodyParameters":
        obj = json.loads(text)
        return BodyParameters(
            Fraction(obj["A"]), Fraction(obj["B"]), Fraction(obj["C"]),
            tuple(Fraction(x) for x in obj["L"]),
            bool(obj.get("gravity", True)),
        )


@dataclass(frozen=True)
class FrameParams:
    """Inverse-inertia entries in the special frame, middle moment scaled
    to one: J = [[a,0,2d],[0,1,0],[2d,0,c]], with the derived combinations
    f = (a-1)(c-1) - 4d^2 and F = f + c/2 - 7/16."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    f: Fraction
    F: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "f", "F"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.b != 1:
            raise ValueError("frame normalization requires b = 1")
        if self.f != (self.a - 1) * (self.c - 1) - 4 * self.d * self.d:
            raise ValueError("inconsistent f")
        if self.F != self.f + self.c / 2 - Fraction(7, 16):
            raise ValueError("inconsistent F")

    @staticmethod
    def from_acd(a, c, d) -> "FrameParams":
        a, c, d = _frac(a), _frac(c), _frac(d)
        f = (a - 1) * (c - 1) - 4 * d * d
        return FrameParams(a, Fraction(1), c, d, f, f + c / 2 - Fraction(7, 16))

    def inverse_inertia(self):
        a, c, d = self.a, self.c, self.d
        return ((a, Fraction(0), 2 * d),
                (Fraction(0), Fraction(1), Fraction(0)),
                (2 * d, Fraction(0), c))


def derive_special_frame(body: BodyParameters) -> FrameParams:
    """Special-frame constants from principal-axes data.

    Requires the fixed point in the 1-3 principal plane (L2 = 0). Moments
    are first rescaled by B so the middle entry is one; the remaining
    entries follow from rotating the first axis onto L.
    """
    if body.L[1] != 0:
        raise ValueError("fixed point not in principal plane, analysis inapplicable")
    A, C = body.A / body.B, body.C / body.B
    L1, L3 = body.L[0], body.L[2]
    a = L1 * L1 / A + L3 * L3 / C
    c = L1 * L1 / C + L3 * L3 / A
    d = (1 / C - 1 / A) * L1 * L3 / 2
    return FrameParams.from_acd(a, c, d)


@dataclass(frozen=True)
class State:
    """Angular momentum M and gravity direction N in the body frame.

    Components may be exact rationals, floats, or complex; the dynamics
    functions are generic over the scalar type.
    """

    M: tuple
    N: tuple

    def __post_init__(self):
        object.__setattr__(self, "M", tuple(self.M))
        object.__setattr__(self, "N", tuple(self.N))

    def as_vector(self):
        return self.M + self.N

    @staticmethod
    def from_vector(v) -> "State":
        return State(tuple(v[:3]), tuple(v[3:6]))


def _resolve_JL(frame) -> tuple:
    if isinstance(frame, FrameParams):
        return frame.inverse_inertia(), (1, 0, 0)
    J, L = frame
    return J, L


def euler_poisson_rhs(frame, state: State, mu=1) -> State:
    """Time derivative of (M, N): dM/dt = [M,JM] + mu [N,L], dN/dt = [N,JM].

    frame is a FrameParams (then L = e1) or an explicit (J, L) pair.
    mu = 0 encodes the no-gravity case.
    """
    J, L = _resolve_JL(frame)
    M, N = state.M, state.N
    JM = tuple(_dot(row, M) for row in J)
    dM = _cross(M, JM)
    if mu:
        g = _cross(N, L)
        dM = tuple(x + mu * y for x, y in zip(dM, g))
    dN = _cross(N, JM)
    return State(dM, dN)


def first_integrals(frame, state: State, mu=1):
    """Energy H = <M,JM>/2 + mu <N,L> and the Casimirs H1 = <M,N>,
    H2 = <N,N>."""
    J, L = _resolve_JL(frame)
    M, N = state.M, state.N
    JM = tuple(_dot(row, M) for row in J)
    H = _dot(M, JM) / 2 + (mu * _dot(N, L) if mu else 0)
    return H, _dot(M, N), _dot(N, N)


# ---------------------------------------------------------------------------
# Classical integrable cases
# ---------------------------------------------------------------------------

EULER = "Euler"
LAGRANGE = "Lagrange"
KOVALEVSKAYA = "Kovalevskaya"
GORYACHEV_CHAPLYGIN = "GoryachevChaplygin"


@dataclass(frozen=True)
class ClassicalCase:
    """A matched classical case with a closed-form extra integral.

    extra_integral evaluates in the caller's frame (the transformation to
    the case's canonical frame is applied internally). For the
    Goryachev-Chaplygin case the integral is conserved only on the level
    H1 = 0, which requires_h1_zero records.
    """

    tag: str
    extra_integral: Callable[[State], object]
    requires_h1_zero: bool = False
    note: str = ""


_EVEN_PERMS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _permute(vec, perm):
    return tuple(vec[p] for p in perm)


def _rotate12(vec, cos_t, sin_t):
    # rotation about the third axis
    return (cos_t * vec[0] + sin_t * vec[1],
            -sin_t * vec[0] + cos_t * vec[1],
            vec[2])


def _kovalevskaya_integral(M, N, scale):
    # scale = B brings the moments to the normalized frame (B = 1), where
    # the combinations below are exactly the conserved ones
    x = (M[0] * M[0] - M[1] * M[1]) / (2 * scale) - N[0]
    y = M[0] * M[1] / scale - N[1]
    return x * x + y * y


def _gc_integral(M, N, scale):
    return M[2] * (M[0] * M[0] + M[1] * M[1]) / scale - M[0] * N[2]


def classical_case_detect(body: BodyParameters) -> Optional[ClassicalCase]:
    """Match the body against the four classical integrable templates.

    All even axis relabelings are tried, plus exact rotations about the
    symmetry axis where the data allows them, so users need not follow
    any axis convention. Detection order: gravity off (total angular
    momentum conserved), spherical or on-axis fixed point (projection on
    the symmetry axis conserved), the equatorial 2C and 4C templates.
    """
    if not body.gravity_on:
        return ClassicalCase(EULER, lambda st: _dot(st.M, st.M))

    A, B, C, L = body.A, body.B, body.C, body.L

    if A == B == C:
        # every axis is principal; <M, L> is the symmetry-axis projection
        return ClassicalCase(LAGRANGE, lambda st: _dot(st.M, L))

    for perm in _EVEN_PERMS:
        pA, pB, pC = _permute((A, B, C), perm)
        pL = _permute(L, perm)
        if pA != pB:
            continue
        # Lagrange: fixed point on the symmetry axis
        if pL[0] == 0 and pL[1] == 0:
            def lagrange(st, perm=perm):
                return _permute(st.M, perm)[2]
            return ClassicalCase(LAGRANGE, lagrange)
        if pL[2] != 0:
            continue
        # fixed point in the equatorial plane: rotate it onto axis 1
        cos_t, sin_t = pL[0], pL[1]
        if pA == 2 * pC:
            def kova(st, perm=perm, c=cos_t, s=sin_t, scale=pB):
                M = _rotate12(_permute(st.M, perm), c, s)
                N = _rotate12(_permute(st.N, perm), c, s)
                return _kovalevskaya_integral(M, N, scale)
            return ClassicalCase(KOVALEVSKAYA, kova)
        if pA == 4 * pC:
            def gc(st, perm=perm, c=cos_t, s=sin_t, scale=pB):
                M = _rotate12(_permute(st.M, perm), c, s)
                N = _rotate12(_permute(st.N, perm), c, s)
                return _gc_integral(M, N, scale)
            return ClassicalCase(GORYACHEV_CHAPLYGIN, gc, requires_h1_zero=True,
                                 note="extra integral only on the level H1 = 0")
    return None


def normalize_equatorial(body: BodyParameters) -> Optional[BodyParameters]:
    """Rotate a symmetric body about its symmetry axis so L2 = 0.

    Works by even relabeling when one of L1, L2 vanishes, or by an exact
    rotation when sqrt(L1^2 + L2^2) is rational. Returns None when no
    exact normalization exists. Assumes A = B.
    """
    if body.A != body.B:
        raise ValueError("normalization about the symmetry axis needs A = B")
    L1, L2, L3 = body.L
    if L2 == 0:
        return body
    if L1 == 0:
        # swap axes 1, 2 keeping orientation: (1,2,3) -> (2,-1,3)
        return BodyParameters(body.A, body.B, body.C, (L2, -L1, L3), body.gravity_on)
    rho = rational_sqrt(L1 * L1 + L2 * L2)
    if rho is None:
        return None
    cos_t, sin_t = L1 / rho, L2 / rho
    newL = _rotate12(body.L, cos_t, sin_t)
    return BodyParameters(body.A, body.B, body.C, newL, body.gravity_on)
