"""Body parameters, special frame, dynamics, classical case detection."""

import random
from fractions import Fraction

import numpy as np
import pytest

from heavytop.body import (BodyParameters, FrameParams, State,
                           classical_case_detect, derive_special_frame,
                           euler_poisson_rhs, first_integrals,
                           normalize_equatorial, EULER, GORYACHEV_CHAPLYGIN,
                           KOVALEVSKAYA, LAGRANGE)
from heavytop.numerics import integrate

F = Fraction


def test_validation_positive_moments():
    with pytest.raises(ValueError):
        BodyParameters(-1, 1, 1, (1, 0, 0))


def test_validation_triangle():
    with pytest.raises(ValueError):
        BodyParameters(1, 1, 3, (1, 0, 0))


def test_validation_unit_L():
    with pytest.raises(ValueError):
        BodyParameters(1, 1, 1, (1, 1, 0))
    BodyParameters(1, 1, 1, (1, 1, 0), gravity_on=False)   # no constraint


def test_json_roundtrip():
    b = BodyParameters(1, 1, F(1, 3), (F(3, 5), 0, F(4, 5)))
    assert BodyParameters.from_json(b.to_json()) == b


# ---------------------------------------------------------------------------
# Special frame
# ---------------------------------------------------------------------------

def test_frame_kovalevskaya_sample():
    frame = derive_special_frame(BodyParameters(1, 1, F(1, 2), (1, 0, 0)))
    assert (frame.a, frame.c, frame.d) == (1, 2, 0)
    assert frame.f == 0
    assert frame.F == F(9, 16)


def test_frame_tilted_sample():
    # by the defining formulas: a = 9/25 + 48/25, c = 27/25 + 16/25,
    # 2d = (3 - 1) (3/5)(4/5)
    frame = derive_special_frame(BodyParameters(1, 1, F(1, 3), (F(3, 5), 0, F(4, 5))))
    assert frame.a == F(57, 25)
    assert frame.c == F(43, 25)
    assert frame.d == F(12, 25)
    assert frame.f == 0
    assert frame.F == F(43, 50) - F(7, 16)


def test_frame_spherical_any_axis():
    frame = derive_special_frame(BodyParameters(2, 2, 2, (F(3, 5), 0, F(4, 5))))
    assert frame.d == 0
    assert frame.a == frame.c


def test_frame_requires_L2_zero():
    with pytest.raises(ValueError, match="principal plane"):
        derive_special_frame(BodyParameters(1, 1, F(1, 2), (0, 1, 0)))


def test_frame_f_vanishes_for_symmetric_bodies():
    rng = random.Random(2)
    for _ in range(20):
        C = F(rng.randint(1, 8), rng.randint(4, 9))
        # rational point on the circle from a Pythagorean parametrization
        m, n = rng.randint(1, 5), rng.randint(6, 9)
        L1, L3 = F(n * n - m * m, n * n + m * m), F(2 * m * n, n * n + m * m)
        if C >= 2:
            continue
        body = BodyParameters(1, 1, C, (L1, 0, L3))
        frame = derive_special_frame(body)
        assert frame.f == 0
        assert frame.F == frame.c / 2 - F(7, 16)


def test_frame_d_sign_scaling_invariant():
    base = BodyParameters(1, 1, F(1, 3), (F(3, 5), 0, F(4, 5)))
    lam = F(7, 3)
    scaled = BodyParameters(base.A * lam, base.B * lam, base.C * lam, base.L)
    d0 = derive_special_frame(base).d
    d1 = derive_special_frame(scaled).d
    assert (d0 > 0) == (d1 > 0)
    assert (d0 == 0) == (d1 == 0)


# ---------------------------------------------------------------------------
# Equations of motion and first integrals
# ---------------------------------------------------------------------------

def test_rhs_equilibrium():
    frame = FrameParams.from_acd(F(57, 25), F(43, 25), F(12, 25))
    st = State((0, 0, 0), (1, 0, 0))
    d = euler_poisson_rhs(frame, st)
    assert d.M == (0, 0, 0) and d.N == (0, 0, 0)


def test_rhs_restricted_first_plane():
    # on M = (0, m2, 0), N = (n1, 0, n3): dM2 = n3, dN1 = -m2 n3, dN3 = m2 n1
    frame = FrameParams.from_acd(F(57, 25), F(43, 25), F(12, 25))
    m2, n1, n3 = F(1, 2), F(3, 5), F(4, 5)
    d = euler_poisson_rhs(frame, State((0, m2, 0), (n1, 0, n3)))
    assert d.M == (0, n3, 0)
    assert d.N == (-m2 * n3, 0, m2 * n1)


def test_rhs_restricted_second_plane():
    # d = 0: on M = (0,0,m3), N = (n1,n2,0): dM3 = -n2, dN1 = c m3 n2, dN2 = -c m3 n1
    c = F(4, 3)
    frame = FrameParams.from_acd(1, c, 0)
    m3, n1, n2 = F(1, 3), F(5, 13), F(12, 13)
    d = euler_poisson_rhs(frame, State((0, 0, m3), (n1, n2, 0)))
    assert d.M == (0, 0, -n2)
    assert d.N == (c * m3 * n2, -c * m3 * n1, 0)


def test_first_integrals_equilibrium():
    frame = FrameParams.from_acd(1, 2, 0)
    H, H1, H2 = first_integrals(frame, State((0, 0, 0), (1, 0, 0)))
    assert (H, H1, H2) == (1, 0, 1)


def test_first_integrals_on_first_plane_level():
    frame = FrameParams.from_acd(F(57, 25), F(43, 25), F(12, 25))
    k = F(3, 4)
    st = State((0, 2 * k, 0), (-1, 0, 0))
    H, _, H2 = first_integrals(frame, st)
    assert H == 2 * k * k - 1
    assert H2 == 1


def _rhs_callable(frame, mu=1):
    def rhs(t, y):
        st = State(tuple(y[:3]), tuple(y[3:6]))
        d = euler_poisson_rhs(frame, st, mu=mu)
        return np.array(d.M + d.N)
    return rhs


def test_first_integrals_conserved_numerically():
    frame = FrameParams.from_acd(F(57, 25), F(43, 25), F(12, 25))
    y0 = np.array([0.3, -0.2, 0.5, 0.6, 0.64, 0.48])
    traj = integrate(_rhs_callable(frame), y0, (0, 20))
    vals = []
    for row in traj.states:
        st = State(tuple(row[:3].real), tuple(row[3:].real))
        vals.append(first_integrals(frame, st))
    vals = np.array(vals, dtype=float)
    drift = np.abs(vals - vals[0]).max(axis=0)
    assert drift.max() < 1e-9


# ---------------------------------------------------------------------------
# Classical case detection
# ---------------------------------------------------------------------------

def test_detect_euler_gravity_off():
    case = classical_case_detect(BodyParameters(2, 3, 4, (1, 0, 0), gravity_on=False))
    assert case is not None and case.tag == EULER


def test_detect_kovalevskaya():
    case = classical_case_detect(BodyParameters(1, 1, F(1, 2), (1, 0, 0)))
    assert case is not None and case.tag == KOVALEVSKAYA


def test_detect_goryachev_chaplygin():
    case = classical_case_detect(BodyParameters(1, 1, F(1, 4), (1, 0, 0)))
    assert case is not None and case.tag == GORYACHEV_CHAPLYGIN
    assert case.requires_h1_zero


def test_detect_lagrange_any_axis():
    for L, moments in [((0, 0, 1), (1, 1, F(1, 2))),
                       ((1, 0, 0), (F(1, 2), 1, 1)),
                       ((0, 1, 0), (1, F(1, 2), 1))]:
        case = classical_case_detect(BodyParameters(*moments, L))
        assert case is not None and case.tag == LAGRANGE


def test_detect_permuted_kovalevskaya():
    # symmetry pair on axes (2, 3), equatorial fixed point
    case = classical_case_detect(BodyParameters(F(1, 2), 1, 1, (0, F(3, 5), F(4, 5))))
    assert case is not None and case.tag == KOVALEVSKAYA


def test_detect_none():
    assert classical_case_detect(BodyParameters(2, 3, 4, (1, 0, 0))) is None


def test_detect_spherical_is_lagrange():
    case = classical_case_detect(BodyParameters(1, 1, 1, (F(3, 5), 0, F(4, 5))))
    assert case is not None and case.tag == LAGRANGE


@pytest.mark.parametrize("body,h1_zero", [
    (BodyParameters(2, 3, 4, (1, 0, 0), gravity_on=False), False),
    (BodyParameters(1, 1, F(1, 2), (1, 0, 0)), False),
    (BodyParameters(1, 1, F(1, 2), (F(3, 5), F(4, 5), 0)), False),
    (BodyParameters(2, 2, 1, (F(3, 5), F(4, 5), 0)), False),
    (BodyParameters(1, 1, F(2, 3), (0, 0, 1)), False),
    (BodyParameters(1, 1, F(1, 4), (1, 0, 0)), True),
])
def test_extra_integral_drift(body, h1_zero):
    case = classical_case_detect(body)
    assert case is not None
    J = tuple(tuple(F(1) / m if i == j else F(0) for j, m in enumerate((body.A, body.B, body.C)))
              for i in range(3))
    mu = 1 if body.gravity_on else 0
    rng = np.random.default_rng(42)
    M0 = rng.normal(size=3)
    N0 = rng.normal(size=3)
    N0 /= np.linalg.norm(N0)
    if h1_zero:
        M0 -= (M0 @ N0) * N0
    y0 = np.concatenate([M0, N0])

    def rhs(t, y):
        st = State(tuple(y[:3]), tuple(y[3:6]))
        d = euler_poisson_rhs((J, (float(x) for x in body.L)), st, mu=mu)
        return np.array(d.M + d.N)

    def rhs_f(t, y):
        st = State(tuple(y[:3]), tuple(y[3:6]))
        Jf = [[float(x) for x in row] for row in J]
        Lf = [float(x) for x in body.L]
        d = euler_poisson_rhs((Jf, Lf), st, mu=mu)
        return np.array(d.M + d.N)

    traj = integrate(rhs_f, y0, (0, 20))
    vals = np.array([float(case.extra_integral(State(tuple(r[:3].real), tuple(r[3:].real))).real
                           if isinstance(case.extra_integral(State(tuple(r[:3].real), tuple(r[3:].real))), complex)
                           else case.extra_integral(State(tuple(r[:3].real), tuple(r[3:].real))))
                     for r in traj.states])
    assert np.abs(vals - vals[0]).max() < 1e-8


def test_normalize_equatorial_rational_rotation():
    body = BodyParameters(1, 1, F(1, 2), (F(3, 5), F(4, 5), 0))
    norm = normalize_equatorial(body)
    assert norm is not None
    assert norm.L == (1, 0, 0)


def test_normalize_equatorial_axis_swap():
    body = BodyParameters(1, 1, F(1, 2), (0, 1, 0))
    norm = normalize_equatorial(body)
    assert norm is not None and norm.L[1] == 0


def test_normalize_equatorial_irrational_rejected():
    body = BodyParameters(1, 1, F(1, 2), (F(1, 2), F(1, 2), F(1, 2)))
    assert normalize_equatorial(body) is None
