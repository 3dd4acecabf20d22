"""Floating point oracle: adaptive integration, elliptic functions,
numerical monodromy along complex loops, and residual reporting.

Everything symbolic elsewhere in the package is cross-validated here in
floating point. The integrator is a single embedded Dormand-Prince 5(4)
core working on complex state vectors; complex-time paths are pulled
back to a real parameter, so one stepper serves both real dynamics and
monodromy continuation.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

DEFAULT_ABS_TOL = 1e-12
DEFAULT_REL_TOL = 1e-10


class IntegrationError(RuntimeError):
    """Step size collapsed, usually near a pole of the vector field."""


# Dormand-Prince 5(4) tableau: 5th order propagation, 4th order error probe.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640,
                   -92097 / 339200, 187 / 2100, 1 / 40])


@dataclass
class Trajectory:
    """Accepted steps of one integration run."""

    times: np.ndarray
    states: np.ndarray
    tolerances: tuple
    complete: bool = True
    diagnostic: str = ""

    def final_state(self):
        return self.states[-1]

    def to_csv(self, header: Optional[Sequence[str]] = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        dim = self.states.shape[1]
        w.writerow(header or (["t"] + [f"y{i}" for i in range(dim)]))
        for t, row in zip(self.times, self.states):
            w.writerow([repr(float(t))] + [repr(v.real) if abs(v.imag) == 0.0
                                           else repr(complex(v)) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        def enc(v):
            v = complex(v)
            return v.real if v.imag == 0.0 else [v.real, v.imag]
        obj = {
            "times": [float(t) for t in self.times],
            "states": [[enc(v) for v in row] for row in self.states],
            "tolerances": {"abs": self.tolerances[0], "rel": self.tolerances[1]},
            "complete": self.complete,
        }
        if self.diagnostic:
            obj["diagnostic"] = self.diagnostic
        return json.dumps(obj, sort_keys=True)


def integrate(rhs: Callable, y0, t_span, abs_tol=DEFAULT_ABS_TOL,
              rel_tol=DEFAULT_REL_TOL, max_step=math.inf,
              fixed_step: Optional[float] = None) -> Trajectory:
    """Adaptive embedded Runge-Kutta integration of y' = rhs(t, y).

    State vectors may be real or complex; step control acts on the
    complex magnitude of the embedded error. fixed_step disables
    adaptivity (used by the order-verification tests). A collapsing step
    raises nothing: the partial trajectory is returned with a diagnostic.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    y = np.asarray(y0, dtype=complex)
    direction = 1.0 if t1 >= t0 else -1.0
    span = abs(t1 - t0)
    if span == 0:
        return Trajectory(np.array([t0]), np.array([y]), (abs_tol, rel_tol))

    times = [t0]
    states = [y.copy()]
    t = t0
    if fixed_step is not None:
        h = abs(fixed_step)
    else:
        h = min(span / 100.0, max_step)
    min_step = span * 1e-14

    k = np.empty((7, y.size), dtype=complex)
    while (t1 - t) * direction > 0:
        h = min(h, abs(t1 - t), max_step)
        k[0] = rhs(t, y)
        for i in range(1, 7):
            acc = y + direction * h * sum(a * k[j] for j, a in enumerate(_DP_A[i]))
            k[i] = rhs(t + direction * h * _DP_C[i], acc)
        y5 = y + direction * h * (_DP_B5 @ k)
        if fixed_step is not None:
            t = t + direction * h
            y = y5
            times.append(t)
            states.append(y.copy())
            continue
        y4 = y + direction * h * (_DP_B4 @ k)
        scale = abs_tol + rel_tol * np.maximum(np.abs(y), np.abs(y5))
        err = math.sqrt(float(np.mean((np.abs(y5 - y4) / scale) ** 2)))
        if err <= 1.0:
            t = t + direction * h
            y = y5
            times.append(t)
            states.append(y.copy())
        factor = 0.9 * (err ** -0.2) if err > 0 else 5.0
        h *= min(5.0, max(0.2, factor))
        if h < min_step:
            return Trajectory(np.array(times), np.array(states),
                              (abs_tol, rel_tol), complete=False,
                              diagnostic=f"step collapse at t = {t} (h = {h:.3e})")
    return Trajectory(np.array(times), np.array(states), (abs_tol, rel_tol))


# ---------------------------------------------------------------------------
# Elliptic integrals and Jacobi functions (AGM based)
# ---------------------------------------------------------------------------

def elliptic_K(k: float) -> float:
    """Complete elliptic integral of the first kind, modulus convention
    K(k) = int_0^{pi/2} (1 - k^2 sin^2 t)^(-1/2) dt, by the arithmetic
    geometric mean."""
    if not 0 <= k < 1:
        raise ValueError("modulus must satisfy 0 <= k < 1 (k = 1 diverges)")
    a, b = 1.0, math.sqrt(1.0 - k * k)
    while abs(a - b) > 1e-17 * a:
        a, b = (a + b) / 2, math.sqrt(a * b)
    return math.pi / (2 * a)


def elliptic_K_complement(k: float) -> float:
    if not 0 < k <= 1:
        raise ValueError("complementary integral needs 0 < k <= 1")
    return elliptic_K(math.sqrt(1.0 - k * k))


@dataclass(frozen=True)
class JacobiValues:
    sn: complex
    cn: complex
    dn: complex
    near_pole: bool = False


def _jacobi_real(x: float, k: float):
    """sn, cn, dn for real argument by the descending Landen (AGM)
    recursion; relative accuracy near 1e-14."""
    if k == 0.0:
        return math.sin(x), math.cos(x), 1.0
    if k == 1.0:
        # degenerate hyperbolic limit
        return math.tanh(x), 1 / math.cosh(x), 1 / math.cosh(x)
    a = [1.0]
    b = [math.sqrt(1.0 - k * k)]
    c = [k]
    while abs(c[-1]) > 1e-16 and len(a) < 60:
        an, bn = a[-1], b[-1]
        a.append((an + bn) / 2)
        b.append(math.sqrt(an * bn))
        c.append((an - bn) / 2)
    n = len(a) - 1
    phi = (2 ** n) * a[n] * x
    for i in range(n, 0, -1):
        phi = (phi + math.asin(max(-1.0, min(1.0, c[i] / a[i] * math.sin(phi))))) / 2
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt(max(0.0, 1.0 - (k * sn) ** 2))
    # dn sign never flips for real argument (dn >= k' > 0)
    return sn, cn, dn


def jacobi_sn_cn_dn(t, k: float, pole_tol: float = 1e-6) -> JacobiValues:
    """Jacobi elliptic functions for complex argument and real modulus.

    Real-argument values come from the AGM recursion; complex arguments
    go through the imaginary transformation sn(iy, k) = i sn(y,k')/cn(y,k')
    combined with the addition formulas. Arguments within pole_tol of a
    pole of the lattice are flagged rather than evaluated to garbage.
    """
    if not 0 <= k <= 1:
        raise ValueError("modulus must lie in [0, 1]")
    t = complex(t)
    x, y = t.real, t.imag
    if y == 0.0:
        sn, cn, dn = _jacobi_real(x, k)
        return JacobiValues(sn, cn, dn)
    kp = math.sqrt(max(0.0, 1.0 - k * k))
    near = distance_to_pole(t, k) < pole_tol if 0 < k < 1 else False
    s1, c1, d1 = _jacobi_real(x, k)
    s2, c2, d2 = _jacobi_real(y, kp)
    # sn(iy,k) = i s2/c2, cn(iy,k) = 1/c2, dn(iy,k) = d2/c2
    denom = 1.0 - (k * s1) ** 2 * (s2 / c2) ** 2 + 0j
    if abs(denom) < 1e-12 or abs(c2) < 1e-12:
        return JacobiValues(cmath.nan, cmath.nan, cmath.nan, near_pole=True)
    sn_iy = 1j * s2 / c2
    cn_iy = 1.0 / c2
    dn_iy = d2 / c2
    sn = (s1 * cn_iy * dn_iy + sn_iy * c1 * d1) / denom
    cn = (c1 * cn_iy - s1 * d1 * sn_iy * dn_iy) / denom
    dn = (d1 * dn_iy - k * k * s1 * c1 * sn_iy * cn_iy) / denom
    return JacobiValues(sn, cn, dn, near_pole=near)


def distance_to_pole(t, k: float) -> float:
    """Distance from t to the nearest pole of sn/cn/dn, i.e. to the lattice
    i K' + 2mK + 2inK'."""
    K = elliptic_K(k)
    Kp = elliptic_K_complement(k)
    t = complex(t)
    x = (t.real) % (2 * K)
    y = (t.imag - Kp) % (2 * Kp)
    dx = min(x, 2 * K - x)
    dy = min(y, 2 * Kp - y)
    return math.hypot(dx, dy)


# ---------------------------------------------------------------------------
# Numerical monodromy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Loop:
    """Positively oriented circle in the z plane (orientation -1 reverses)."""

    center: complex
    radius: float
    orientation: int = 1

    def point(self, tau: float) -> complex:
        return self.center + self.radius * cmath.exp(2j * math.pi * self.orientation * tau)

    def velocity(self, tau: float) -> complex:
        return (2j * math.pi * self.orientation * self.radius
                * cmath.exp(2j * math.pi * self.orientation * tau))

    def descriptor(self) -> dict:
        return {"center": [self.center.real, self.center.imag],
                "radius": self.radius, "orientation": self.orientation}


@dataclass
class MonodromyMatrix:
    """Connection matrix of a fundamental pair continued around a loop,
    expressed in the starting basis (w(0), w'(0)) = identity."""

    entries: np.ndarray
    loop: Loop
    det_defect: float = field(default=0.0)

    def eigenvalues(self):
        return np.linalg.eigvals(self.entries)

    def to_json(self) -> str:
        e = self.entries
        obj = {
            "loop": self.loop.descriptor(),
            "matrix": [[[e[i, j].real, e[i, j].imag] for j in range(2)] for i in range(2)],
            "det": [complex(np.linalg.det(e)).real, complex(np.linalg.det(e)).imag],
        }
        return json.dumps(obj, sort_keys=True)


def numerical_monodromy(coefficients, loop: Loop, abs_tol=DEFAULT_ABS_TOL,
                        rel_tol=DEFAULT_REL_TOL,
                        singular_points: Sequence[complex] = ()) -> MonodromyMatrix:
    """Monodromy of a second order equation along a circular loop.

    coefficients is either a single callable r(z), meaning w'' = r w, or a
    pair (p, q) of callables, meaning w'' + p w' + q w = 0. The loop is
    parametrized by arclength fraction and the pulled-back system
    integrated with the adaptive stepper. Loops closer than 1e-3 to a
    listed singular point are rejected.
    """
    for zs in singular_points:
        if abs(abs(complex(zs) - loop.center) - loop.radius) < 1e-3:
            raise ValueError(f"loop passes within 1e-3 of singular point {zs}")

    if callable(coefficients):
        r = coefficients

        def system(z, w):
            return np.array([w[1], r(z) * w[0]], dtype=complex)
    else:
        p, q = coefficients

        def system(z, w):
            return np.array([w[1], -p(z) * w[1] - q(z) * w[0]], dtype=complex)

    def pulled_back(tau, y):
        z = loop.point(tau)
        dz = loop.velocity(tau)
        w1 = system(z, y[0:2])
        w2 = system(z, y[2:4])
        return np.concatenate([dz * w1, dz * w2])

    y0 = np.array([1, 0, 0, 1], dtype=complex)
    traj = integrate(pulled_back, y0, (0.0, 1.0), abs_tol=abs_tol, rel_tol=rel_tol)
    if not traj.complete:
        raise IntegrationError("monodromy continuation failed: " + traj.diagnostic)
    yf = traj.final_state()
    mat = np.array([[yf[0], yf[2]], [yf[1], yf[3]]], dtype=complex)
    det = complex(np.linalg.det(mat))
    return MonodromyMatrix(mat, loop, det_defect=abs(det - 1.0))


# ---------------------------------------------------------------------------
# Residual reporting
# ---------------------------------------------------------------------------

@dataclass
class ResidualReport:
    label: str
    max_residual: float
    samples: int

    def ok(self, tol: float) -> bool:
        return self.max_residual < tol


def residual_check(label: str, defect: Callable[[object], float],
                   samples: Sequence) -> ResidualReport:
    """Evaluate a pointwise defect over samples and report the maximum."""
    worst = 0.0
    n = 0
    for s in samples:
        v = abs(defect(s))
        if math.isnan(v):
            continue
        worst = max(worst, v)
        n += 1
    return ResidualReport(label, worst, n)
