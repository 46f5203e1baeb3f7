"""Numerical side of the comparison argument.

Integrates the Riccati problems w' = w^2/2 + q(x), evaluates Gronwall
envelopes, and certifies psi(tau) <= w(tau) along rays with w taken from the
integrator rather than from the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .bounds import DOMINANCE_TOL, RadialScan, psi_on_ray
from .catalog import MapEntry
from .classes import ClassSpec
from .errors import BlowUpError, PreconditionError
from .schwarzian import require_member

#: local tolerances; tighter than the 1e-10 global target because RK4(5)
#: global error runs one to two orders above the per-step tolerance
RTOL = 1e-13
ATOL = 1e-15
BLOWUP = 1e12


@dataclass(frozen=True)
class RiccatiIVP:
    alpha: int
    k: float
    variant: str = "N"
    x_max: float = 0.9

    def __post_init__(self):
        spec = ClassSpec(self.alpha, self.k, self.variant)
        object.__setattr__(self, "k", spec.k)
        if not 0 < self.x_max <= 0.99:
            raise PreconditionError(f"x_max = {self.x_max} must lie in (0, 0.99]")

    @property
    def spec(self) -> ClassSpec:
        return ClassSpec(self.alpha, self.k, self.variant)

    @property
    def w0(self) -> float:
        return self.spec.f2_at_zero

    def forcing(self, x):
        k = self.k
        if self.alpha == 0:
            return k + 0 * x
        if self.alpha == 1:
            return k / (1 - x * x)
        return k / (1 - x * x) ** 2

    def rhs(self, x, w):
        return 0.5 * w * w + self.forcing(x)


@dataclass
class RiccatiSolution:
    ivp: RiccatiIVP | None
    x: np.ndarray
    w: np.ndarray
    steps: np.ndarray = field(repr=False)
    dense: CubicHermiteSpline = field(repr=False)

    def __call__(self, x):
        out = self.dense(np.asarray(x, dtype=float))
        return float(out) if np.ndim(out) == 0 else out


def integrate_riccati(forcing, w0: float, x_max: float, grid=None,
                      rtol: float = RTOL, atol: float = ATOL,
                      blowup: float = BLOWUP, ivp: RiccatiIVP | None = None) -> RiccatiSolution:
    """Adaptive RK4(5) for w' = w^2/2 + forcing(x), w(0) = w0, on [0, x_max].

    Samples land exactly on ``grid`` (default 201 uniform points); the dense
    interpolant is a cubic Hermite spline through the accepted steps.
    """
    xs = np.linspace(0.0, x_max, 201) if grid is None else np.asarray(grid, dtype=float)
    if np.any(np.diff(xs) <= 0) or xs[0] < 0 or xs[-1] > x_max + 1e-15:
        raise PreconditionError("grid must be increasing inside [0, x_max]")

    def rhs(x, y):
        return 0.5 * y * y + forcing(x)

    def escape(x, y):
        return blowup - abs(y[0])
    escape.terminal = True

    sol = solve_ivp(rhs, (0.0, x_max), [w0], method="RK45", t_eval=xs,
                    rtol=rtol, atol=atol, events=escape, dense_output=True)
    if sol.status == 1 or not np.all(np.isfinite(sol.y)):
        where = float(sol.t_events[0][0]) if sol.t_events and len(sol.t_events[0]) else float(sol.t[-1])
        raise BlowUpError(where, blowup)
    if sol.status != 0:
        raise ArithmeticError(f"integration failed: {sol.message}")
    ts = sol.sol.ts
    ys = sol.sol(ts)[0]
    dense = CubicHermiteSpline(ts, ys, rhs(ts, ys))
    return RiccatiSolution(ivp, sol.t, sol.y[0], ts, dense)


def integrate(ivp: RiccatiIVP, grid=None, **kw) -> RiccatiSolution:
    return integrate_riccati(ivp.forcing, ivp.w0, ivp.x_max, grid, ivp=ivp, **kw)


def closed_form(ivp: RiccatiIVP):
    """The class's closed-form bound, for cross-checking ``integrate``."""
    from .bounds import bound_for
    return bound_for(ivp.spec)


def gronwall_bound(u0: float, beta, s) -> float:
    """u0 * exp(trapezoid integral of the sampled ``beta`` over ``s``)."""
    beta = np.asarray(beta, dtype=float)
    s = np.asarray(s, dtype=float)
    if beta.shape != s.shape or np.any(np.diff(s) <= 0):
        raise ValueError("beta samples need an increasing grid of the same length")
    return float(u0 * math.exp(np.trapezoid(beta, s)))


def gronwall_envelope(u0: float, beta, s) -> np.ndarray:
    """Running Gronwall bound u0 exp(int_s0^s beta) at every sample."""
    beta = np.asarray(beta, dtype=float)
    s = np.asarray(s, dtype=float)
    inc = 0.5 * (beta[1:] + beta[:-1]) * np.diff(s)
    return u0 * np.exp(np.concatenate([[0.0], np.cumsum(inc)]))


def dominance_certificate(f: MapEntry, ivp: RiccatiIVP, ray: float = 0.0,
                          n: int = 50) -> RadialScan:
    """psi(tau) = |T_f(tau e^{i ray})| against the integrated w on [0, x_max].

    The scan also carries the Gronwall envelope of u = psi - w with rate
    (psi + w)/2, which is u(0) = 0 times a finite exponential.
    """
    require_member(f, ivp.spec)
    x_max = min(ivp.x_max, f.max_radius)
    tau = np.linspace(0.0, x_max, n)
    w = integrate(ivp, tau).w
    psi = psi_on_ray(f, ray, tau)
    env = gronwall_envelope(psi[0] - w[0], 0.5 * (psi + w), tau)
    return RadialScan(float(ray), tau, psi, w, DOMINANCE_TOL, env)
