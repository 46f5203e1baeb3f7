"""Sharp radial bounds r -> w(r) on |T_f| for each class, and ray dominance scans."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .catalog import MapEntry, a_k_core, beta_of
from .classes import ClassSpec
from .hypergeom import w_ratio_n1
from .jets import Jet3, atanh
from .schwarzian import pre_schwarzian, require_member

DOMINANCE_TOL = 1e-9


@dataclass(frozen=True)
class BoundProfile:
    spec: ClassSpec
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    description: str = ""

    def __call__(self, r):
        rr = np.asarray(r, dtype=float)
        if np.any(rr < 0) or np.any(rr >= 1):
            raise ValueError("bound profiles are defined on [0, 1)")
        out = self.fn(rr)
        return float(out) if np.ndim(out) == 0 else out

    eval = __call__

    @property
    def w0(self) -> float:
        return self.spec.f2_at_zero


def _n2(k: float):
    beta = beta_of(k)

    def w(r):
        a = a_k_core(atanh(Jet3.variable(r.astype(complex))), beta).f0.real
        return (2 * r - 2 * beta * beta * a) / (1 - r * r)
    return w


def bound_for(spec: ClassSpec) -> BoundProfile:
    """Closed-form sharp bound for the class."""
    k = spec.k
    if spec.variant == "M":
        c = math.sqrt(4 - 2 * k)
        return BoundProfile(spec, lambda r: (2 * r + c) / (1 - r * r),
                            f"(2r + sqrt(4-2k))/(1-r^2), k={k:.15g}")
    if spec.alpha == 2:
        return BoundProfile(spec, _n2(k), f"(2r - 2 beta^2 A_k(r))/(1-r^2), k={k:.15g}")
    if spec.alpha == 0:
        c = math.sqrt(k / 2)
        return BoundProfile(spec, lambda r: 2 * c * np.tan(c * r),
                            f"sqrt(2k) tan(sqrt(k/2) r), k={k:.15g}")
    return BoundProfile(spec, lambda r: np.real(w_ratio_n1(k, r)),
                        f"hypergeometric ratio k r F(.;3/2;r^2)/F(.;1/2;r^2), k={k:.15g}")


@dataclass
class RadialScan:
    """Samples of psi(tau) = |T_f(tau e^{i angle})| against a bound w(tau)."""

    angle: float
    tau: np.ndarray
    psi: np.ndarray
    bound: np.ndarray
    tol: float = DOMINANCE_TOL
    envelope: np.ndarray | None = None

    def __post_init__(self):
        if np.any(np.diff(self.tau) <= 0):
            raise ValueError("abscissae must be strictly increasing")

    @property
    def margins(self) -> np.ndarray:
        return self.bound - self.psi

    @property
    def min_margin(self) -> float:
        return float(np.min(self.margins))

    @property
    def argmin_tau(self) -> float:
        return float(self.tau[int(np.argmin(self.margins))])

    @property
    def dominated(self) -> bool:
        return self.min_margin >= -self.tol

    verdict = dominated

    def to_dict(self) -> dict:
        d = {
            "angle": self.angle,
            "tau": self.tau.tolist(),
            "psi": self.psi.tolist(),
            "bound": self.bound.tolist(),
            "min_margin": self.min_margin,
            "argmin_tau": self.argmin_tau,
            "dominated": self.dominated,
        }
        if self.envelope is not None:
            d["gronwall_envelope"] = self.envelope.tolist()
        return d


@dataclass
class DominanceReport:
    map_name: str
    spec: ClassSpec
    scans: list[RadialScan]

    @property
    def min_margin(self) -> float:
        return min(s.min_margin for s in self.scans)

    @property
    def location(self) -> complex:
        s = min(self.scans, key=lambda s: s.min_margin)
        return s.argmin_tau * complex(math.cos(s.angle), math.sin(s.angle))

    @property
    def dominated(self) -> bool:
        return all(s.dominated for s in self.scans)

    def to_dict(self, samples: bool = False) -> dict:
        loc = self.location
        d = {
            "map": self.map_name,
            "class": self.spec.label,
            "dominated": self.dominated,
            "min_margin": self.min_margin,
            "location": [loc.real, loc.imag],
            "rays": [{"angle": s.angle, "min_margin": s.min_margin,
                      "argmin_tau": s.argmin_tau} for s in self.scans],
        }
        if samples:
            d["scans"] = [s.to_dict() for s in self.scans]
        return d


def psi_on_ray(f: MapEntry, angle: float, tau) -> np.ndarray:
    pts = np.asarray(tau, dtype=float) * complex(math.cos(angle), math.sin(angle))
    return np.abs(pre_schwarzian(f.jet(pts, value=False), pts))


def dominance_scan(f: MapEntry, spec: ClassSpec, rays, radii) -> DominanceReport:
    """Check |T_f(tau zeta)| <= w(tau) along each ray; ``f`` must lie in the class."""
    require_member(f, spec)
    tau = np.asarray(radii, dtype=float)
    w = bound_for(spec)(tau)
    scans = [RadialScan(float(a), tau, psi_on_ray(f, a, tau), w) for a in rays]
    return DominanceReport(f.name, spec, scans)


def default_rays(n: int = 16) -> np.ndarray:
    return 2 * np.pi * np.arange(n) / n
