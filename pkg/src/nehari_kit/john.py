"""Analytic John-domain diagnostics.

The derivative-ratio criterion compares (1-r^2)|f'| at r*zeta and at the
hyperbolically shifted point rho*zeta, rho = (x+r)/(1+x r). The criterion is
stated for bounded images; for unbounded maps a ratio exceeding 1 is the
signature of the image reaching infinity and is reported as inconclusive
instead of as a failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import MapEntry
from .errors import CriticalPointError, PreconditionError
from .jets import DiskPoint
from .parallel import pmap
from .schwarzian import CRITICAL_EPS, PolarGrid, pre_schwarzian

JOHN_EVIDENCE = "john-evidence"
FAILS = "fails"
INCONCLUSIVE = "inconclusive-unbounded"
TRUNCATED = "inconclusive-truncated"

RATIO_MARGIN = 1e-6
#: outermost radius of the default schedule 1 - 2^-j, j = 3..10
LIMSUP_R_MAX = 1 - 2.0 ** -10
DEFAULT_XS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)


def hyperbolic_distance(z1, z2) -> float:
    """Disk distance with density 1/(1-|z|^2): atanh of the pseudo-hyperbolic distance."""
    a = z1.z if isinstance(z1, DiskPoint) else complex(z1)
    b = z2.z if isinstance(z2, DiskPoint) else complex(z2)
    if abs(a) >= 1 or abs(b) >= 1:
        raise PreconditionError("hyperbolic distance needs points inside the disk")
    return math.atanh(abs(a - b) / abs(1 - a.conjugate() * b))


def shifted_radius(x, r):
    return (x + r) / (1 + x * r)


def default_ratio_radii(n: int = 160, r_max: float = 0.995) -> np.ndarray:
    return r_max * np.sin(0.5 * np.pi * np.arange(n) / (n - 1))


@dataclass(frozen=True)
class RatioReport:
    map_name: str
    x: float
    sup_ratio: float
    witness_zeta: complex
    witness_r: float
    verdict: str
    n_samples: int
    rho_max: float = 1.0

    @property
    def witness_rho(self) -> float:
        return shifted_radius(self.x, self.witness_r)

    def to_dict(self) -> dict:
        return {
            "map": self.map_name,
            "x": self.x,
            "sup_ratio": self.sup_ratio,
            "witness_zeta": [self.witness_zeta.real, self.witness_zeta.imag],
            "witness_r": self.witness_r,
            "witness_rho": self.witness_rho,
            "verdict": self.verdict,
            "n_samples": self.n_samples,
            "rho_max": self.rho_max,
        }


def _abs_fprime(f: MapEntry, pts):
    d = np.abs(f.jet(pts, value=False).f1)
    if np.any(d <= CRITICAL_EPS):
        raise CriticalPointError(complex(np.asarray(pts)[d <= CRITICAL_EPS].ravel()[0]))
    return d


def _verdict(sup: float, bounded: bool) -> str:
    if not bounded and sup > 1 + RATIO_MARGIN:
        return INCONCLUSIVE
    return JOHN_EVIDENCE if sup < 1 - RATIO_MARGIN else FAILS


def ratio_test(f: MapEntry, x: float, angles: int = 128, radii=None) -> RatioReport:
    """Sampled sup over (zeta, r) of (1-rho^2)|f'(rho zeta)| / ((1-r^2)|f'(r zeta)|)."""
    if not 0 < x < 1:
        raise PreconditionError(f"x = {x} must lie in (0, 1)")
    r = default_ratio_radii() if radii is None else np.asarray(radii, dtype=float)
    if np.any(r < 0) or np.any(r > 0.995):
        raise PreconditionError("ratio-test radii must lie in [0, 0.995]")
    rho = shifted_radius(x, r)
    keep = rho <= f.max_radius
    r, rho = r[keep], rho[keep]
    if r.size == 0:
        raise PreconditionError(f"{f.name}: no radius keeps rho inside {f.max_radius}")
    zeta = np.exp(2j * np.pi * np.arange(angles) / angles)
    inner = r[:, None] * zeta[None, :]
    outer = rho[:, None] * zeta[None, :]
    num = (1 - rho ** 2)[:, None] * _abs_fprime(f, outer)
    den = (1 - r ** 2)[:, None] * _abs_fprime(f, inner)
    ratio = num / den
    i, j = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
    sup = float(ratio[i, j])
    return RatioReport(f.name, float(x), sup, complex(zeta[j]), float(r[i]),
                       _verdict(sup, f.bounded), int(ratio.size), float(rho[-1]))


@dataclass(frozen=True)
class RatioSweep:
    map_name: str
    reports: tuple[RatioReport, ...]
    bounded: bool
    skipped_xs: tuple[float, ...] = ()

    @property
    def best(self) -> RatioReport:
        return min(self.reports, key=lambda r: r.sup_ratio)

    @property
    def verdict(self) -> str:
        verdicts = [r.verdict for r in self.reports]
        if JOHN_EVIDENCE in verdicts:
            return JOHN_EVIDENCE
        if self.skipped_xs and INCONCLUSIVE not in verdicts:
            # a failure at small x proves nothing when large x could not be scanned
            return TRUNCATED
        if all(v == FAILS for v in verdicts):
            return FAILS
        return INCONCLUSIVE

    def to_dict(self) -> dict:
        return {
            "map": self.map_name,
            "bounded": self.bounded,
            "verdict": self.verdict,
            "best_x": self.best.x,
            "best_sup_ratio": self.best.sup_ratio,
            "skipped_xs": list(self.skipped_xs),
            "reports": [r.to_dict() for r in self.reports],
        }


def ratio_sweep(f: MapEntry, xs=DEFAULT_XS, angles: int = 128, radii=None) -> RatioSweep:
    """ratio_test over several x; John evidence if any x gives a sup below 1.

    Values of x whose shifted radius already leaves the map's supported disk
    are skipped.
    """
    fits = [x for x in xs if shifted_radius(x, 0.0) <= f.max_radius]
    if not fits:
        raise PreconditionError(f"{f.name}: no x fits inside radius {f.max_radius}")
    reports = pmap(lambda x: ratio_test(f, x, angles, radii), fits)
    skipped = tuple(float(x) for x in xs if x not in fits)
    return RatioSweep(f.name, tuple(reports), f.bounded, skipped)


@dataclass(frozen=True)
class LimsupEstimate:
    map_name: str
    radii: np.ndarray
    values: np.ndarray
    witness_angles: np.ndarray
    limit: float
    uncertainty: float

    def to_dict(self) -> dict:
        return {
            "map": self.map_name,
            "radii": self.radii.tolist(),
            "values": self.values.tolist(),
            "witness_angles": self.witness_angles.tolist(),
            "limit": self.limit,
            "uncertainty": self.uncertainty,
        }


def default_limsup_radii() -> np.ndarray:
    return 1 - 2.0 ** -np.arange(3, 11)


def limsup_estimate(f: MapEntry, radii=None, angles: int = 256) -> LimsupEstimate:
    """Angular max of (1-r^2) Re(z T_f(z)) on circles, extrapolated linearly in 1-r."""
    r = default_limsup_radii() if radii is None else np.asarray(radii, dtype=float)
    if r.size < 2 or np.any(np.diff(r) <= 0) or r[0] <= 0:
        raise PreconditionError("limsup radii must be positive and strictly increasing")
    if r[-1] > LIMSUP_R_MAX:
        raise PreconditionError(f"limsup radii must not exceed {LIMSUP_R_MAX}")
    if r[-1] > f.max_radius:
        raise PreconditionError(f"{f.name} is only supported up to |z| = {f.max_radius}")
    theta = 2 * np.pi * np.arange(angles) / angles
    pts = r[:, None] * np.exp(1j * theta)[None, :]
    t = pre_schwarzian(f.jet(pts, value=False), pts)
    q = (1 - r ** 2)[:, None] * np.real(pts * t)
    idx = np.argmax(q, axis=1)
    vals = q[np.arange(r.size), idx]
    h1, h2 = 1 - r[-2], 1 - r[-1]
    limit = vals[-1] + (vals[-1] - vals[-2]) * h2 / (h1 - h2)
    return LimsupEstimate(f.name, r, vals, theta[idx], float(limit),
                          float(abs(vals[-1] - limit)))


@dataclass(frozen=True)
class StarConvexReport:
    map_name: str
    starlike: bool
    convex: bool
    min_re_starlike: float
    min_re_convex: float
    witness_starlike: complex
    witness_convex: complex

    def to_dict(self) -> dict:
        return {
            "map": self.map_name,
            "starlike": self.starlike,
            "convex": self.convex,
            "min_re_values": {"starlike": self.min_re_starlike, "convex": self.min_re_convex},
            "witness_starlike": [self.witness_starlike.real, self.witness_starlike.imag],
            "witness_convex": [self.witness_convex.real, self.witness_convex.imag],
        }


def starlike_convex_test(f: MapEntry, grid: PolarGrid | None = None,
                         threshold: float = -1e-9) -> StarConvexReport:
    """Sampled minima of Re(z f'/f) and Re(1 + z f''/f')."""
    grid = (grid or PolarGrid()).clipped(f.max_radius)
    pts = grid.points()
    j = f.jet(pts)
    nonzero = pts != 0
    if np.any(np.abs(j.f0[nonzero]) == 0):
        raise PreconditionError(f"{f.name} vanishes away from the origin")
    star = np.ones(pts.shape)
    star[nonzero] = np.real(pts[nonzero] * j.f1[nonzero] / j.f0[nonzero])
    conv = np.real(1 + pts * pre_schwarzian(j, pts))
    i, k = int(np.argmin(star)), int(np.argmin(conv))
    return StarConvexReport(f.name, bool(star[i] > threshold), bool(conv[k] > threshold),
                            float(star[i]), float(conv[k]), complex(pts[i]), complex(pts[k]))
