"""Pre-Schwarzian and Schwarzian derivatives, and sampled class membership."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import MapEntry
from .classes import ClassSpec
from .errors import CriticalPointError, PreconditionError
from .jets import DiskPoint, Jet3

CRITICAL_EPS = 1e-14


def _check_f1(j: Jet3, where=None):
    f1 = np.asarray(j.f1)
    bad = ~(np.abs(f1) > CRITICAL_EPS)
    if np.any(bad):
        loc = None
        if where is not None:
            loc = complex(np.asarray(where)[bad].ravel()[0]) if np.ndim(where) else complex(where)
        raise CriticalPointError(loc)


def pre_schwarzian(j: Jet3, where=None):
    """T_f = f''/f'."""
    _check_f1(j, where)
    return j.f2 / j.f1


def schwarzian(j: Jet3, where=None):
    """S_f = f'''/f' - (3/2)(f''/f')^2, the same as T' - T^2/2."""
    _check_f1(j, where)
    t = j.f2 / j.f1
    return j.f3 / j.f1 - 1.5 * t * t


def pre_schwarzian_derivative(j: Jet3, where=None):
    """T_f' = f'''/f' - (f''/f')^2."""
    _check_f1(j, where)
    t = j.f2 / j.f1
    return j.f3 / j.f1 - t * t


def _as_points(z):
    if isinstance(z, DiskPoint):
        return z.z
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) >= 1):
        raise PreconditionError("evaluation points must lie inside the unit disk")
    return complex(zz) if zz.ndim == 0 else zz


def cauchy_derivative(fn, z, radius, nodes: int = 64):
    """Derivative of analytic ``fn`` at ``z`` by the trapezoidal Cauchy integral.

    The rule is spectrally accurate for functions analytic on a disk somewhat
    larger than ``radius`` around each point.
    """
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    rad = np.broadcast_to(np.asarray(radius, dtype=float), zz.shape)
    omega = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    pts = zz[..., None] + rad[..., None] * omega
    vals = fn(pts)
    out = np.mean(vals / omega, axis=-1) / rad
    return out.reshape(np.shape(z)) if np.ndim(z) else complex(out[0])


def riccati_residual(f: MapEntry, z, nodes: int = 64):
    """|T_f' - T_f^2/2 - S_f| with T_f' taken from a Cauchy integral of T_f.

    S_f comes from the jet at ``z``; T_f' is computed independently from
    values of T_f on a small circle around ``z``, so the check exercises the
    identity rather than restating it.
    """
    zz = _as_points(z)
    j = f.jet(zz, value=False)
    t = pre_schwarzian(j, zz)
    s = schwarzian(j, zz)
    reach = min(f.max_radius, 1.0)
    radius = np.minimum(0.25, 0.5 * (reach - np.abs(zz)))

    def t_on(pts):
        return pre_schwarzian(f.jet(pts, value=False), pts)

    dt = cauchy_derivative(t_on, zz, radius, nodes)
    res = np.abs(dt - 0.5 * t * t - s)
    return float(res) if np.ndim(res) == 0 else res


@dataclass(frozen=True)
class PolarGrid:
    """Polar sample grid; radii cluster toward ``r_max`` (Chebyshev-Lobatto half)."""

    n_angles: int = 64
    n_radii: int = 48
    r_max: float = 0.98

    def __post_init__(self):
        if not 0 < self.r_max < 1:
            raise PreconditionError(f"r_max = {self.r_max} must lie in (0, 1)")
        if self.n_angles < 1 or self.n_radii < 2:
            raise PreconditionError("grid needs at least 1 angle and 2 radii")

    def radii(self) -> np.ndarray:
        j = np.arange(self.n_radii)
        return self.r_max * np.sin(0.5 * np.pi * j / (self.n_radii - 1))

    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_angles) / self.n_angles

    def points(self) -> np.ndarray:
        """Origin first, then ring by ring outward."""
        r = self.radii()[1:]
        zeta = np.exp(1j * self.angles())
        return np.concatenate([[0j], (r[:, None] * zeta[None, :]).ravel()])

    def clipped(self, r_max: float) -> "PolarGrid":
        if r_max >= self.r_max:
            return self
        return PolarGrid(self.n_angles, self.n_radii, r_max)


def argmax_innermost(values: np.ndarray, points: np.ndarray, rel: float = 1e-12) -> int:
    """Index of the max; among near-ties (within ``rel``) the point closest to 0 wins."""
    vmax = np.max(values)
    ties = np.flatnonzero(values >= vmax - rel * max(abs(vmax), 1.0))
    return int(ties[np.argmin(np.abs(points[ties]))])


@dataclass(frozen=True)
class MembershipReport:
    map_name: str
    spec: ClassSpec
    sup_value: float
    witness: complex
    normalization_ok: tuple[bool, bool, bool]
    member: bool
    tol: float
    n_points: int
    r_max: float

    def to_dict(self) -> dict:
        return {
            "map": self.map_name,
            "class": self.spec.label,
            "sup_value": self.sup_value,
            "witness": [self.witness.real, self.witness.imag],
            "normalization_ok": list(self.normalization_ok),
            "member": self.member,
            "tol": self.tol,
            "n_points": self.n_points,
            "r_max": self.r_max,
        }


def weighted_schwarzian(f: MapEntry, spec: ClassSpec, pts):
    j = f.jet(pts, value=False)
    return (1 - np.abs(pts) ** 2) ** spec.alpha * np.abs(schwarzian(j, pts))


def normalization_check(f: MapEntry, spec: ClassSpec, tol: float) -> tuple[bool, bool, bool]:
    j0 = f.jet(0j)
    return (
        bool(abs(j0.f0) <= tol),
        bool(abs(j0.f1 - 1) <= tol),
        bool(abs(j0.f2 - spec.f2_at_zero) <= tol),
    )


def class_membership(f: MapEntry, spec: ClassSpec, grid: PolarGrid | None = None,
                     tol: float = 1e-8) -> MembershipReport:
    """Sampled verdict on (1-|z|^2)^alpha |S_f| <= k plus the normalization at 0."""
    grid = grid or PolarGrid()
    if grid.r_max > 0.999:
        raise PreconditionError("grid radii must not exceed 0.999")
    grid = grid.clipped(f.max_radius)
    pts = grid.points()
    vals = weighted_schwarzian(f, spec, pts)
    i = argmax_innermost(vals, pts)
    sup = float(vals[i])
    norm = normalization_check(f, spec, tol)
    member = sup <= spec.k + tol and all(norm)
    return MembershipReport(f.name, spec, sup, complex(pts[i]), norm, member, tol,
                            len(pts), grid.r_max)


def is_declared_member(f: MapEntry, spec: ClassSpec) -> bool:
    return any(spec.contains(c) for c in f.declared_classes)


def require_member(f: MapEntry, spec: ClassSpec, tol: float = 1e-8):
    """Raise unless ``f`` is declared in (or verified to lie in) ``spec``."""
    if is_declared_member(f, spec):
        return
    rep = class_membership(f, spec, tol=tol)
    if not rep.member:
        raise PreconditionError(
            f"{f.name} is not a member of {spec.label}: sup = {rep.sup_value:.12g} "
            f"at z = {rep.witness:.6g}, normalization {rep.normalization_ok}"
        )
