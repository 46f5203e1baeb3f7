"""Closed-form extremal maps and the named examples, each as a jet evaluator.

Every entry is normalized f(0) = 0, f'(0) = 1 and evaluates on scalars or
numpy arrays of points in the unit disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jets
from .classes import PI2_OVER_2, ClassSpec
from .errors import PreconditionError, SingularIntegrandError, UnknownMapError
from .hypergeom import MAX_RADIUS, u_jet, u_solution
from .jets import Jet3
from .quadrature import segment_integral

#: below this beta the A_k core switches to its small-beta series
BETA_SEAM = 1e-4

JOHN, NOT_JOHN, UNKNOWN = "john", "not-john", "unknown"


@dataclass(frozen=True)
class MapEntry:
    name: str
    evaluator: Callable[..., Jet3] = field(repr=False)
    params: dict = field(default_factory=dict)
    bounded: bool = False
    john_label: str = UNKNOWN
    declared_classes: tuple[ClassSpec, ...] = ()
    notes: str = ""
    #: largest |z| at which the evaluator is supported
    max_radius: float = 1.0

    def jet(self, z, value: bool = True) -> Jet3:
        """Jet at ``z``; ``value=False`` lets costly maps skip f itself (f0 becomes nan)."""
        zz = np.asarray(z, dtype=complex)
        if np.any(np.abs(zz) > self.max_radius + 1e-15):
            raise PreconditionError(
                f"{self.name}: |z| = {np.max(np.abs(zz)):.6g} exceeds supported radius {self.max_radius}"
            )
        if np.ndim(z) == 0:
            zz = complex(z)
        return self.evaluator(zz, value=value)

    def __call__(self, z):
        return self.jet(z).f0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "bounded": self.bounded,
            "john_label": self.john_label,
            "declared_classes": [c.label for c in self.declared_classes],
            "notes": self.notes,
            "max_radius": self.max_radius,
        }


def rotated(entry: MapEntry, theta: float) -> MapEntry:
    """The rotation e^{-i theta} f(e^{i theta} z) as a new entry."""
    c = complex(math.cos(theta), math.sin(theta))

    def ev(z, value=True):
        j = entry.evaluator(c * z, value=value).compose_affine(c)
        return j * c.conjugate()

    return MapEntry(f"{entry.name}@rot{theta:.6g}", ev, dict(entry.params, theta=theta),
                    entry.bounded, entry.john_label, entry.declared_classes,
                    entry.notes, entry.max_radius)


# parameters --------------------------------------------------------------------

def beta_of(k: float) -> float:
    return math.sqrt(max(0.0, 1 - k / 2))


def b_of(k: float) -> float:
    return math.sqrt(max(0.0, 4 - 2 * k)) / 2


# jet evaluators ----------------------------------------------------------------

def _identity(z, value=True):
    return Jet3.variable(z)


def _koebe(z, value=True):
    zj = Jet3.variable(z)
    return zj / (1 - zj) ** 2


def _strip(z, value=True):
    return jets.atanh(Jet3.variable(z))


def _twoslit(z, value=True):
    zj = Jet3.variable(z)
    return zj / (1 - zj * zj)


def _halfplane(z, value=True):
    zj = Jet3.variable(z)
    return zj / (1 - zj)


def _mobius_disk(z, value=True):
    zj = Jet3.variable(z)
    return 2 * zj / (2 - zj)


def a_k_core(t: Jet3, beta: float, method: str = "auto") -> Jet3:
    """tanh(beta t)/beta with the beta -> 0 limit t handled by a series.

    ``method`` forces "tanh" or "series"; "auto" picks by ``BETA_SEAM``.
    """
    if method == "auto":
        method = "series" if beta < BETA_SEAM else "tanh"
    if method == "tanh":
        return jets.tanh(t * beta) / beta
    b2 = beta * beta
    t2 = t * t
    t3 = t2 * t
    # tanh(x)/beta = t - b2 t^3/3 + 2 b2^2 t^5/15 - 17 b2^3 t^7/315
    return t - t3 * (b2 / 3) + t3 * t2 * (2 * b2 * b2 / 15) - t3 * t2 * t2 * (17 * b2 ** 3 / 315)


def a_k_jet(k: float, z, method: str = "auto") -> Jet3:
    return a_k_core(jets.atanh(Jet3.variable(z)), beta_of(k), method)


def f0_jet(k: float, z) -> Jet3:
    b = b_of(k)
    zj = Jet3.variable(z)
    if b == 0:
        return jets.atanh(zj)
    # ((1+z)/(1-z))^b = exp(b log((1+z)/(1-z))); expm1 keeps small b accurate
    lg = jets.log((1 + zj) / (1 - zj)) * b
    return jets.jet_elementary(lg, "expm1") / (2 * b)


def f1_jet(k: float, z) -> Jet3:
    zj = Jet3.variable(z)
    if k == 0:
        return zj
    c = math.sqrt(k / 2)
    return jets.tan(zj * c) / c


def _f2_integrand(k: float):
    def g(t):
        u = u_solution(k, t)
        if np.any(np.abs(u) < 1e-12) or not np.all(np.isfinite(u)):
            raise SingularIntegrandError(f"F2 integrand singular on the path (k = {k})")
        return 1.0 / (u * u)
    return g


def f2_jet(k: float, z, value: bool = True) -> Jet3:
    """Value by quadrature of 1/u^2; derivatives from the closed-form integrand."""
    u = u_jet(k, z)
    if np.any(np.abs(u.f0) < 1e-12):
        raise SingularIntegrandError(f"u vanishes at z = {z!r}")
    deriv = 1.0 / (u * u)
    if value:
        f = segment_integral(_f2_integrand(k), z, rtol=1e-10)
    else:
        f = np.full(np.shape(z), np.nan + 0j) if np.ndim(z) else complex("nan")
    return Jet3(f, deriv.f0, deriv.f1, deriv.f2)


def cor28_jet(z, value=True) -> Jet3:
    zj = Jet3.variable(z)
    return (2 * zj / (1 - zj * zj) + 2 * jets.atanh(zj)) * 0.25


# catalog -----------------------------------------------------------------------

def _n(alpha, k):
    return ClassSpec(alpha, k, "N")


def _m(k):
    return ClassSpec(2, k, "M")


def make_A_k(k: float = 1.0) -> MapEntry:
    spec = _n(2, k)
    k = spec.k
    beta = beta_of(k)
    if k == 0:
        label, note = JOHN, "k = 0 gives the identity"
    elif k == 2:
        label, note = NOT_JOHN, "k = 2 gives the strip map (1/2) log((1+z)/(1-z))"
    else:
        label, note = UNKNOWN, "N2(k) extremal"
    return MapEntry(
        "A_k", lambda z, value=True: a_k_jet(k, z),
        {"k": k, "beta": beta}, bounded=k < 2, john_label=label,
        declared_classes=(spec,), notes=note,
    )


def make_F0(k: float = 1.0) -> MapEntry:
    spec = _m(k)
    k = spec.k
    b = b_of(k)
    if k == 0:
        label, note = JOHN, "k = 0 gives the half-plane map z/(1-z)"
    elif k == 2:
        label, note = NOT_JOHN, "degenerate b = 0: limit map (1/2) log((1+z)/(1-z))"
    else:
        label, note = UNKNOWN, "M2(k) extremal"
    params = {"k": k, "b": b}
    if b == 0:
        params["degenerate"] = True
    return MapEntry("F0", lambda z, value=True: f0_jet(k, z), params, bounded=False,
                    john_label=label, declared_classes=(spec,), notes=note)


def make_F1(k: float = PI2_OVER_2) -> MapEntry:
    spec = _n(0, k)
    k = spec.k
    endpoint = k >= PI2_OVER_2
    label = JOHN if k == 0 else UNKNOWN
    return MapEntry(
        "F1", lambda z, value=True: f1_jet(k, z), {"k": k},
        bounded=not endpoint, john_label=label, declared_classes=(spec,),
        notes="N0(k) extremal" + ("; unbounded at k = pi^2/2" if endpoint else ""),
    )


def make_F2(k: float = 4.0) -> MapEntry:
    spec = _n(1, k)
    k = spec.k
    label = JOHN if k == 0 else UNKNOWN
    return MapEntry(
        "F2", lambda z, value=True: f2_jet(k, z, value), {"k": k},
        bounded=k < 4, john_label=label, declared_classes=(spec,),
        notes="N1(k) extremal; value by segment quadrature", max_radius=MAX_RADIUS,
    )


_FIXED = {
    "identity": lambda: MapEntry(
        "identity", _identity, bounded=True, john_label=JOHN,
        declared_classes=(_n(0, 0), _n(1, 0), _n(2, 0)), notes="the unit disk"),
    "koebe": lambda: MapEntry(
        "koebe", _koebe, bounded=False, john_label=JOHN,
        notes="Koebe function z/(1-z)^2; image is the Koebe domain"),
    "strip_f1": lambda: MapEntry(
        "strip_f1", _strip, bounded=False, john_label=NOT_JOHN,
        declared_classes=(_n(2, 2), _m(2)),
        notes="(1/2) Log((1+z)/(1-z)) onto the strip |Im w| < pi/4"),
    "twoslit_f2": lambda: MapEntry(
        "twoslit_f2", _twoslit, bounded=False, john_label=NOT_JOHN,
        notes="z/(1-z^2) onto the plane minus two vertical half-lines"),
    "halfplane_g1": lambda: MapEntry(
        "halfplane_g1", _halfplane, bounded=False, john_label=JOHN,
        declared_classes=(_m(0),), notes="z/(1-z) onto the half-plane Re w > -1/2"),
    "koebe_g2": lambda: MapEntry(
        "koebe_g2", _koebe, bounded=False, john_label=JOHN,
        notes="z/(1-z)^2, the Koebe domain"),
    "cor28": lambda: MapEntry(
        "cor28", cor28_jet, {"k": 4.0}, bounded=False, john_label=UNKNOWN,
        declared_classes=(_n(1, 4),),
        notes="N1(4) extremal (1/4)(2z/(1-z^2) + log((1+z)/(1-z)))"),
    "mobius_disk": lambda: MapEntry(
        "mobius_disk", _mobius_disk, bounded=True, john_label=JOHN,
        declared_classes=(_m(1.5),),
        notes="2z/(2-z), normalized Mobius map onto a disk"),
}

_PARAMETRIC = {"A_k": make_A_k, "F0": make_F0, "F1": make_F1, "F2": make_F2}

PARAMETRIC = tuple(_PARAMETRIC)
NAMES = tuple(_FIXED) + PARAMETRIC


def catalog_lookup(name: str, k: float | None = None) -> MapEntry:
    """Catalog entry by name; ``k`` parametrizes A_k, F0, F1 and F2."""
    if name in _FIXED:
        if k is not None:
            raise PreconditionError(f"{name} takes no k parameter")
        return _FIXED[name]()
    if name in _PARAMETRIC:
        return _PARAMETRIC[name]() if k is None else _PARAMETRIC[name](k)
    raise UnknownMapError(name)


def catalog_entries(ks: dict | None = None) -> list[MapEntry]:
    """One entry per name, parametric ones at the k given in ``ks`` (or their defaults)."""
    ks = ks or {}
    return [catalog_lookup(n, ks.get(n)) for n in NAMES]


def catalog_json(entries=None) -> list[dict]:
    return [e.to_dict() for e in (entries or catalog_entries())]
