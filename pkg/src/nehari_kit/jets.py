"""Order-3 complex jets: (f, f', f'', f''') at a base point.

Jets hold derivative values (not Taylor coefficients). Every component may be
a Python complex or a numpy array, so one jet can carry a whole grid of base
points at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import BranchCutError, PreconditionError, SingularJetError

Scalar = Union[complex, float, int, np.ndarray]


@dataclass(frozen=True, eq=False)
class Jet3:
    """Value and first three complex derivatives of an analytic map."""

    f0: Scalar
    f1: Scalar
    f2: Scalar
    f3: Scalar

    @classmethod
    def variable(cls, z) -> "Jet3":
        """Jet of the identity map at ``z``."""
        z = _as_complex(z)
        one = np.ones_like(z) if isinstance(z, np.ndarray) else 1.0 + 0j
        return cls(z, one, 0 * one, 0 * one)

    @classmethod
    def constant(cls, c, like: "Jet3 | None" = None) -> "Jet3":
        c = _as_complex(c)
        if like is not None and isinstance(like.f0, np.ndarray):
            c = np.broadcast_to(c, np.shape(like.f0)).astype(complex)
        zero = 0 * c
        return cls(c, zero, zero, zero)

    @property
    def components(self) -> tuple:
        return (self.f0, self.f1, self.f2, self.f3)

    def __getitem__(self, idx) -> "Jet3":
        return Jet3(*(np.asarray(c)[idx] for c in self.components))

    # arithmetic -------------------------------------------------------------

    def __add__(self, other) -> "Jet3":
        if isinstance(other, Jet3):
            return Jet3(self.f0 + other.f0, self.f1 + other.f1,
                        self.f2 + other.f2, self.f3 + other.f3)
        return Jet3(self.f0 + other, self.f1, self.f2, self.f3)

    __radd__ = __add__

    def __neg__(self) -> "Jet3":
        return Jet3(-self.f0, -self.f1, -self.f2, -self.f3)

    def __sub__(self, other) -> "Jet3":
        return self + (-other)

    def __rsub__(self, other) -> "Jet3":
        return (-self) + other

    def __mul__(self, other) -> "Jet3":
        if not isinstance(other, Jet3):
            return Jet3(self.f0 * other, self.f1 * other,
                        self.f2 * other, self.f3 * other)
        a0, a1, a2, a3 = self.components
        b0, b1, b2, b3 = other.components
        return Jet3(
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2 * a1 * b1 + a0 * b2,
            a3 * b0 + 3 * a2 * b1 + 3 * a1 * b2 + a0 * b3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet3":
        if not isinstance(other, Jet3):
            if np.any(np.asarray(other) == 0):
                raise SingularJetError("division of a jet by zero")
            return self * (1.0 / other)
        b0, b1, b2, b3 = other.components
        if np.any(np.asarray(b0) == 0):
            raise SingularJetError("division by a jet with vanishing value")
        a0, a1, a2, a3 = self.components
        # solve a = h * b for h, order by order
        h0 = a0 / b0
        h1 = (a1 - h0 * b1) / b0
        h2 = (a2 - 2 * h1 * b1 - h0 * b2) / b0
        h3 = (a3 - 3 * h2 * b1 - 3 * h1 * b2 - h0 * b3) / b0
        return Jet3(h0, h1, h2, h3)

    def __rtruediv__(self, other) -> "Jet3":
        return Jet3.constant(other, like=self) / self

    def __pow__(self, n: int) -> "Jet3":
        if not isinstance(n, (int, np.integer)) or n < 0:
            return jet_elementary(self, "pow", beta=n)
        out = Jet3.constant(1.0, like=self)
        for _ in range(int(n)):
            out = out * self
        return out

    def compose_affine(self, c) -> "Jet3":
        """Jet of ``f(c*z + d)`` given this jet of ``f`` at ``c*z + d``."""
        return Jet3(self.f0, self.f1 * c, self.f2 * c**2, self.f3 * c**3)

    def apply(self, g0, g1, g2, g3) -> "Jet3":
        """Chain rule: jet of ``g o self`` from g and its derivatives at ``self.f0``."""
        x1, x2, x3 = self.f1, self.f2, self.f3
        return Jet3(
            g0,
            g1 * x1,
            g2 * x1 * x1 + g1 * x2,
            g3 * x1 ** 3 + 3 * g2 * x1 * x2 + g1 * x3,
        )

    def __repr__(self) -> str:
        return f"Jet3(f0={self.f0!r}, f1={self.f1!r}, f2={self.f2!r}, f3={self.f3!r})"


@dataclass(frozen=True)
class DiskPoint:
    """A point of the open unit disk."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not abs(z) < 1.0:
            raise PreconditionError(f"point {z!r} is not inside the unit disk")
        object.__setattr__(self, "z", z)

    @property
    def r(self) -> float:
        return abs(self.z)


def _as_complex(z):
    if isinstance(z, np.ndarray):
        return z.astype(complex)
    if isinstance(z, DiskPoint):
        return z.z
    return complex(z)


def jet_arith(a: Jet3, b, op: str) -> Jet3:
    """Binary jet arithmetic; ``compose-affine`` takes ``b`` as the slope ``c``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "compose-affine":
        return a.compose_affine(b)
    raise ValueError(f"unknown jet operation {op!r}")


def _on_cut(values, lo=-np.inf, hi=0.0, interior=False):
    v = np.asarray(values)
    real_axis = v.imag == 0
    if interior:
        return real_axis & ((v.real <= lo) | (v.real >= hi))
    return real_axis & (v.real <= hi)


def _first_bad(values, mask):
    return np.asarray(values)[mask].ravel()[0]


def jet_elementary(x: Jet3, fn: str, beta: float | None = None) -> Jet3:
    """Jet of ``fn(x)`` with principal branches.

    ``fn`` is one of exp, expm1, log, pow, tan, atanh, tanh; ``pow`` uses
    ``beta`` and is defined as exp(beta*log(x)).
    """
    u = x.f0
    if fn == "exp":
        e = np.exp(u)
        return x.apply(e, e, e, e)
    if fn == "expm1":
        e = np.exp(u)
        return x.apply(np.expm1(u), e, e, e)
    if fn == "log":
        bad = _on_cut(u)
        if np.any(bad):
            raise BranchCutError("log", _first_bad(u, bad))
        inv = 1.0 / u
        return x.apply(np.log(u), inv, -inv * inv, 2 * inv ** 3)
    if fn == "pow":
        if beta is None:
            raise ValueError("pow requires an exponent")
        if beta == 1:
            return x
        return jet_elementary(jet_elementary(x, "log") * beta, "exp")
    if fn == "tan":
        t = np.tan(u)
        s = 1 + t * t
        return x.apply(t, s, 2 * t * s, 2 * s * (1 + 3 * t * t))
    if fn == "atanh":
        bad = _on_cut(u, lo=-1.0, hi=1.0, interior=True)
        if np.any(bad):
            raise BranchCutError("atanh", _first_bad(u, bad))
        d = 1.0 / (1 - u * u)
        return x.apply(np.arctanh(u), d, 2 * u * d * d, (2 + 6 * u * u) * d ** 3)
    if fn == "tanh":
        t = np.tanh(u)
        s = 1 - t * t
        return x.apply(t, s, -2 * t * s, s * (6 * t * t - 2))
    raise ValueError(f"unknown elementary function {fn!r}")


def exp(x: Jet3) -> Jet3:
    return jet_elementary(x, "exp")


def log(x: Jet3) -> Jet3:
    return jet_elementary(x, "log")


def tan(x: Jet3) -> Jet3:
    return jet_elementary(x, "tan")


def tanh(x: Jet3) -> Jet3:
    return jet_elementary(x, "tanh")


def atanh(x: Jet3) -> Jet3:
    return jet_elementary(x, "atanh")


def power(x: Jet3, beta: float) -> Jet3:
    return jet_elementary(x, "pow", beta=beta)
