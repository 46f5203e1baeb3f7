"""Gauss hypergeometric 2F1 by direct power series.

Only the series regime |z| <= 0.95 is supported. Convergence slows as |z|
approaches that cap (roughly 700 terms at |z| = 0.95 versus 50 at 0.5), and
no transformation formulas are used to extend the range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, PreconditionError, SingularSolutionError
from .jets import Jet3

MAX_RADIUS = 0.95
MAX_TERMS = 10_000
REL_TOL = 1e-16


@dataclass(frozen=True)
class HypParams:
    a: float
    b: float
    c: float

    def __post_init__(self):
        c = self.c
        if c <= 0 and float(c).is_integer():
            raise PreconditionError(f"c = {c} is a non-positive integer")

    def shifted(self, n: int = 1) -> "HypParams":
        return HypParams(self.a + n, self.b + n, self.c + n)


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = 1.0
    for j in range(n):
        out *= a + j
    return out


def _terminates(p: HypParams) -> bool:
    return any(v <= 0 and float(v).is_integer() for v in (p.a, p.b))


def _check_radius(z):
    if np.any(np.abs(z) > MAX_RADIUS + 1e-15):
        raise PreconditionError(
            f"|z| = {np.max(np.abs(z)):.6g} outside the series regime |z| <= {MAX_RADIUS}"
        )


def hyp2f1(p: HypParams, z):
    """Sum F(a,b;c;z) for scalar or array ``z``."""
    z_arr = np.asarray(z, dtype=complex)
    _check_radius(z_arr)
    total = np.ones_like(z_arr)
    term = np.ones_like(z_arr)
    a, b, c = p.a, p.b, p.c
    exact = _terminates(p)
    for n in range(MAX_TERMS):
        coef = (a + n) * (b + n) / ((c + n) * (n + 1))
        if coef == 0:
            break
        term = term * (coef * z_arr)
        total = total + term
        small = np.abs(term) <= REL_TOL * np.abs(total)
        if not exact and np.all(small | (term == 0)):
            break
    else:
        resid = float(np.max(np.abs(term) / np.maximum(np.abs(total), 1e-300)))
        raise ConvergenceError(f"2F1{(a, b, c)} did not converge in {MAX_TERMS} terms", resid)
    if np.ndim(z) == 0:
        return complex(total)
    return total


def hyp2f1_derivative(p: HypParams, z):
    """d/dz F(a,b;c;z) = (ab/c) F(a+1,b+1;c+1;z)."""
    if p.a * p.b == 0:
        return 0j if np.ndim(z) == 0 else np.zeros_like(np.asarray(z, dtype=complex))
    return (p.a * p.b / p.c) * hyp2f1(p.shifted(), z)


def hyp2f1_nth_derivative(p: HypParams, z, n: int):
    coef = pochhammer(p.a, n) * pochhammer(p.b, n) / pochhammer(p.c, n)
    if coef == 0:
        return 0j if np.ndim(z) == 0 else np.zeros_like(np.asarray(z, dtype=complex))
    return coef * hyp2f1(p.shifted(n), z)


def hyp2f1_jet(p: HypParams, x: Jet3) -> Jet3:
    """Jet of F(a,b;c;x(z)) from the jet of the inner argument."""
    g = [hyp2f1_nth_derivative(p, x.f0, n) for n in range(4)]
    return x.apply(*g)


def n1_params(k: float) -> tuple[HypParams, HypParams]:
    """(numerator, denominator) parameters of the N1-class ratio solution."""
    s = math.sqrt(1 + 2 * k)
    den = HypParams(-0.25 * (1 + s), 0.25 * (-1 + s), 0.5)
    num = HypParams(-0.25 * (-3 + s), 0.25 * (3 + s), 1.5)
    return num, den


def u_solution(k: float, z):
    """u(z) = F(-(1+s)/4, (s-1)/4; 1/2; z^2), s = sqrt(1+2k)."""
    _, den = n1_params(k)
    return hyp2f1(den, np.square(np.asarray(z, dtype=complex)))


def u_jet(k: float, z) -> Jet3:
    """Jet of ``u_solution`` in z."""
    _, den = n1_params(k)
    zj = Jet3.variable(z)
    return hyp2f1_jet(den, zj * zj)


def w_ratio_n1(k: float, z):
    """k z F(a+1,b+1;3/2;z^2) / F(a,b;1/2;z^2), the solution of w' = w^2/2 + k/(1-z^2)."""
    if not 0 <= k <= 4 + 1e-12:
        raise PreconditionError(f"k = {k} outside [0, 4]")
    scalar = np.ndim(z) == 0
    zz = np.asarray(z, dtype=complex)
    _check_radius(zz)
    if k == 0:
        return 0j if scalar else np.zeros_like(zz)
    num, den = n1_params(k)
    d = hyp2f1(den, zz * zz)
    if np.any(np.abs(d) < 1e-14):
        raise SingularSolutionError("denominator 2F1 vanishes")
    out = k * zz * hyp2f1(num, zz * zz) / d
    return complex(out) if scalar else out
