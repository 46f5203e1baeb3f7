"""Nehari-type class descriptors N_alpha(k) and M_2(k)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PreconditionError

PI2_OVER_2 = math.pi ** 2 / 2

#: largest admissible k per alpha
K_MAX = {0: PI2_OVER_2, 1: 4.0, 2: 2.0}

_K_SLACK = 1e-12


@dataclass(frozen=True)
class ClassSpec:
    """``alpha`` in {0, 1, 2}, ``k`` >= 0, ``variant`` "N" or "M" (M only for alpha 2)."""

    alpha: int
    k: float
    variant: str = "N"

    def __post_init__(self):
        if self.alpha not in K_MAX:
            raise PreconditionError(f"alpha must be 0, 1 or 2, got {self.alpha!r}")
        if self.variant not in ("N", "M"):
            raise PreconditionError(f"variant must be 'N' or 'M', got {self.variant!r}")
        if self.variant == "M" and self.alpha != 2:
            raise PreconditionError("the M variant exists only for alpha = 2")
        kmax = K_MAX[self.alpha]
        if not 0 <= self.k <= kmax * (1 + _K_SLACK):
            raise PreconditionError(
                f"k = {self.k} outside the admissible range [0, {kmax:.15g}] for alpha = {self.alpha}"
            )
        object.__setattr__(self, "k", float(min(self.k, kmax)))

    @property
    def f2_at_zero(self) -> float:
        """Required value of f''(0)."""
        return math.sqrt(4 - 2 * self.k) if self.variant == "M" else 0.0

    def contains(self, other: "ClassSpec") -> bool:
        """Set inclusion ``other`` subset of ``self`` that follows from the definitions."""
        a, b = self.canonical(), other.canonical()
        if b.variant == "N" and b.k == 0:
            # N_alpha(0) is {identity}; the identity lies in every N class
            return a.variant == "N"
        if a.alpha != b.alpha or a.variant != b.variant:
            return False
        if a.variant == "N":
            return b.k <= a.k
        return a.k == b.k

    def canonical(self) -> "ClassSpec":
        """M_2(2) coincides with N_2(2)."""
        if self.variant == "M" and self.k == 2.0:
            return ClassSpec(2, 2.0, "N")
        return self

    @property
    def label(self) -> str:
        return f"{self.variant}{self.alpha}:{self.k:.15g}"

    def __str__(self) -> str:
        return self.label


def parse_class(text: str) -> ClassSpec:
    """Parse ``"N2:1.5"``, ``"M2:1"`` or ``"N0:pi^2/2"``."""
    try:
        head, kstr = text.split(":", 1)
        variant, alpha = head[0].upper(), int(head[1:])
    except (ValueError, IndexError):
        raise PreconditionError(f"cannot parse class spec {text!r}") from None
    return ClassSpec(alpha, parse_k(kstr), variant)


def parse_k(text: str) -> float:
    t = text.strip().lower().replace(" ", "")
    if t in ("pi^2/2", "pi**2/2", "pi2/2"):
        return PI2_OVER_2
    try:
        return float(t)
    except ValueError:
        raise PreconditionError(f"cannot parse k value {text!r}") from None
