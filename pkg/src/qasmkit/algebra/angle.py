"""Rotation angles that stay exact for rational multiples of pi."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

TOL = 1e-9
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class Angle:
    """Either ``coeff * pi`` with ``coeff`` a reduced fraction in ``[0, 2)``,
    or a plain float in radians (``coeff is None``)."""

    coeff: Fraction | None = Fraction(0)
    radians: float = 0.0

    @staticmethod
    def pi(num: int, den: int = 1) -> "Angle":
        return Angle(Fraction(num, den) % 2, 0.0)

    @staticmethod
    def of(x: float) -> "Angle":
        return Angle(None, float(x))

    @staticmethod
    def zero() -> "Angle":
        return Angle(Fraction(0), 0.0)

    @property
    def exact(self) -> bool:
        return self.coeff is not None

    def __float__(self) -> float:
        if self.coeff is None:
            return self.radians
        return float(self.coeff) * math.pi

    def signed(self) -> float:
        """Value in radians; exact angles are taken in (-pi, pi]."""
        if self.coeff is None:
            return self.radians
        c = self.coeff if self.coeff <= 1 else self.coeff - 2
        return float(c) * math.pi

    def __add__(self, other: "Angle") -> "Angle":
        if self.coeff is not None and other.coeff is not None:
            return Angle((self.coeff + other.coeff) % 2, 0.0)
        return Angle(None, float(self) + float(other))

    def __neg__(self) -> "Angle":
        if self.coeff is not None:
            return Angle((-self.coeff) % 2, 0.0)
        return Angle(None, -self.radians)

    def __sub__(self, other: "Angle") -> "Angle":
        return self + (-other)

    def scale(self, k: Fraction | int) -> "Angle":
        if self.coeff is not None:
            return Angle((self.coeff * k) % 2, 0.0)
        return Angle(None, self.radians * float(k))

    def is_zero(self) -> bool:
        if self.coeff is not None:
            return self.coeff == 0
        r = math.remainder(self.radians, TWO_PI)
        return abs(r) < TOL

    def close(self, other: "Angle") -> bool:
        return (self - other).is_zero()

    def pi_multiple(self) -> Fraction | None:
        """The coefficient of pi if known exactly or within tolerance of a
        multiple of pi/4; otherwise ``None``."""
        if self.coeff is not None:
            return self.coeff
        q = self.radians / (math.pi / 4)
        r = round(q)
        if abs(q - r) * (math.pi / 4) < TOL:
            return Fraction(r, 4) % 2
        return None

    def __repr__(self) -> str:
        if self.coeff is not None:
            return f"Angle({self.coeff}*pi)"
        return f"Angle({self.radians!r})"
