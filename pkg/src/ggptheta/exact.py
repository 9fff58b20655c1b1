"""Exact numbers of the form zeta8^k * p^e (e rational), plus zero.

This multiplicative monoid is closed under everything the epsilon-factor
computations need: Gauss sums of quadratic characters, powers of q, signs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from ggptheta.errors import FieldMismatchError, SnapError

SNAP_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ExactNumber:
    p: int
    zeta: int = 0
    power: Fraction = Fraction(0)
    is_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "zeta", self.zeta % 8)
        object.__setattr__(self, "power", Fraction(self.power))
        if self.is_zero:
            object.__setattr__(self, "zeta", 0)
            object.__setattr__(self, "power", Fraction(0))

    @classmethod
    def one(cls, p: int) -> "ExactNumber":
        return cls(p)

    @classmethod
    def zero(cls, p: int) -> "ExactNumber":
        return cls(p, is_zero=True)

    @classmethod
    def sign(cls, p: int, s: int) -> "ExactNumber":
        if s not in (1, -1):
            raise ValueError(f"{s} is not a sign")
        return cls(p, 0 if s == 1 else 4)

    @classmethod
    def p_power(cls, p: int, e) -> "ExactNumber":
        return cls(p, 0, Fraction(e))

    @property
    def half_power(self) -> int | None:
        """m with |value| = p^(m/2), or None when the exponent is not a half-integer."""
        twice = 2 * self.power
        return int(twice) if twice.denominator == 1 else None

    def _check(self, other: "ExactNumber") -> None:
        if self.p != other.p:
            raise FieldMismatchError(f"exact numbers for p={self.p} and p={other.p} mixed")

    def __mul__(self, other):
        if isinstance(other, int):
            other = ExactNumber.sign(self.p, other)
        self._check(other)
        if self.is_zero or other.is_zero:
            return ExactNumber.zero(self.p)
        return ExactNumber(self.p, self.zeta + other.zeta, self.power + other.power)

    __rmul__ = __mul__

    def inverse(self) -> "ExactNumber":
        if self.is_zero:
            raise ZeroDivisionError("zero has no inverse")
        return ExactNumber(self.p, -self.zeta, -self.power)

    def __truediv__(self, other: "ExactNumber") -> "ExactNumber":
        return self * other.inverse()

    def __pow__(self, k: int) -> "ExactNumber":
        if self.is_zero:
            if k <= 0:
                raise ZeroDivisionError("0 ** non-positive")
            return self
        return ExactNumber(self.p, self.zeta * k, self.power * k)

    def __neg__(self) -> "ExactNumber":
        return self * -1

    def is_sign(self) -> bool:
        return not self.is_zero and self.power == 0 and self.zeta in (0, 4)

    def to_sign(self) -> int:
        if not self.is_sign():
            raise ValueError(f"{self} is not +1 or -1")
        return 1 if self.zeta == 0 else -1

    def __complex__(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.exp(1j * math.pi * self.zeta / 4) * float(self.p) ** float(self.power)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        m = self.half_power
        exp = f"({m}/2)" if m is not None else f"({self.power})"
        return f"zeta8^{self.zeta} * {self.p}^{exp}"

    def to_json(self) -> dict:
        if self.is_zero:
            return {"zero": True}
        return {"zeta8": self.zeta, "p": self.p, "power": str(self.power), "text": str(self)}

    @classmethod
    def snap(cls, z: complex, p: int, tol: float = SNAP_TOLERANCE) -> "ExactNumber":
        """Nearest zeta8^k * p^(m/2) to z; SnapError if the nearest candidate is farther than tol."""
        if abs(z) < tol:
            return cls.zero(p)
        m = round(2 * math.log(abs(z), p))
        k = round(cmath.phase(z) / (math.pi / 4)) % 8
        cand = cls(p, k, Fraction(m, 2))
        if abs(complex(cand) - z) > tol:
            raise SnapError(f"{z} is {abs(complex(cand) - z):.3g} from the nearest exact value {cand}")
        return cand
