"""Decomposition of primitive points (X : Y : Z) on y^2 z = x^3 + d z^3 as

    d = b0^2 d1,  X = b0 b1 x1,  Y = b0 y1,  Z = b1^3,
    y1^2 = b0 x1^3 + d1 b1^6.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import MordellCurve, OffCurveError, PrimitiveTriple
from .integer_lab import gcd, is_sixth_power_free


class DecompositionError(ArithmeticError):
    """A step of the construction contradicted its hypotheses."""


@dataclass(frozen=True)
class Decomposition:
    b0: int
    b1: int
    d1: int
    x1: int
    y1: int

    def residual(self) -> int:
        return self.y1 ** 2 - self.b0 * self.x1 ** 3 - self.d1 * self.b1 ** 6

    def box_value(self) -> int:
        """Unreduced search height max(|b0 x1^3|, y1^2)."""
        return max(abs(self.b0 * self.x1 ** 3), self.y1 ** 2)

    def check(self) -> None:
        if self.b0 < 1 or self.b1 < 1 or self.y1 < 1 or self.d1 == 0:
            raise DecompositionError(f"sign/range conditions fail for {self}")
        if self.residual() != 0:
            raise DecompositionError(f"y1^2 != b0 x1^3 + d1 b1^6 for {self}")
        if gcd(self.b1, self.x1) != 1 or gcd(self.b0, self.b1) != 1:
            raise DecompositionError(f"coprimality fails for {self}")
        if gcd(self.b1 * self.x1, self.y1) != 1:
            raise DecompositionError(f"gcd(b1 x1, y1) != 1 for {self}")

    def as_dict(self) -> dict[str, int]:
        return {"b0": self.b0, "b1": self.b1, "d1": self.d1, "x1": self.x1, "y1": self.y1}


def decompose(curve: MordellCurve | int, t: PrimitiveTriple) -> Decomposition:
    d = curve.d if isinstance(curve, MordellCurve) else curve
    if d == 0 or not is_sixth_power_free(d):
        raise ValueError(f"d = {d} must be nonzero and sixth-power free")
    X, Y, Z = t.X, t.Y, t.Z
    if Y < 1 or Z < 1 or gcd(X, Y, Z) != 1:
        raise ValueError(f"{t} is not a primitive triple with Y, Z >= 1")
    if Y * Y * Z != X ** 3 + d * Z ** 3:
        raise OffCurveError(f"{t} is not on y^2 z = x^3 + {d} z^3")

    b0 = gcd(X, Y)
    y1 = Y // b0
    x0 = X // b0
    if d % (b0 * b0):
        raise DecompositionError(f"b0^2 = {b0 * b0} does not divide d = {d}")
    d1 = d // (b0 * b0)
    b1 = gcd(x0, Z)
    x1 = x0 // b1
    u, rem = divmod(Z, b1 ** 3)
    if rem or u != 1:
        raise DecompositionError(f"Z = {Z} is not b1^3 for b1 = {b1}")
    dec = Decomposition(b0, b1, d1, x1, y1)
    dec.check()
    return dec


def recompose(dec: Decomposition) -> tuple[int, PrimitiveTriple]:
    dec.check()
    d = dec.b0 ** 2 * dec.d1
    return d, PrimitiveTriple(dec.b0 * dec.b1 * dec.x1, dec.b0 * dec.y1, dec.b1 ** 3)
