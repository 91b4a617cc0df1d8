"""Exact arithmetic on Mordell curves y^2 = x^3 + d over Q."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm
from typing import Optional, Union

from .integer_lab import gcd, integer_cbrt, is_sixth_power_free, is_square

Rational = Union[int, Fraction]


class OffCurveError(ValueError):
    pass


@dataclass(frozen=True)
class MordellCurve:
    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d == 0:
            raise ValueError(f"d must be a nonzero integer, got {self.d!r}")
        if not is_sixth_power_free(self.d):
            raise ValueError(f"d = {self.d} is not sixth-power free")

    @property
    def discriminant(self) -> int:
        return -432 * self.d * self.d

    def contains(self, P: "CurvePoint") -> bool:
        if P.is_identity:
            return True
        return P.y * P.y == P.x ** 3 + self.d

    def __str__(self):
        return f"y^2 = x^3 + {self.d}" if self.d > 0 else f"y^2 = x^3 - {-self.d}"


@dataclass(frozen=True)
class CurvePoint:
    """A point of E_d(Q); ``x is None`` encodes the identity O."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("both coordinates must be given, or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "CurvePoint":
        if self.is_identity:
            return self
        return CurvePoint(self.x, -self.y)

    def __str__(self):
        if self.is_identity:
            return "O"
        return f"({self.x}, {self.y})"


O = CurvePoint()


def point(x: Rational, y: Rational) -> CurvePoint:
    return CurvePoint(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class PrimitiveTriple:
    """Integral projective point (X : Y : Z) with gcd 1, Y >= 1, Z >= 1."""

    X: int
    Y: int
    Z: int

    def __post_init__(self):
        if self.Y < 1 or self.Z < 1:
            raise ValueError(f"need Y >= 1 and Z >= 1, got {self}")
        if gcd(self.X, self.Y, self.Z) != 1:
            raise ValueError(f"triple {self} is not primitive")

    def on_curve(self, d: int) -> bool:
        return self.Y ** 2 * self.Z == self.X ** 3 + d * self.Z ** 3

    def as_list(self) -> list[int]:
        return [self.X, self.Y, self.Z]


def check_point(curve: MordellCurve, P: CurvePoint) -> None:
    if P.is_identity:
        return
    if not curve.contains(P):
        raise OffCurveError(f"{P} is not on {curve}")
    # x = a/e^2, y = b/e^3 for a common e
    e = isqrt(P.x.denominator)
    if e * e != P.x.denominator or P.y.denominator != e ** 3:
        raise OffCurveError(f"{P} does not have the shape (a/e^2, b/e^3)")


def negate(curve: MordellCurve, P: CurvePoint) -> CurvePoint:
    check_point(curve, P)
    return -P


def _add(d: int, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_identity:
        return Q
    if Q.is_identity:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return O
        # doubling, y != 0 here
        lam = 3 * P.x * P.x / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


def add(curve: MordellCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    check_point(curve, P)
    check_point(curve, Q)
    return _add(curve.d, P, Q)


def subtract(curve: MordellCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return add(curve, P, negate(curve, Q))


def multiply(curve: MordellCurve, n: int, P: CurvePoint) -> CurvePoint:
    check_point(curve, P)
    if n < 0:
        return -multiply(curve, -n, P)
    result = O
    addend = P
    while n:
        if n & 1:
            result = _add(curve.d, result, addend)
        n >>= 1
        if n:
            addend = _add(curve.d, addend, addend)
    return result


def order(curve: MordellCurve, P: CurvePoint, max_order: int = 12) -> Optional[int]:
    """Exact order of P if it is at most ``max_order``, else None."""
    check_point(curve, P)
    Q = P
    for k in range(1, max_order + 1):
        if Q.is_identity:
            return k
        Q = _add(curve.d, Q, P)
    return None


def is_torsion(curve: MordellCurve, P: CurvePoint) -> bool:
    # Torsion orders on Mordell curves divide 6.
    return multiply(curve, 6, P).is_identity


@dataclass(frozen=True)
class TorsionClass:
    structure: str  # "trivial", "Z2", "Z3" or "Z6"
    generators: tuple[CurvePoint, ...] = field(default_factory=tuple)

    @property
    def size(self) -> int:
        return {"trivial": 1, "Z2": 2, "Z3": 3, "Z6": 6}[self.structure]

    def points(self, curve: MordellCurve) -> list[CurvePoint]:
        if not self.generators:
            return [O]
        g = self.generators[0]
        return [multiply(curve, k, g) for k in range(self.size)]


def torsion_subgroup(curve: MordellCurve) -> TorsionClass:
    """Torsion of E_d(Q) from the classical table, generators re-verified."""
    d = curve.d
    if d == 1:
        tc = TorsionClass("Z6", (point(2, 3),))
    elif d == -432:
        tc = TorsionClass("Z3", (point(12, 36),))
    elif is_square(d):
        tc = TorsionClass("Z3", (point(0, isqrt(d)),))
    elif (c := integer_cbrt(d)) is not None:
        tc = TorsionClass("Z2", (point(-c, 0),))
    else:
        tc = TorsionClass("trivial")
    for g in tc.generators:
        if order(curve, g) != tc.size:
            raise AssertionError(f"generator {g} of {curve} does not have order {tc.size}")
    return tc


def to_primitive_triple(curve: MordellCurve, P: CurvePoint) -> PrimitiveTriple:
    """Clear denominators of P (or -P, so that Y >= 1)."""
    check_point(curve, P)
    if P.is_identity:
        raise ValueError("the identity has no affine triple")
    if P.y == 0:
        raise ValueError("2-torsion points (y = 0) have no triple with Y >= 1")
    Z = lcm(P.x.denominator, P.y.denominator)
    X = P.x.numerator * (Z // P.x.denominator)
    Y = P.y.numerator * (Z // P.y.denominator)
    g = gcd(X, Y, Z)
    X, Y, Z = X // g, Y // g, Z // g
    if Y < 0:
        Y = -Y
    return PrimitiveTriple(X, Y, Z)


def from_primitive_triple(curve: MordellCurve, t: PrimitiveTriple) -> CurvePoint:
    if not t.on_curve(curve.d):
        raise OffCurveError(f"{t} does not satisfy Y^2 Z = X^3 + {curve.d} Z^3")
    return CurvePoint(Fraction(t.X, t.Z), Fraction(t.Y, t.Z))


def point_to_json(P: CurvePoint):
    if P.is_identity:
        return "O"
    return {"x": f"{P.x.numerator}/{P.x.denominator}", "y": f"{P.y.numerator}/{P.y.denominator}"}


def point_from_json(obj) -> CurvePoint:
    if obj == "O":
        return O
    return CurvePoint(Fraction(obj["x"]), Fraction(obj["y"]))
