"""Bounded point search on Mordell curves and the zeta_d surrogate.

The main search walks the parameterisation y1^2 = b0 x1^3 + d1 b1^6 over the
box max(|b0 x1^3|, y1^2) <= B.  ``brute_force_points`` is an independent
oracle over projective coordinates that never uses the parameterisation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

import numpy as np

from .curve import CurvePoint, MordellCurve, PrimitiveTriple, from_primitive_triple, is_torsion
from .heights import canonical_height, height_f
from .integer_lab import factorize, gcd, integer_cbrt

_FLOAT_EXACT = 1 << 52


@dataclass(frozen=True)
class SearchBound:
    search_height: int

    def __post_init__(self):
        if not isinstance(self.search_height, int) or self.search_height < 1:
            raise ValueError("search height must be a positive integer")


def _as_bound(bound) -> SearchBound:
    return bound if isinstance(bound, SearchBound) else SearchBound(int(bound))


def _icbrt_floor(n: int) -> int:
    r = integer_cbrt(n)
    if r is not None:
        return r
    r = round(n ** (1.0 / 3.0))
    while r ** 3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _square_roots(values: np.ndarray) -> np.ndarray:
    """Exact integer square roots of an int64 array, -1 where not a square."""
    out = np.full(values.shape, -1, dtype=np.int64)
    pos = values >= 0
    r = np.rint(np.sqrt(values[pos].astype(np.float64))).astype(np.int64)
    ok = r * r == values[pos]
    idx = np.flatnonzero(pos)
    out[idx[ok]] = r[ok]
    return out


def square_divisors(d: int) -> list[int]:
    """All b0 >= 1 with b0^2 | d."""
    out = [1]
    for p, e in factorize(d).items():
        out = [b * p ** k for b in out for k in range(e // 2 + 1)]
    return sorted(out)


def _param_hits(b0: int, d1: int, b1: int, B: int) -> list[tuple[int, int]]:
    """(x1, y1) with 1 <= y1^2 = b0 x1^3 + d1 b1^6 <= B and |b0 x1^3| <= B."""
    xmax = _icbrt_floor(B // b0)
    c = d1 * b1 ** 6
    if b0 * xmax ** 3 + abs(c) < _FLOAT_EXACT:
        x = np.arange(-xmax, xmax + 1, dtype=np.int64)
        v = b0 * x ** 3 + c
        keep = (v >= 1) & (v <= B)
        x, v = x[keep], v[keep]
        r = _square_roots(v)
        good = r > 0
        return list(zip(x[good].tolist(), r[good].tolist()))
    hits = []
    for x1 in range(-xmax, xmax + 1):
        v = b0 * x1 ** 3 + c
        if 1 <= v <= B:
            y1 = isqrt(v)
            if y1 * y1 == v:
                hits.append((x1, y1))
    return hits


def enumerate_points(curve: MordellCurve, bound) -> list[CurvePoint]:
    """Every point (up to sign, y > 0) whose decomposition has box value <= B."""
    B = _as_bound(bound).search_height
    d = curve.d
    found = []
    for b0 in square_divisors(d):
        d1 = d // (b0 * b0)
        b1 = 1
        # |d1 b1^6| = |y1^2 - b0 x1^3| <= 2B
        while abs(d1) * b1 ** 6 <= 2 * B:
            if gcd(b0, b1) == 1:
                for x1, y1 in _param_hits(b0, d1, b1, B):
                    if gcd(x1, b1) != 1 or gcd(b1 * x1, y1) != 1:
                        continue
                    found.append(CurvePoint(Fraction(b0 * x1, b1 * b1), Fraction(b0 * y1, b1 ** 3)))
            b1 += 1
    found.sort(key=lambda P: (P.x, P.y))
    return found


def _cube_divisor_step(Z: int) -> int:
    """Smallest m >= 1 with Z | m^3."""
    m = 1
    for p, e in factorize(Z).items():
        m *= p ** (-(-e // 3))
    return m


def brute_force_triples(
    curve: MordellCurve,
    x_bound: int,
    y_bound: Optional[int] = None,
    z_bound: Optional[int] = None,
    y_min: int = 1,
) -> list:
    """Primitive (X, Y, Z) on Y^2 Z = X^3 + d Z^3 with |X| <= x_bound,
    y_min <= Y <= y_bound and 1 <= Z <= z_bound (bounds default to x_bound).

    Scans Z and X directly; the only pruning is Z | X^3, which integrality of
    Y^2 = X^3 / Z + d Z^2 forces.  With ``y_min = 0`` the 2-torsion triples
    (X, 0, Z) are returned as plain tuples.
    """
    Cx = x_bound
    Cy = x_bound if y_bound is None else y_bound
    Cz = x_bound if z_bound is None else z_bound
    d = curve.d
    out = []
    use_numpy = Cx ** 3 + abs(d) * Cz ** 2 < _FLOAT_EXACT
    for Z in range(1, Cz + 1):
        m = _cube_divisor_step(Z)
        k = Cx // m
        if use_numpy:
            X = np.arange(-k, k + 1, dtype=np.int64) * m
            v = X ** 3 // Z + d * Z * Z
            r = _square_roots(v)
            sel = (r >= y_min) & (r <= Cy)
            pairs = zip(X[sel].tolist(), r[sel].tolist())
        else:
            pairs = []
            for X in range(-k * m, k * m + 1, m):
                v = X ** 3 // Z + d * Z * Z
                if v >= 0:
                    r = isqrt(v)
                    if r * r == v and y_min <= r <= Cy:
                        pairs.append((X, r))
        for X, Y in pairs:
            if gcd(X, Y, Z) != 1:
                continue
            out.append((X, 0, Z) if Y == 0 else PrimitiveTriple(X, Y, Z))
    return out


def brute_force_points(curve: MordellCurve, coord_bound: int) -> list[CurvePoint]:
    pts = [from_primitive_triple(curve, t) for t in brute_force_triples(curve, coord_bound)]
    pts.sort(key=lambda P: (P.x, P.y))
    return pts


@dataclass(frozen=True)
class PointRecord:
    point: CurvePoint
    hhat: float
    h_f: float


@dataclass(frozen=True)
class ZetaResult:
    """Found: ``witness`` realises the least canonical height ``value`` in the box.

    NoneFound (``witness is None``) only says no non-torsion point lies in the
    search box; it is not a claim that the rank is 0.
    """

    bound: SearchBound
    value: Optional[float] = None
    witness: Optional[CurvePoint] = None

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def outcome(self) -> str:
        return "found" if self.found else "none"


def search_nontorsion(curve: MordellCurve, bound, tol: float = 1e-8) -> list[PointRecord]:
    """Non-torsion points in the box with their canonical and f-heights."""
    recs = []
    for P in enumerate_points(curve, bound):
        if is_torsion(curve, P):
            continue
        hh = canonical_height(curve, P, tol).value
        recs.append(PointRecord(P, hh, height_f(P).value))
    recs.sort(key=lambda r: (r.hhat, r.h_f, r.point.x, r.point.y))
    return recs


def zeta_from_records(records: list[PointRecord], bound) -> ZetaResult:
    bound = _as_bound(bound)
    if not records:
        return ZetaResult(bound)
    best = min(records, key=lambda r: (r.hhat, r.h_f, r.point.x, r.point.y))
    return ZetaResult(bound, best.hhat, best.point)


def zeta(curve: MordellCurve, bound, tol: float = 1e-8) -> ZetaResult:
    """Bounded-search value of log zeta_d = min hhat over non-torsion points."""
    return zeta_from_records(search_nontorsion(curve, bound, tol), bound)


def log_zeta_threshold(d: int, alpha: float) -> float:
    """log |d|^alpha, the cut-off for zeta_d < |d|^alpha."""
    return alpha * math.log(abs(d))
