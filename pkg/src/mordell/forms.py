"""Integer points of ternary forms in boxes, and Heath-Brown's quantities T and V.

Counts include the zero triple and imprimitive solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Monomial = tuple[int, tuple[int, int, int]]

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class FormSpec:
    degree: int
    monomials: tuple[Monomial, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        mons = tuple((int(c), tuple(int(e) for e in exps)) for c, exps in self.monomials)
        seen = set()
        for c, exps in mons:
            if c == 0:
                raise ValueError("monomial coefficients must be nonzero")
            if len(exps) != 3 or min(exps) < 0:
                raise ValueError(f"bad exponent triple {exps}")
            if sum(exps) != self.degree:
                raise ValueError(f"monomial {exps} is not of degree {self.degree}")
            if exps in seen:
                raise ValueError(f"duplicate exponent triple {exps}")
            seen.add(exps)
        if not mons:
            raise ValueError("a form needs at least one monomial")
        object.__setattr__(self, "monomials", mons)

    def __call__(self, x1: int, x2: int, x3: int) -> int:
        return sum(c * x1 ** e1 * x2 ** e2 * x3 ** e3 for c, (e1, e2, e3) in self.monomials)

    def coefficient(self, exps: Sequence[int]) -> int:
        for c, e in self.monomials:
            if e == tuple(exps):
                return c
        return 0

    @classmethod
    def parse(cls, text: str) -> "FormSpec":
        """Parse ``"coeff:e1,e2,e3;coeff:e1,e2,e3;..."``."""
        mons = []
        for part in text.replace(" ", "").split(";"):
            if not part:
                continue
            coeff, _, exps = part.partition(":")
            e = tuple(int(v) for v in exps.split(","))
            mons.append((int(coeff), e))
        if not mons:
            raise ValueError(f"empty form {text!r}")
        return cls(sum(mons[0][1]), tuple(mons))

    def __str__(self):
        return ";".join(f"{c}:{e[0]},{e[1]},{e[2]}" for c, e in self.monomials)


@dataclass(frozen=True)
class BoxSpec:
    B1: int
    B2: int
    B3: int

    def __post_init__(self):
        if min(self.B1, self.B2, self.B3) < 1:
            raise ValueError("box side lengths must be >= 1")

    @property
    def V(self) -> int:
        return self.B1 * self.B2 * self.B3

    def sides(self) -> tuple[int, int, int]:
        return (self.B1, self.B2, self.B3)


def _max_abs_value(F: FormSpec, box: BoxSpec) -> int:
    return sum(abs(c) * box.B1 ** e1 * box.B2 ** e2 * box.B3 ** e3 for c, (e1, e2, e3) in F.monomials)


def count_points(F: FormSpec, box: BoxSpec) -> int:
    """Exact number of (x1, x2, x3), |xi| <= Bi, with F(x1, x2, x3) = 0."""
    if _max_abs_value(F, box) >= _INT64_SAFE:
        return count_points_naive(F, box)
    x2 = np.arange(-box.B2, box.B2 + 1, dtype=np.int64)
    x3 = np.arange(-box.B3, box.B3 + 1, dtype=np.int64)
    g2, g3 = np.meshgrid(x2, x3, indexing="ij")
    # per monomial: coefficient * x2^e2 * x3^e3 on the (x2, x3) grid
    partial = [(e1, c * g2 ** e2 * g3 ** e3) for c, (e1, e2, e3) in F.monomials]
    total = 0
    for a in range(-box.B1, box.B1 + 1):
        acc = np.zeros_like(g2)
        for e1, grid in partial:
            acc += (a ** e1) * grid
        total += int(np.count_nonzero(acc == 0))
    return total


def count_points_naive(F: FormSpec, box: BoxSpec) -> int:
    """Pure-Python triple loop; reference for ``count_points``."""
    return sum(1 for sol in iter_solutions(F, box))


def iter_solutions(F: FormSpec, box: BoxSpec) -> Iterable[tuple[int, int, int]]:
    for a in range(-box.B1, box.B1 + 1):
        for b in range(-box.B2, box.B2 + 1):
            for c in range(-box.B3, box.B3 + 1):
                if F(a, b, c) == 0:
                    yield (a, b, c)


def compute_T(F: FormSpec, box: BoxSpec) -> int:
    """T = max over monomials present of B1^f1 B2^f2 B3^f3."""
    return max(box.B1 ** e1 * box.B2 ** e2 * box.B3 ** e3 for _, (e1, e2, e3) in F.monomials)


def homogenize_param_equation(b0: int, b1: int, x1: int) -> FormSpec:
    """y1^2 - b0 x1^3 v^2 - b1^6 d1 v as a quadratic form in (d1, y1, v)."""
    if b0 < 1 or b1 < 1:
        raise ValueError("b0 and b1 must be >= 1")
    mons = [(1, (0, 2, 0))]
    if b0 * x1 ** 3 != 0:
        mons.append((-b0 * x1 ** 3, (0, 0, 2)))
    mons.append((-(b1 ** 6), (1, 0, 1)))
    return FormSpec(2, tuple(mons))


def gram_matrix(F: FormSpec) -> list[list[Fraction]]:
    if F.degree != 2:
        raise ValueError("Gram matrix needs a quadratic form")
    G = [[Fraction(0)] * 3 for _ in range(3)]
    for c, exps in F.monomials:
        idx = [i for i, e in enumerate(exps) for _ in range(e)]
        i, j = idx
        if i == j:
            G[i][i] += c
        else:
            G[i][j] += Fraction(c, 2)
            G[j][i] += Fraction(c, 2)
    return G


def det3(M) -> Fraction:
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def is_nonsingular_quadratic(F: FormSpec) -> bool:
    return det3(gram_matrix(F)) != 0


def heath_brown_report(F: FormSpec, box: BoxSpec) -> dict:
    """N, T, V and both bound shapes (implied constants unknown, epsilon' = 0)."""
    T = compute_T(F, box)
    V = box.V
    k = F.degree
    return {
        "N": count_points(F, box),
        "T": T,
        "V": V,
        "general_bound_shape": T ** (-(k ** 2)) * V ** (1 / k) if T < 10 ** 300 else 0.0,
        "nonsingular_exponent": 2 / (3 * k),
        "nonsingular_bound_shape": V ** (2 / (3 * k)),
    }


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    volumes: tuple[int, ...]
    counts: tuple[int, ...]
    excluded: tuple[BoxSpec, ...] = ()


def fit_log_counts(volumes: Sequence[int], counts: Sequence[int]) -> tuple[float, float]:
    """Least-squares line through (log V, log N)."""
    lv = np.log(np.asarray(volumes, dtype=float))
    ln = np.log(np.asarray(counts, dtype=float))
    slope, intercept = np.polyfit(lv, ln, 1)
    return float(slope), float(intercept)


def exponent_fit(F: FormSpec, boxes: Sequence[BoxSpec], counts: Sequence[int] | None = None) -> ExponentFit:
    """Empirical exponent of N(F; B) against V; compare with 2 / (3 degree)."""
    if F.degree < 2:
        raise ValueError("exponent fitting needs degree >= 2")
    vols = [b.V for b in boxes]
    if any(v2 <= v1 for v1, v2 in zip(vols, vols[1:])):
        raise ValueError("boxes must have strictly increasing volume")
    if counts is None:
        counts = [count_points(F, b) for b in boxes]
    used = [(b.V, n) for b, n in zip(boxes, counts) if n >= 1]
    excluded = tuple(b for b, n in zip(boxes, counts) if n < 1)
    if len(used) < 3:
        raise ValueError(f"need >= 3 boxes with nonzero counts, have {len(used)}")
    slope, intercept = fit_log_counts([v for v, _ in used], [n for _, n in used])
    return ExponentFit(slope, intercept, tuple(v for v, _ in used), tuple(n for _, n in used), excluded)


def dyadic_cubes(v_min: float, v_max: float) -> list[BoxSpec]:
    """Cubes (B, B, B) with B doubling from ceil(v_min^(1/3)), plus one at v_max."""
    b = math.ceil(round(v_min ** (1 / 3), 9))
    top = math.floor(round(v_max ** (1 / 3), 9))
    sides = []
    while b < top:
        sides.append(b)
        b *= 2
    sides.append(top)
    return [BoxSpec(s, s, s) for s in sides]
