"""Exact integer helpers: gcds, square parts, sixth-power-free tests and sieve."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

import numpy as np


def gcd(*values: int) -> int:
    """Non-negative gcd with gcd(0, n) = |n|."""
    return math.gcd(*values)


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of |n| (desk-scale sizes only)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_cube(n: int) -> bool:
    return integer_cbrt(n) is not None


def integer_cbrt(n: int) -> int | None:
    """Exact integer cube root of n, or None if n is not a perfect cube."""
    m = abs(n)
    if m < 2:
        r = m
    else:
        # integer Newton iteration from above converges to floor(m^(1/3))
        r = 1 << -(-m.bit_length() // 3)
        while True:
            s = (2 * r + m // (r * r)) // 3
            if s >= r:
                break
            r = s
    if r ** 3 != m:
        return None
    return r if n >= 0 else -r


@dataclass(frozen=True)
class SquareDecomposition:
    """n = sign * square_part**2 * squarefree_part."""

    sign: int
    square_part: int
    squarefree_part: int

    def value(self) -> int:
        return self.sign * self.square_part ** 2 * self.squarefree_part


def square_part(d: int) -> SquareDecomposition:
    if d == 0:
        raise ValueError("square_part is undefined for 0")
    sq = 1
    free = 1
    for p, e in factorize(d).items():
        sq *= p ** (e // 2)
        if e % 2:
            free *= p
    return SquareDecomposition(1 if d > 0 else -1, sq, free)


def is_sixth_power_free(d: int) -> bool:
    if d == 0:
        raise ValueError("sixth-power-freeness is undefined for 0")
    n = abs(d)
    p = 2
    while p ** 6 <= n:
        if n % p ** 6 == 0:
            return False
        p += 1 if p == 2 else 2
    return True


@dataclass(frozen=True)
class SixthPowerFreeSet:
    """All sixth-power-free nonzero d with |d| <= bound, sorted ascending."""

    bound: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, d: object) -> bool:
        if not isinstance(d, int) or d == 0 or abs(d) > self.bound:
            return False
        return is_sixth_power_free(d)


def _small_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).tolist()


def sixth_power_free_mask(X: int) -> np.ndarray:
    """Boolean array m with m[n] true iff n >= 1 is sixth-power free (m[0] false)."""
    if X < 1:
        raise ValueError("X must be >= 1")
    mask = np.ones(X + 1, dtype=bool)
    mask[0] = False
    root = 1
    while (root + 1) ** 6 <= X:
        root += 1
    for p in _small_primes(root):
        mask[p ** 6 :: p ** 6] = False
    return mask


def sixth_power_free_sieve(X: int) -> SixthPowerFreeSet:
    positives = np.flatnonzero(sixth_power_free_mask(X)).tolist()
    members = [-n for n in reversed(positives)] + positives
    return SixthPowerFreeSet(X, tuple(members))
