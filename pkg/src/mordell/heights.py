"""Naive heights, the degree-6 height of x^3/y^2, and the canonical height.

Normalisation: the canonical height is

    hhat(P) = lim 4^-n * h_x(2^n P) / 2,

so that 6 * hhat(P) = h_{x^3/y^2}(P) + O(1).

``canonical_height`` evaluates this limit without building the huge
coordinates of 2^n P.  Writing x(2^k P) = A_k / D_k in lowest terms and
(A', D') for the unreduced doubling forms,

    log max(|A_{k+1}|, |D_{k+1}|) = 4 log max(|A_k|, |D_k|) + rho_k - log g_k,

where rho_k depends only on the real number x(2^k P) (tracked in floating
point on the projective line) and g_k = gcd(A', D') divides
2^8 3^6 d^4 (tracked p-adically for p | 6d).  Summing the geometric series
gives hhat to any tolerance down to about 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .curve import CurvePoint, MordellCurve, check_point, is_torsion
from .integer_lab import factorize

MIN_TOL = 1e-12

# Calibrated once (max |6 hhat - h_f| = 2.943 over |d| <= 200, 2.988 over
# |d| <= 10^4, search height 10^6), rounded up and frozen.
GAP_BOUND = 3.0


@dataclass(frozen=True)
class HeightValue:
    value: float
    tolerance: float = 0.0

    def __float__(self):
        return float(self.value)


def _log_max_abs(a: int, b: int) -> float:
    m = max(abs(a), abs(b))
    if m == 0:
        raise ValueError("log max(|a|, |b|) undefined at (0, 0)")
    return math.log(m)


def naive_height_x(P: CurvePoint) -> HeightValue:
    if P.is_identity:
        return HeightValue(0.0)
    return HeightValue(_log_max_abs(P.x.numerator, P.x.denominator))


def height_f(P: CurvePoint) -> HeightValue:
    """Height of f(P) = [x^3 / y^2 : 1]; f(O) = [1:1], f = [1:0] where y = 0."""
    if P.is_identity or P.y == 0:
        return HeightValue(0.0)
    q = P.x ** 3 / P.y ** 2
    if q == 0:
        return HeightValue(0.0)
    return HeightValue(_log_max_abs(q.numerator, q.denominator))


def _doubling_forms(d, a, b):
    """Homogeneous doubling of x on y^2 = x^3 + d: x(2P) = F(a, b) / G(a, b)."""
    a3 = a * a * a
    b3 = b * b * b
    return a * (a3 - 8 * d * b3), 4 * b * (a3 + d * b3)


def _valuation(n: int, p: int, cap: int) -> int:
    if n == 0:
        return cap
    v = 0
    while n % p == 0 and v < cap:
        n //= p
        v += 1
    return v


def _term_bound(d: int) -> float:
    # |rho_k| and log g_k are both bounded by explicit functions of d
    rho = math.log(1 + 8 * abs(d)) + math.log(16 * abs(d)) / 3 + 4.0
    log_res = 8 * math.log(2) + 6 * math.log(3) + 4 * math.log(abs(d))
    return rho + log_res


def _series_terms(d: int, A0: int, D0: int, n: int):
    """Yield (rho_k, log g_k) for k = 0..n-1 starting from x = A0/D0."""
    primes = sorted(set(factorize(6 * d)))
    res_val = {p: _valuation(2 ** 8 * 3 ** 6 * d ** 4, p, 10 ** 9) for p in primes}
    padic = {}
    for p in primes:
        prec = (n + 1) * res_val[p] + 2
        mod = p ** prec
        padic[p] = [A0 % mod, D0 % mod, prec]

    m = max(abs(A0), abs(D0))
    a = float(Fraction(A0, m))
    b = float(Fraction(D0, m))
    df = float(d)
    for _ in range(n):
        F, G = _doubling_forms(df, a, b)
        big = max(abs(F), abs(G))
        rho = math.log(big)
        a, b = F / big, G / big

        log_g = 0.0
        for p, state in padic.items():
            Ap, Dp, prec = state
            mod = p ** prec
            Fp, Gp = _doubling_forms(d, Ap, Dp)
            Fp %= mod
            Gp %= mod
            v = min(_valuation(Fp, p, prec), _valuation(Gp, p, prec))
            if v >= prec:
                raise ArithmeticError(f"{p}-adic precision exhausted")
            pv = p ** v
            state[0], state[1], state[2] = Fp // pv, Gp // pv, prec - v
            log_g += v * math.log(p)
        yield rho, log_g


def iterations_for(d: int, tol: float) -> int:
    """Series length whose truncated tail is below tol / 4."""
    c = _term_bound(d)
    n = 1
    while c / (6 * 4 ** n) >= tol / 4:
        n += 1
    return n + 2


def canonical_height(curve: MordellCurve, P: CurvePoint, tol: float = 1e-8) -> HeightValue:
    check_point(curve, P)
    if not tol > 0:
        raise ValueError("tol must be positive")
    tol = max(tol, MIN_TOL)
    if P.is_identity or is_torsion(curve, P):
        return HeightValue(0.0, tol)
    A0, D0 = P.x.numerator, P.x.denominator
    total = 0.0
    scale = 1.0
    for rho, log_g in _series_terms(curve.d, A0, D0, iterations_for(curve.d, tol)):
        scale /= 4.0
        total += scale * (rho - log_g)
    value = 0.5 * (_log_max_abs(A0, D0) + total)
    return HeightValue(max(value, 0.0), tol)


def predicted_log_heights(curve: MordellCurve, P: CurvePoint, n: int) -> list[float]:
    """Floating-point prediction of h_x(2^k P) for k = 0..n from the series."""
    check_point(curve, P)
    A0, D0 = P.x.numerator, P.x.denominator
    h = _log_max_abs(A0, D0)
    out = [h]
    for rho, log_g in _series_terms(curve.d, A0, D0, n):
        h = 4 * h + rho - log_g
        out.append(h)
    return out


def doubling_limit_height(curve: MordellCurve, P: CurvePoint, n: int) -> float:
    """Slow reference: h_x(2^n P) / (2 * 4^n) with exact rational doubling.

    Differs from the canonical height by at most ``_term_bound(d) / (6 * 4^n)``.
    """
    check_point(curve, P)
    if P.is_identity:
        return 0.0
    d = curve.d
    x = P.x
    for _ in range(n):
        den = 4 * (x ** 3 + d)
        if den == 0:
            return 0.0
        x = (x ** 4 - 8 * d * x) / den
    return _log_max_abs(x.numerator, x.denominator) / (2 * 4 ** n)


def height_gap(curve: MordellCurve, P: CurvePoint, tol: float = 1e-8) -> float:
    """6 * hhat(P) - h_f(P); bounded independently of P and d."""
    if P.is_identity:
        raise ValueError("height_gap is defined for non-identity points")
    return 6 * canonical_height(curve, P, tol).value - height_f(P).value
