"""Generalized binomials and the classical orthogonal polynomials we need exactly."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .poly import PolyU


def gen_binomial(r, k: int) -> Fraction:
    """r (r-1) ... (r-k+1) / k! for rational r, as an explicit falling product."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    r = Fraction(r)
    num = Fraction(1)
    for i in range(k):
        num *= r - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    return num / den


@lru_cache(maxsize=None)
def chebyshev_T(d: int, var: str = "w") -> PolyU:
    """T_d via T_{k+1} = 2 w T_k - T_{k-1}."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    t0, t1 = PolyU([1], var), PolyU([0, 1], var)
    if d == 0:
        return t0
    two_w = PolyU([0, 2], var)
    for _ in range(d - 1):
        t0, t1 = t1, two_w * t1 - t0
    return t1


def jacobi_shifted(n: int, alpha, beta, var: str = "w") -> PolyU:
    """P_n^{(alpha, beta)}(1 - 2w) as an exact polynomial in w.

    Uses the binomial series
    sum_s C(n+alpha, n-s) C(n+beta, s) (-w)^s (1-w)^(n-s),
    which is valid for arbitrary rational alpha, beta (including the
    negative-integer beta of the Belyi constructions).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    alpha, beta = Fraction(alpha), Fraction(beta)
    minus_w = PolyU([0, -1], var)
    one_minus_w = PolyU([1, -1], var)
    total = PolyU([], var)
    for s in range(n + 1):
        c = gen_binomial(n + alpha, n - s) * gen_binomial(n + beta, s)
        if c:
            total = total + (minus_w ** s) * (one_minus_w ** (n - s)) * c
    return total
