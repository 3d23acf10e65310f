"""Exact arithmetic in cyclotomic fields Q(zeta), zeta = exp(i*pi/N).

Every trigonometric value at a rational multiple of pi lives in such a
field.  Elements are kept reduced modulo the minimal polynomial of zeta,
the cyclotomic polynomial Phi_{2N}, so equality and zero tests are exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath
import numpy as np

from .poly import PolyU, ScalarFieldError


class VerticalLineError(ZeroDivisionError):
    """tan requested at an odd multiple of pi/2."""


def factorint(n: int) -> dict[int, int]:
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


def _mobius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _int_polymul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_polydiv_exact(a: list[int], b: list[int]) -> list[int]:
    # b monic up to sign
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(a[k + len(b) - 1], lead)
        assert r == 0
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] -= c * y
    assert not any(a[: len(b) - 1])
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of Phi_n via the Mobius product."""
    num, den = [1], [1]
    for d in _divisors(n):
        mu = _mobius(n // d)
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _int_polymul(num, factor)
        elif mu == -1:
            den = _int_polymul(den, factor)
    return tuple(_int_polydiv_exact(num, den))


@lru_cache(maxsize=None)
def _field(N: int) -> tuple[tuple[int, ...], int]:
    phi = cyclotomic_poly(2 * N)
    return phi, len(phi) - 1


def _reduce(vec: list, N: int) -> tuple[Fraction, ...]:
    """Reduce a coefficient list in powers of zeta (any length) to canonical form."""
    phi, deg = _field(N)
    # zeta^N = -1: fold to length N first
    folded = [Fraction(0)] * N
    for k, c in enumerate(vec):
        if c:
            q, r = divmod(k, N)
            folded[r] += -c if q % 2 else c
    for k in range(N - 1, deg - 1, -1):
        c = folded[k]
        if c:
            base = k - deg
            for i in range(deg):
                folded[base + i] -= c * phi[i]
            folded[k] = Fraction(0)
    return tuple(folded[:deg])


class AlgebraicScalar:
    """Element of Q(zeta_{2N}) stored as coefficients in the power basis 1, zeta, ..., zeta^(phi-1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=(), reduced: bool = False):
        self.order = order
        if reduced:
            self.coeffs = tuple(coeffs)
        else:
            self.coeffs = _reduce([Fraction(c) for c in coeffs], order)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "AlgebraicScalar":
        k %= 2 * N
        vec = [0] * (k + 1)
        vec[k] = 1
        return cls(N, vec)

    @classmethod
    def from_rational(cls, N: int, r) -> "AlgebraicScalar":
        return cls(N, [Fraction(r)])

    @classmethod
    def from_exponents(cls, N: int, terms: dict[int, object]) -> "AlgebraicScalar":
        vec: dict[int, Fraction] = {}
        for k, c in terms.items():
            k %= 2 * N
            vec[k] = vec.get(k, Fraction(0)) + Fraction(c)
        dense = [Fraction(0)] * (max(vec, default=0) + 1)
        for k, c in vec.items():
            dense[k] = c
        return cls(N, dense)

    @property
    def degree(self) -> int:
        return _field(self.order)[1]

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "AlgebraicScalar":
        if isinstance(other, AlgebraicScalar):
            if other.order != self.order:
                raise ScalarFieldError(f"cyclotomic orders {self.order} and {other.order} differ; lift first")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicScalar.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicScalar(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)], reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicScalar(self.order, [-a for a in self.coeffs], reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicScalar(self.order, [a * other for a in self.coeffs], reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return AlgebraicScalar(self.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        phi, _ = _field(self.order)
        # extended Euclid: s*a + t*phi = g (constant)
        r0, r1 = PolyU(phi, "z"), PolyU(self.coeffs, "z")
        s0, s1 = PolyU([], "z"), PolyU([1], "z")
        while r1.degree > 0:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        return AlgebraicScalar(self.order, (s1 / r1.lc).coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = AlgebraicScalar.from_rational(self.order, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conjugate(self) -> "AlgebraicScalar":
        # zeta -> zeta^-1 = zeta^(2N-1)
        N = self.order
        vec = [Fraction(0)] * (2 * N)
        for k, c in enumerate(self.coeffs):
            vec[(-k) % (2 * N)] += c
        return AlgebraicScalar(N, vec)

    def lift(self, M: int) -> "AlgebraicScalar":
        """Embed into Q(zeta_{2M}) with M a multiple of the current order."""
        if M % self.order:
            raise ScalarFieldError(f"cannot lift order {self.order} into {M}")
        step = M // self.order
        vec = [Fraction(0)] * (step * len(self.coeffs) + 1)
        for k, c in enumerate(self.coeffs):
            vec[k * step] = c
        return AlgebraicScalar(M, vec)

    # -- predicates and embeddings ----------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_rational() == other
        if isinstance(other, AlgebraicScalar):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def to_complex(self, prec: int = 256) -> mpmath.mpc:
        with mpmath.workprec(prec + 16):
            z = mpmath.expjpi(mpmath.mpf(1) / self.order)
            acc = mpmath.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
            return +acc

    def __complex__(self) -> complex:
        return complex(self.to_complex(64))

    def __float__(self) -> float:
        return float(self.to_complex(64).real)

    def __repr__(self) -> str:
        return f"AlgebraicScalar(N={self.order}, ~{complex(self):.6g})"


def _trig_order(k: int, N: int, need_i: bool) -> tuple[int, int]:
    # sin and tan need i = zeta^(N/2), so N must be even
    if need_i and N % 2:
        return 2 * k, 2 * N
    return k, N


def trig_scalar(kind: str, k: int, N: int) -> AlgebraicScalar:
    """cos, sin or tan of the angle k*pi/N as an exact cyclotomic element.

    sin and tan live in Q(zeta_{2M}) with M = lcm(N, 2); cos uses M = N.
    """
    if kind not in ("cos", "sin", "tan"):
        raise ValueError(f"unknown trig kind {kind!r}")
    k, M = _trig_order(k, N, kind != "cos")
    zp, zm = AlgebraicScalar.zeta(M, k), AlgebraicScalar.zeta(M, -k)
    if kind == "cos":
        return (zp + zm) * Fraction(1, 2)
    two_i = AlgebraicScalar.zeta(M, M // 2) * 2
    sin = (zp - zm) / two_i
    if kind == "sin":
        return sin
    cos = (zp + zm) * Fraction(1, 2)
    if cos.is_zero():
        raise VerticalLineError(f"tan({k}*pi/{M}) is infinite")
    return sin / cos


def reduce_rows(rows: np.ndarray, N: int) -> np.ndarray:
    """Reduce integer element vectors of Z[x]/(x^N + 1) modulo Phi_{2N}.

    ``rows`` has shape (m, N); the result has shape (m, phi(2N)) and stays
    integral because Phi_{2N} is monic.
    """
    phi, deg = _field(N)
    out = np.array(rows, dtype=object, copy=True)
    tail = np.array(phi[:deg], dtype=object)
    for k in range(N - 1, deg - 1, -1):
        c = out[:, k]
        if np.any(c != 0):
            out[:, k - deg : k] -= np.outer(c, tail)
            out[:, k] = 0
    return out[:, :deg]


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
