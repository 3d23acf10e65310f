"""Exact Belyi polynomials and their critical profiles.

Two normalizations are in use.  The symmetric one has critical values
-1 (black) and +1 (white); the unit one has 0 and 1.  They are related by
G = (B + 1)/2.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ..exactmath import PolyU, chebyshev_T, jacobi_shifted, poly_gcd, squarefree_decomposition
from .signature import BelyiSignature, signature_G, signature_two_vertex

UNIT, SYMMETRIC = "unit", "symmetric"
CRITICAL_VALUES = {UNIT: (Fraction(0), Fraction(1)), SYMMETRIC: (Fraction(-1), Fraction(1))}


class NotBelyiError(ValueError):
    """A derivative root has a critical value outside the convention's pair."""


@dataclass(frozen=True)
class BelyiPoly:
    poly: PolyU
    convention: str = UNIT
    signature: BelyiSignature | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.convention not in CRITICAL_VALUES:
            raise ValueError(f"unknown convention {self.convention!r}")

    @property
    def degree(self) -> int:
        return self.poly.degree

    def to_unit(self) -> "BelyiPoly":
        if self.convention == UNIT:
            return self
        return BelyiPoly((self.poly + 1) / 2, UNIT, self.signature)

    def to_symmetric(self) -> "BelyiPoly":
        if self.convention == SYMMETRIC:
            return self
        return BelyiPoly(self.poly * 2 - 1, SYMMETRIC, self.signature)

    def convert(self) -> "BelyiPoly":
        return self.to_symmetric() if self.convention == UNIT else self.to_unit()

    @property
    def black_value(self) -> Fraction:
        return CRITICAL_VALUES[self.convention][0]

    @property
    def white_value(self) -> Fraction:
        return CRITICAL_VALUES[self.convention][1]


def jacobi_G(a: int, b: int, c: int) -> BelyiPoly:
    """w^a * P_{b-1}^{(a/c, -b)}(1 - 2w)^c, values 0 and 1."""
    if min(a, b, c) < 1:
        raise ValueError("a, b, c must be positive")
    q = jacobi_shifted(b - 1, Fraction(a, c), -b)
    return BelyiPoly(PolyU.monomial(a) * q**c, UNIT, signature_G(a, b, c))


def two_vertex_exact(nu: int) -> BelyiPoly:
    """B = 1 - 2 I(w)/I(1), I(w) = int_0^w t^nu (t-1)^nu dt."""
    if nu < 1:
        raise ValueError("nu must be at least 1")
    I = (PolyU.monomial(1) * PolyU([-1, 1])) ** nu
    I = I.integrate()
    B = PolyU([1]) - I * (Fraction(2) / I(Fraction(1)))
    return BelyiPoly(B, SYMMETRIC, signature_two_vertex(nu))


def chebyshev_belyi(d: int) -> BelyiPoly:
    return BelyiPoly(chebyshev_T(d), SYMMETRIC)


@dataclass
class CriticalProfile:
    """Critical points grouped by (value, multiplicity).

    ``points`` maps (value, mult) to the exact factor of P' whose roots are
    those points.  ``w0`` and ``wu`` are rational locations of the white
    critical point and of the extra point, when they are rational.
    """

    degree: int
    convention: str
    points: dict[tuple[Fraction, int], PolyU]
    w0: Fraction | None = None
    wu: Fraction | None = None

    @property
    def entries(self) -> list[tuple[Fraction, int, int]]:
        return sorted((v, m, f.degree) for (v, m), f in self.points.items())

    def count(self, value, mult: int) -> int:
        f = self.points.get((Fraction(value), mult))
        return f.degree if f is not None else 0

    def counts_by_value(self) -> dict[Fraction, Counter]:
        out: dict[Fraction, Counter] = {}
        for v, m, k in self.entries:
            out.setdefault(v, Counter())[m] += k
        return out

    def multiset(self) -> Counter:
        """Counter over (color, multiplicity), comparable to a tree's."""
        black = CRITICAL_VALUES[self.convention][0]
        out = Counter()
        for v, m, k in self.entries:
            out[("black" if v == black else "white", m)] += k
        return out

    def total_multiplicity(self) -> int:
        return sum(m * k for _, m, k in self.entries)


def _rational_root(f: PolyU) -> Fraction | None:
    if f.degree != 1:
        return None
    return -f[0] / f[1]


def critical_profile_poly(P: BelyiPoly) -> CriticalProfile:
    p = P.poly
    if p.degree < 1:
        raise ValueError("constant polynomial has no critical profile")
    _, factors = squarefree_decomposition(p.derive())
    points: dict[tuple[Fraction, int], PolyU] = {}
    for mult, f in factors:
        explained = 0
        for zeta in CRITICAL_VALUES[P.convention]:
            g = poly_gcd(f, p - zeta)
            if g.degree > 0:
                points[(zeta, mult)] = g
                explained += g.degree
        if explained != f.degree:
            raise NotBelyiError(
                f"{f.degree - explained} critical point(s) of multiplicity {mult} "
                f"have values outside {CRITICAL_VALUES[P.convention]}"
            )
    prof = CriticalProfile(p.degree, P.convention, points)
    assert prof.total_multiplicity() == p.degree - 1

    whites = [(m, f) for (v, m), f in points.items() if v == P.white_value]
    if len(whites) == 1 and whites[0][1].degree == 1:
        prof.w0 = _rational_root(whites[0][1])
    if P.signature is not None and P.signature.eps >= 1:
        eps = P.signature.eps
        f = points.get((P.black_value, eps))
        if f is not None and f.degree == 1:
            prof.wu = _rational_root(f)
    return prof


def profile_matches_signature(prof: CriticalProfile, sig: BelyiSignature) -> bool:
    """(s-1) black points of multiplicity nu, w0 white of multiplicity nu, u of multiplicity eps."""
    from .tree import expected_multiset

    return prof.multiset() == expected_multiset(sig)
