"""The deltoid line family and the rational polynomials J_d.

For tau = 0 every angle in the line family is an integer multiple of
pi/(6d), so all coefficients live in Q(zeta) with zeta = exp(i*pi/(6d)).
Multiplying each line by 2*cos(theta) clears the tangent:

    2 cos(t) * L = 2y cos(t) - 2x sin(t) + 2 sin(3t),

and every coefficient on the right is a sum of two signed powers of zeta.
The product over all lines is then expanded in the group ring
Z[zeta]/(zeta^N + 1) with vectorized integer arithmetic, reduced modulo the
cyclotomic polynomial once at the end, and divided by prod 2*cos(theta).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, lcm

import numpy as np

from .exactmath import AlgebraicScalar, PolyU, PolyUV, chebyshev_T, trig_scalar
from .exactmath.cyclotomic import VerticalLineError, reduce_rows


class RationalityError(ArithmeticError):
    """A coefficient of J_d failed to be rational after y <- y/sqrt(3)."""


def mu_range(d: int) -> range:
    return range(-((d - 2) // 2), (d + 1) // 2 + 1)


def field_order(d: int, tau_over_pi: Fraction = Fraction(0)) -> int:
    return lcm(6 * d, Fraction(tau_over_pi).denominator * 6 * d, 6)


def _angle_index(d: int, mu: int, tau_over_pi: Fraction, N: int) -> int:
    # theta = pi/d * ((6mu-1)/6 - tau/pi) = k*pi/N
    k = Fraction(N, d) * (Fraction(6 * mu - 1, 6) - Fraction(tau_over_pi))
    assert k.denominator == 1
    return int(k)


def _is_exceptional_tau(d: int, tau_over_pi: Fraction) -> int | None:
    # tau = (6m - 3d - 1) pi / 6  <=>  m = (6 tau/pi + 3d + 1) / 6
    m = (6 * Fraction(tau_over_pi) + 3 * d + 1) / 6
    return int(m) if m.denominator == 1 else None


def lambda_norm(d: int, tau_over_pi: Fraction = Fraction(0)) -> AlgebraicScalar:
    """Normalizing constant lambda_{d,tau} in Q(zeta_{2N})."""
    N = field_order(d, tau_over_pi)
    m = _is_exceptional_tau(d, tau_over_pi)
    if m is not None:
        return AlgebraicScalar.from_rational(N, (-1) ** m * 2 * d)
    # 2 cos(tau + d pi/2 + 2 pi/3)
    k = Fraction(N) * (Fraction(tau_over_pi) + Fraction(d, 2) + Fraction(2, 3))
    assert k.denominator == 1
    return trig_scalar("cos", int(k), N) * 2


@dataclass(frozen=True)
class LinearForm:
    """a*x + b*y + c with exact cyclotomic coefficients."""

    a: AlgebraicScalar
    b: AlgebraicScalar
    c: AlgebraicScalar
    d: int
    mu: int
    tau_over_pi: Fraction = Fraction(0)
    vertical: bool = False

    def __call__(self, x, y):
        return self.a * x + self.b * y + self.c

    def to_complex(self, prec: int = 256):
        return tuple(s.to_complex(prec) for s in (self.a, self.b, self.c))


def line_form(d: int, mu: int, tau_over_pi: Fraction = Fraction(0)) -> LinearForm:
    if mu not in mu_range(d):
        raise ValueError(f"mu={mu} outside {mu_range(d)} for d={d}")
    N = field_order(d, tau_over_pi)
    k = _angle_index(d, mu, tau_over_pi, N)
    one = AlgebraicScalar.from_rational(N, 1)
    try:
        tan = trig_scalar("tan", k, N)
    except VerticalLineError:
        # the line parallel to the y-axis is read as x + 1 = 0
        zero = AlgebraicScalar.from_rational(N, 0)
        return LinearForm(one, zero, one, d, mu, Fraction(tau_over_pi), vertical=True)
    cos2, sin2 = trig_scalar("cos", 2 * k, N), trig_scalar("sin", 2 * k, N)
    return LinearForm(-tan, one, cos2 * tan + sin2, d, mu, Fraction(tau_over_pi))


# -- the fast exact expansion -----------------------------------------------

def _mono(e: int, N: int) -> tuple[int, int]:
    """zeta^e in Z[zeta]/(zeta^N + 1) as (exponent in [0, N), sign)."""
    e %= 2 * N
    return (e, 1) if e < N else (e - N, -1)


def _shift(arr: np.ndarray, e: int, sign: int) -> np.ndarray:
    """Multiply every element vector (last axis) by sign * zeta^e, negacyclically."""
    N = arr.shape[-1]
    if e == 0:
        return arr * sign
    out = np.concatenate((-arr[..., N - e :], arr[..., : N - e]), axis=-1)
    return out * sign


def _mul_sparse(arr: np.ndarray, monos: list[tuple[int, int]]) -> np.ndarray:
    acc = None
    for e, s in monos:
        t = _shift(arr, e, s)
        acc = t if acc is None else acc + t
    return acc


def _cleared_factor(k: int, N: int) -> tuple[list, list, list]:
    """Sparse zeta-monomials of (A, B, C) with 2cos(t)L = A*y + B*x + C, t = k*pi/N."""
    h = N // 2  # i = zeta^(N/2)
    A = [_mono(k, N), _mono(-k, N)]
    # -2 sin t = i (zeta^k - zeta^-k)
    B = [_mono(h + k, N), (_mono(h - k, N)[0], -_mono(h - k, N)[1])]
    # 2 sin 3t = -i (zeta^3k - zeta^-3k)
    C = [(_mono(h + 3 * k, N)[0], -_mono(h + 3 * k, N)[1]), _mono(h - 3 * k, N)]
    return A, B, C


def _expand_cleared_product(d: int) -> np.ndarray:
    """prod over mu of 2cos(theta_mu) L_mu, as an array [i, j, zeta-coefficient]."""
    N = 6 * d
    dtype = np.int64 if d <= 24 else object  # 6^d bounds the L1 norm
    P = np.zeros((d + 1, d + 1, N), dtype=dtype)
    P[0, 0, 0] = 1
    for mu in mu_range(d):
        A, B, C = _cleared_factor(6 * mu - 1, N)
        new = _mul_sparse(P, C)
        new[:, 1:] += _mul_sparse(P[:, :-1], A)
        new[1:, :] += _mul_sparse(P[:-1, :], B)
        P = new
    return P


def _vec_to_scalar(vec, N: int) -> AlgebraicScalar:
    return AlgebraicScalar(N, [Fraction(int(c)) for c in vec], reduced=True)


@lru_cache(maxsize=None)
def _rational_J(d: int) -> tuple[dict, AlgebraicScalar]:
    N = 6 * d
    P = _expand_cleared_product(d)
    lam = [_mono(d * (3 * d + 4), N), _mono(-d * (3 * d + 4), N)]
    sqrt3 = [_mono(d, N), _mono(-d, N)]
    P = _mul_sparse(P, lam)
    P[:, 1::2] = _mul_sparse(P[:, 1::2], sqrt3)
    idx = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    rows = np.array([P[i, j] for i, j in idx], dtype=object)
    red = reduce_rows(rows, N)

    cvec = np.zeros((1, N), dtype=object)
    cvec[0, 0] = 1
    for mu in mu_range(d):
        k = 6 * mu - 1
        cvec = _mul_sparse(cvec, [_mono(k, N), _mono(-k, N)])
    C = reduce_rows(cvec, N)[0]
    piv = next(t for t, c in enumerate(C) if c != 0)

    terms: dict[tuple[int, int], Fraction] = {}
    for (i, j), E in zip(idx, red):
        if not any(E):
            continue
        r = Fraction(int(E[piv]), int(C[piv]))
        if any(Fraction(int(e)) != r * int(c) for e, c in zip(E, C)):
            raise RationalityError(f"J_{d}: coefficient of x^{i} y^{j} is not rational")
        terms[(i, j)] = r / 3 ** ((j + 1) // 2)
    return terms, _vec_to_scalar(C, N)


def build_J(d: int) -> "DeltoidFamily":
    if d < 3:
        raise ValueError("d must be at least 3")
    return DeltoidFamily(d)


@dataclass(frozen=True)
class DeltoidFamily:
    d: int
    tau_over_pi: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if self.tau_over_pi != 0:
            raise NotImplementedError("only tau = 0 has a rational J_d")
        # at tau = 0 the exceptional lambda branch needs 6m = 3d + 1: impossible
        assert _is_exceptional_tau(self.d, Fraction(0)) is None

    @property
    def mu_range(self) -> range:
        return mu_range(self.d)

    @cached_property
    def lam(self) -> AlgebraicScalar:
        return lambda_norm(self.d)

    @cached_property
    def lines(self) -> list[LinearForm]:
        out = [line_form(self.d, mu) for mu in self.mu_range]
        assert not any(L.vertical for L in out)
        return out

    @cached_property
    def J(self) -> PolyUV:
        terms, _ = _rational_J(self.d)
        return PolyUV(terms, ("x", "y"))

    @cached_property
    def jhat(self) -> PolyUV:
        """J-hat_{d,0} over Q(zeta): J_d(x, sqrt(3) y)."""
        N = 6 * self.d
        sqrt3 = trig_scalar("cos", self.d, N) * 2
        out = {}
        for (i, j), c in self.J.terms.items():
            out[(i, j)] = sqrt3 ** j * c
        return PolyUV(out, ("x", "y"))

    def line_points(self) -> list[tuple[tuple[int, int], tuple]]:
        """Pairwise intersections of the lines, in (x, y) coordinates of J_d.

        Returned as exact cyclotomic pairs; the y coordinate is scaled by
        sqrt(3) so the points are zeros of J_d rather than of J-hat.
        """
        N = 6 * self.d
        sqrt3 = trig_scalar("cos", self.d, N) * 2
        pts = []
        Ls = self.lines
        for a in range(len(Ls)):
            for b in range(a + 1, len(Ls)):
                p, q = Ls[a], Ls[b]
                det = p.a * q.b - p.b * q.a
                x = (p.b * q.c - q.b * p.c) / det
                y = (q.a * p.c - p.a * q.c) / det
                pts.append(((a, b), (x, y * sqrt3)))
        return pts


def chebyshev_axis_difference(d: int) -> PolyU:
    """J_d(z, 0) - (1 - 2 T_d((z-1)/2)); zero iff the axis identity holds."""
    axis = build_J(d).J.substitute("y", 0).with_var("z")
    target = PolyU([1], "z") - chebyshev_T(d, "z").compose_affine(Fraction(1, 2), Fraction(-1, 2)) * 2
    return axis - target


def verify_chebyshev_axis(d: int, J: PolyUV | None = None) -> bool:
    if J is None:
        return chebyshev_axis_difference(d).is_zero()
    axis = J.substitute("y", 0).with_var("z")
    target = PolyU([1], "z") - chebyshev_T(d, "z").compose_affine(Fraction(1, 2), Fraction(-1, 2)) * 2
    return (axis - target).is_zero()


def census_closed_form(d: int) -> dict[int, int]:
    """Critical-value census of J_d: counts at values 0, 8, -1."""
    alpha = d % 3
    up = (alpha + 1) // 2  # ceil(alpha/2)
    return {
        0: comb(d, 2),
        8: (d * d - 3 * d + 2 * up) // 6,
        -1: (d * d - up) // 3 - d + 1,
    }


# -- critical census ----------------------------------------------------------

CENSUS_TARGETS = (Fraction(0), Fraction(8), Fraction(-1))


class CensusMismatchError(AssertionError):
    pass


@dataclass
class CriticalCensus:
    d: int
    counts: dict[Fraction, int]
    points: dict[Fraction, list]
    expected: dict[int, int]
    strategy: str = ""
    morse: dict[Fraction, bool] = field(default_factory=dict)
    all_real: dict[Fraction, bool] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_int_keys(self) -> dict[int, int]:
        return {int(k): v for k, v in self.counts.items()}


def _match_exact_zero_points(fam: DeltoidFamily, pts: list, ctx) -> None:
    exact = [(complex(x.to_complex(ctx.bits)), complex(y.to_complex(ctx.bits))) for _, (x, y) in fam.line_points()]
    rad = max(ctx.cluster_radius, 1e-12)
    for i in range(len(exact)):
        for j in range(i + 1, len(exact)):
            if abs(exact[i][0] - exact[j][0]) + abs(exact[i][1] - exact[j][1]) <= rad:
                raise CensusMismatchError(f"d={fam.d}: line intersections {i} and {j} coincide")
    used = set()
    for p in pts:
        px, py = complex(p.x), complex(p.y)
        hit = [k for k, (ex, ey) in enumerate(exact) if abs(ex - px) + abs(ey - py) <= rad]
        if len(hit) != 1 or hit[0] in used:
            raise CensusMismatchError(f"d={fam.d}: value-0 point ({px}, {py}) has no unique line crossing")
        used.add(hit[0])
    if len(used) != len(exact):
        raise CensusMismatchError(f"d={fam.d}: {len(exact) - len(used)} line crossings missing from the numeric set")


@lru_cache(maxsize=8)
def _census_cached(d: int, bits: int) -> CriticalCensus:
    from .solvekit import PrecisionContext, assign_values, solve_gradient_2d

    ctx = PrecisionContext(bits)
    fam = build_J(d)
    pts = solve_gradient_2d(fam.J, ctx)
    if pts.rejected:
        raise CensusMismatchError(f"d={d}: {len(pts.rejected)} gradient candidates did not converge")
    groups = assign_values(pts, CENSUS_TARGETS, ctx)
    counts = {t: len(v) for t, v in groups.items()}
    expected = census_closed_form(d)
    if {int(k): v for k, v in counts.items()} != expected:
        raise CensusMismatchError(f"d={d}: census {counts} differs from closed form {expected}")
    _match_exact_zero_points(fam, groups[Fraction(0)], ctx)
    return CriticalCensus(
        d,
        counts,
        groups,
        expected,
        pts.strategy,
        morse={t: all(p.is_morse(ctx) for p in v) for t, v in groups.items()},
        all_real={t: all(p.real for p in v) for t, v in groups.items()},
    )


def critical_profile_J(d: int, ctx=None) -> CriticalCensus:
    """Critical points of J_d sorted by value 0, 8, -1, checked against the closed forms."""
    from .solvekit import PrecisionContext

    ctx = ctx or PrecisionContext()
    return _census_cached(d, ctx.bits)
