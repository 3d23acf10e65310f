"""Multiprecision root finding and bivariate critical-point solving.

Exact structure (multiplicities, squarefreeness, eliminants) is decided over
Q; only simple roots of certified-squarefree polynomials are located
numerically.  Numerics use gmpy2 (MPFR/MPC) for speed.
"""
from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpc, mpfr, mpq

from .exactmath import PolyU, PolyUV, is_squarefree_certified, resultant, squarefree_profile

log = logging.getLogger(__name__)

DEFAULT_BITS = 256


class NonConvergenceError(RuntimeError):
    pass


class PositiveDimensionalError(ValueError):
    """The gradient locus contains a curve (eliminant vanishes identically)."""


class BucketError(ValueError):
    pass


def _env_bits() -> int:
    raw = os.environ.get("FORGE_PRECISION_BITS")
    return int(raw) if raw else DEFAULT_BITS


@dataclass(frozen=True)
class PrecisionContext:
    bits: int = field(default_factory=_env_bits)

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError("precision below 64 bits is not supported")

    @property
    def cluster_radius(self) -> float:
        return 2.0 ** (-self.bits / 4)

    @property
    def value_tolerance(self) -> float:
        return 2.0 ** (-self.bits / 4)

    @property
    def residual_bound(self) -> float:
        return 2.0 ** (-self.bits / 2)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.bits)


def _ctx(prec: int):
    return gmpy2.context(gmpy2.get_context(), precision=prec)


def _to_mpc(c) -> mpc:
    if isinstance(c, Fraction):
        return mpc(mpfr(mpq(c.numerator, c.denominator)))
    if isinstance(c, int):
        return mpc(mpfr(c))
    return mpc(c)


def to_mpmath(z):
    """Exact conversion of a gmpy2 mpfr/mpc to mpmath."""
    import mpmath

    def conv(r):
        if not gmpy2.is_finite(r):
            return mpmath.mpf(float(r))
        man, exp = r.as_mantissa_exp()
        return mpmath.mpf((int(man), int(exp)))

    # no re-wrapping: gmpy2 constructors round to the ambient context
    if isinstance(z, type(mpfr(0))):
        return mpmath.mpc(conv(z), 0)
    return mpmath.mpc(conv(z.real), conv(z.imag))


def canonical_key(z) -> tuple:
    return (float(z.real), float(z.imag))


# -- Aberth-Ehrlich ---------------------------------------------------------

def _horner(coeffs: Sequence[mpc], z: mpc) -> tuple[mpc, mpc, mpfr]:
    """(p(z), p'(z), sum |c_k| |z|^k)."""
    p = coeffs[-1]
    dp = mpc(0)
    az = abs(z)
    bound = abs(p)
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
        bound = bound * az + abs(c)
    return p, dp, bound


def _initial_guesses(coeffs: Sequence[mpc]) -> list[mpc]:
    """Circles with radii from the upper hull of the Newton polygon."""
    n = len(coeffs) - 1
    pts = []
    for k, c in enumerate(coeffs):
        a = abs(c)
        if a != 0:
            pts.append((k, float(gmpy2.log2(a))))
    hull: list[tuple[int, float]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    out: list[mpc] = []
    sigma = 0.7
    for (i, li), (j, lj) in zip(hull, hull[1:]):
        m = j - i
        r = 2.0 ** ((li - lj) / m)
        for t in range(m):
            ang = 2 * math.pi * t / m + 2 * math.pi * i / n + sigma
            out.append(mpc(mpfr(r * math.cos(ang)), mpfr(r * math.sin(ang))))
    # zero roots (low coefficients vanishing) are handled by the caller
    return out


def aberth(coeffs: Sequence, prec: int, start: Sequence | None = None, maxiter: int = 400) -> list[mpc]:
    """Simultaneous approximation of all roots of sum coeffs[k] z^k.

    Iterates in Gauss-Seidel fashion until each root's residual is at the
    rounding-noise level of ``prec`` bits.  Coefficients may be complex.
    """
    with _ctx(prec):
        cs = [_to_mpc(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        n = len(cs) - 1
        if n <= 0:
            return []
        nz = 0
        while cs[nz] == 0:
            nz += 1
        zeros = [mpc(0)] * nz
        cs = cs[nz:]
        n -= nz
        if n == 0:
            return zeros
        lead = cs[-1]
        cs = [c / lead for c in cs]
        if n == 1:
            return zeros + [-cs[0]]
        z = [_to_mpc(s) for s in start] if start is not None and len(start) == n else _initial_guesses(cs)
        eps = mpfr(2) ** (-prec) * 4 * (n + 1)
        done = [False] * n
        for _ in range(maxiter):
            active = 0
            for i in range(n):
                if done[i]:
                    continue
                p, dp, bound = _horner(cs, z[i])
                if abs(p) <= eps * bound:
                    done[i] = True
                    continue
                active += 1
                if dp == 0:
                    z[i] += mpc(mpfr(2) ** (-prec // 4))
                    continue
                ratio = p / dp
                s = mpc(0)
                zi = z[i]
                for j in range(n):
                    if j != i:
                        diff = zi - z[j]
                        if diff != 0:
                            s += 1 / diff
                w = ratio / (1 - ratio * s)
                z[i] = zi - w
                if abs(w) <= mpfr(2) ** (-prec + 8) * max(abs(zi), mpfr(1)):
                    done[i] = True
            if active == 0:
                break
        else:
            raise NonConvergenceError(f"Aberth did not converge for degree {n} at {prec} bits")
        return zeros + z


def inclusion_radii(coeffs: Sequence, roots: Sequence[mpc], prec: int) -> list[mpfr]:
    """Radii r_i such that each disc |z - roots[i]| <= r_i contains a root.

    Uses the Newton-type bound n * |p(z)| / |p'(z)|.
    """
    with _ctx(prec):
        cs = [_to_mpc(c) for c in coeffs]
        n = len(cs) - 1
        out = []
        for z in roots:
            p, dp, _ = _horner(cs, z)
            if p == 0:
                out.append(mpfr(0))
            elif dp == 0:
                out.append(mpfr("inf"))
            else:
                out.append(n * abs(p) / abs(dp))
        return out


def _discs_isolated(roots: Sequence[mpc], radii: Sequence[mpfr]) -> bool:
    items = sorted(zip(roots, radii), key=lambda t: float(t[0].real))
    fl = [(complex(z), float(r)) for z, r in items]
    for i in range(len(fl)):
        zi, ri = fl[i]
        for j in range(i + 1, len(fl)):
            zj, rj = fl[j]
            if zj.real - zi.real > ri + rj:
                break
            if abs(zi - zj) <= ri + rj:
                return False
    return True


def simple_roots(P: PolyU, ctx: PrecisionContext, max_prec: int | None = None) -> list[mpc]:
    """All roots of a squarefree rational polynomial, certified isolated.

    Working precision doubles until every Newton inclusion disc has radius
    below 2^(-bits/2) * max(1, |z|) and the discs are pairwise disjoint.
    """
    if P.degree <= 0:
        return []
    max_prec = max_prec or 32 * ctx.bits
    prec = ctx.bits + 32
    start = None
    while True:
        roots = aberth(P.coeffs, prec, start)
        radii = inclusion_radii(P.coeffs, roots, prec)
        tight = all(r <= ctx.residual_bound * max(1.0, float(abs(z))) for z, r in zip(roots, radii))
        if tight and _discs_isolated(roots, radii):
            return roots
        if prec >= max_prec:
            raise NonConvergenceError(f"roots of degree-{P.degree} factor not certified by {prec} bits")
        log.debug("raising root precision %d -> %d (degree %d)", prec, 2 * prec, P.degree)
        prec *= 2
        start = roots


def poly_residual(P: PolyU, z: mpc, prec: int) -> mpfr:
    """|P(z)| / sum |c_k| |z|^k."""
    with _ctx(prec):
        cs = [_to_mpc(c) for c in P.coeffs]
        p, _, bound = _horner(cs, _to_mpc(z))
        return abs(p) / bound if bound else abs(p)


def roots_univariate(P: PolyU, ctx: PrecisionContext | None = None) -> list[tuple[mpc, int]]:
    """Roots with exact multiplicities: Yun first, then numeric simple roots."""
    ctx = ctx or PrecisionContext()
    if not P:
        raise ValueError("roots of the zero polynomial")
    out = []
    for mult, f in squarefree_profile(P):
        for z in simple_roots(f, ctx):
            if poly_residual(f, z, ctx.bits + 32) >= ctx.residual_bound:
                raise NonConvergenceError(f"residual too large for factor {f}")
            out.append((z, mult))
    out.sort(key=lambda t: canonical_key(t[0]))
    return out


# -- bivariate evaluation ---------------------------------------------------

class _NumPoly2:
    """A PolyUV frozen into rows of MPFR coefficients for fast evaluation."""

    def __init__(self, F: PolyUV, prec: int):
        self.prec = prec
        with _ctx(prec):
            rows: dict[int, dict[int, mpfr]] = {}
            for (i, j), c in F.terms.items():
                c = Fraction(c)
                rows.setdefault(j, {})[i] = mpfr(mpq(c.numerator, c.denominator))
            ny = max(rows, default=-1)
            self.rows = []
            for j in range(ny + 1):
                r = rows.get(j, {})
                nx = max(r, default=-1)
                self.rows.append([r.get(i, mpfr(0)) for i in range(nx + 1)])

    def __call__(self, x: mpc, y: mpc) -> mpc:
        acc = mpc(0)
        for row in reversed(self.rows):
            v = mpc(0)
            for c in reversed(row):
                v = v * x + c
            acc = acc * y + v
        return acc

    def bound(self, x: mpc, y: mpc) -> mpfr:
        ax, ay = abs(x), abs(y)
        acc = mpfr(0)
        for row in reversed(self.rows):
            v = mpfr(0)
            for c in reversed(row):
                v = v * ax + abs(c)
            acc = acc * ay + v
        return acc


@dataclass
class CriticalPoint2D:
    x: mpc
    y: mpc
    value: mpc
    hessian_det: mpc
    newton_residual: float
    hessian_scale: float = 1.0
    real: bool = False

    def is_morse(self, ctx: PrecisionContext) -> bool:
        # scale is a coefficient bound; cancellation at high degree makes it
        # large, so the cutoff tracks the point accuracy 2^-bits/2
        return abs(self.hessian_det) > 2.0 ** (-ctx.bits / 2) * self.hessian_scale

    def key(self) -> tuple:
        return canonical_key(self.x) + canonical_key(self.y)


class CriticalPoints(list):
    """List of CriticalPoint2D with solver diagnostics attached."""

    def __init__(self, items=(), rejected=(), strategy: str = ""):
        super().__init__(items)
        self.rejected = list(rejected)
        self.strategy = strategy


class _Gradient:
    def __init__(self, F: PolyUV, prec: int):
        self.prec = prec
        Fx, Fy = F.derive(0), F.derive(1)
        self.F = _NumPoly2(F, prec)
        self.Fx, self.Fy = _NumPoly2(Fx, prec), _NumPoly2(Fy, prec)
        self.Fxx = _NumPoly2(Fx.derive(0), prec)
        self.Fxy = _NumPoly2(Fx.derive(1), prec)
        self.Fyy = _NumPoly2(Fy.derive(1), prec)

    def residual(self, x, y) -> float:
        gx, gy = self.Fx(x, y), self.Fy(x, y)
        scale = max(self.Fx.bound(x, y), self.Fy.bound(x, y), mpfr(1))
        return float(max(abs(gx), abs(gy)) / scale)

    def newton(self, x: mpc, y: mpc, tol_bits: int, maxiter: int = 80) -> tuple[mpc, mpc, bool]:
        with _ctx(self.prec):
            x, y = mpc(x), mpc(y)
            tol = mpfr(2) ** (-tol_bits)
            for _ in range(maxiter):
                gx, gy = self.Fx(x, y), self.Fy(x, y)
                a, b, d = self.Fxx(x, y), self.Fxy(x, y), self.Fyy(x, y)
                det = a * d - b * b
                if det == 0:
                    return x, y, False
                dx = (d * gx - b * gy) / det
                dy = (a * gy - b * gx) / det
                x, y = x - dx, y - dy
                if max(abs(dx), abs(dy)) <= tol * max(abs(x), abs(y), mpfr(1)):
                    return x, y, True
            return x, y, False

    def point(self, x: mpc, y: mpc, ctx: PrecisionContext) -> CriticalPoint2D:
        with _ctx(self.prec):
            a, b, d = self.Fxx(x, y), self.Fxy(x, y), self.Fyy(x, y)
            scale = max(self.Fxx.bound(x, y) * self.Fyy.bound(x, y), self.Fxy.bound(x, y) ** 2, mpfr(1))
            rad = ctx.cluster_radius
            return CriticalPoint2D(
                x=x,
                y=y,
                value=self.F(x, y),
                hessian_det=a * d - b * b,
                newton_residual=self.residual(x, y),
                hessian_scale=float(scale),
                real=abs(x.imag) < rad and abs(y.imag) < rad,
            )


def _shears() -> Iterable[Fraction]:
    # deterministic sequence of generic-looking rational shears
    for num, den in ((3, 7), (-5, 11), (7, 13), (-11, 17), (13, 19), (17, 23)):
        yield Fraction(num, den)


def eliminant(F: PolyUV) -> tuple[PolyU, str, Fraction, bool]:
    """Pick a certified-squarefree resultant of the gradient.

    Returns (R, eliminated_var, shear, certified).  The solving coordinates are
    (s, t) with F evaluated at x = s + shear*t, y = t when eliminating "y",
    or with the roles of x and y swapped when eliminating "x".
    """
    Fx, Fy = F.derive(0), F.derive(1)
    if Fx.is_zero() and Fy.is_zero():
        raise PositiveDimensionalError("F is constant")
    last = None
    for elim in ("y", "x"):
        R = resultant(Fx, Fy, elim) if not (Fx.is_zero() or Fy.is_zero()) else PolyU([])
        if R.is_zero():
            raise PositiveDimensionalError(f"res_{elim}(F_x, F_y) vanishes identically")
        if R.degree == 0 or is_squarefree_certified(R):
            return R, elim, Fraction(0), True
        last = (R, elim, Fraction(0))
    for c in _shears():
        G = F.linear_change((1, c, 0), (0, 1, 0))
        R = resultant(G.derive(0), G.derive(1), "y")
        if is_squarefree_certified(R):
            return R, "y", c, True
        last = (R, "y", c)
    return (*last, False)


def solve_gradient_2d(F: PolyUV, ctx: PrecisionContext | None = None) -> CriticalPoints:
    """All isolated complex solutions of F_x = F_y = 0.

    Each accepted point has been Newton-polished on the original gradient to
    a scaled residual below 2^(-bits/2).  Candidates that fail to converge are
    kept in ``.rejected`` (and logged), never dropped silently.
    """
    ctx = ctx or PrecisionContext()
    if F.total_degree <= 0:
        raise PositiveDimensionalError("F is constant")
    R, elim, shear, certified = eliminant(F)
    strategy = f"res_{elim}" + (f" after shear {shear}" if shear else "")
    log.info("gradient eliminant %s, degree %d, squarefree=%s", strategy, R.degree, certified)

    # solving coordinates: (s, t) with s the kept variable
    if elim == "y":
        G = F.linear_change((1, shear, 0), (0, 1, 0)) if shear else F
    else:
        G = F.swap()
    if certified:
        s_roots = [(z, 1) for z in simple_roots(R, ctx)]
    else:
        s_roots = roots_univariate(R, ctx)

    prec = ctx.bits + 64
    grad_G = _Gradient(G, prec)
    grad_F = _Gradient(F, prec)
    Gs_rows, Gt_rows = G.derive(0).as_poly_in(1), G.derive(1).as_poly_in(1)

    points: list[CriticalPoint2D] = []
    rejected = []
    for s, mult in s_roots:
        with _ctx(prec):
            gs = [_eval_exact_at(c, s) for c in Gs_rows]
            gt = [_eval_exact_at(c, s) for c in Gt_rows]
        ds, dt = _effective_degree(gs), _effective_degree(gt)
        # root-find the lower-degree nonconstant fiber, rank by the other
        fiber, other = (gs, gt) if 0 < ds and (ds <= dt or dt <= 0) else (gt, gs)
        if _effective_degree(fiber) <= 0:
            rejected.append((s, "fiber has no finite root (solution at infinity)"))
            continue
        cands = aberth(fiber, prec)
        cands.sort(key=lambda t: float(abs(_eval_mpc(other, t, prec))) / max(1.0, float(abs(t))) ** max(len(other) - 1, 0))
        found = 0
        for t in cands[: max(mult, 1) + 2]:
            ss, tt, ok = grad_G.newton(s, t, ctx.bits + 16)
            if not ok or abs(ss - s) > 1e-6 * max(1.0, float(abs(s))):
                continue
            if elim == "y":
                x, y = ss + shear * tt, tt
            else:
                x, y = tt, ss
            x, y, ok = grad_F.newton(x, y, ctx.bits + 16)
            if not ok:
                continue
            pt = grad_F.point(x, y, ctx)
            if pt.newton_residual >= ctx.residual_bound:
                continue
            if any(_close(pt, q, ctx.cluster_radius) for q in points):
                continue
            points.append(pt)
            found += 1
            if found >= mult:
                break
        if found < mult:
            rejected.append((s, f"found {found} of {mult} points above eliminant root"))
    for s, why in rejected:
        log.warning("critical-point candidate at %s rejected: %s", complex(s), why)
    points.sort(key=CriticalPoint2D.key)
    return CriticalPoints(points, rejected, strategy)


def _effective_degree(cs: Sequence[mpc]) -> int:
    deg = len(cs) - 1
    while deg >= 0 and cs[deg] == 0:
        deg -= 1
    return deg


def _eval_exact_at(p: PolyU, z: mpc) -> mpc:
    acc = mpc(0)
    for c in reversed(p.coeffs):
        acc = acc * z + _to_mpc(c)
    return acc


def _eval_mpc(cs: Sequence[mpc], z: mpc, prec: int) -> mpc:
    with _ctx(prec):
        acc = mpc(0)
        for c in reversed(cs):
            acc = acc * z + c
        return acc


def _close(p: CriticalPoint2D, q: CriticalPoint2D, rad: float) -> bool:
    return abs(p.x - q.x) < rad and abs(p.y - q.y) < rad


# -- value bucketing ---------------------------------------------------------

def assign_values(points: Iterable, targets: Sequence, ctx: PrecisionContext | None = None) -> dict:
    """Map each target value to the points whose value lies within tolerance."""
    ctx = ctx or PrecisionContext()
    tol = ctx.value_tolerance
    tv = [complex(Fraction(t)) for t in targets]
    for i in range(len(tv)):
        for j in range(i + 1, len(tv)):
            if abs(tv[i] - tv[j]) <= 2 * tol * max(1.0, abs(tv[i]), abs(tv[j])):
                raise ValueError("targets are not separated by twice the value tolerance")
    out: dict = {t: [] for t in targets}
    stray = []
    for p in points:
        v = p.value
        hits = [t for t, c in zip(targets, tv) if abs(complex(v) - c) <= tol * max(1.0, abs(c))
                and abs(v - _to_mpc(Fraction(t))) <= tol * max(1.0, abs(c))]
        if len(hits) != 1:
            stray.append(p)
        else:
            out[hits[0]].append(p)
    if stray:
        desc = ", ".join(f"({complex(p.x):.6g}, {complex(p.y):.6g}) -> {complex(p.value):.6g}" for p in stray[:10])
        raise BucketError(f"{len(stray)} critical points outside every target window: {desc}")
    return out


def bucket_values(points: Iterable, targets: Sequence, ctx: PrecisionContext | None = None) -> dict:
    return {t: len(v) for t, v in assign_values(points, targets, ctx).items()}
