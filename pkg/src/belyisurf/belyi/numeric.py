"""Numeric Belyi polynomials from a plane tree.

Unknowns are the critical points other than w0.  With w0 = 0 and B monic
the derivative is B' = d * prod (t - w_k)^{m_k}, and the conditions are
B(w_k) = -1 for black and +1 for white critical vertices, where
B(w) = 1 + int_0^w B'.  Damped Newton uses the exact Jacobian

    d/dw_j int_0^{w_i} B' = -m_j int_0^{w_i} B'/(t - w_j) dt.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import mpmath
from mpmath import mp, mpc, mpf

from ..solvekit import NonConvergenceError, PrecisionContext
from .polys import BelyiPoly
from .tree import BLACK, PlaneTree


@dataclass
class NumericBelyi:
    coeffs: list  # mpc, index = exponent, symmetric convention
    critical_points: list  # (w, multiplicity, target value)
    residual: mpf
    iterations: int
    start_radius: float

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, w):
        acc = mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * w + c
        return acc


def _polymul_linear_pow(p: list, root, m: int) -> list:
    for _ in range(m):
        out = [mpc(0)] * (len(p) + 1)
        for i, c in enumerate(p):
            out[i + 1] += c
            out[i] -= c * root
        p = out
    return p


def _integrate_eval(p: list, w) -> mpc:
    # int_0^w sum c_i t^i dt by Horner on c_i/(i+1)
    acc = mpc(0)
    for i in range(len(p) - 1, -1, -1):
        acc = acc * w + p[i] / (i + 1)
    return acc * w


def _deflate(p: list, root) -> list:
    # p / (t - root), exact division assumed
    n = len(p) - 1
    q = [mpc(0)] * n
    acc = mpc(0)
    for i in range(n, 0, -1):
        acc = acc * root + p[i]
        q[i - 1] = acc
    return q


def _layout(tree: PlaneTree, root: int, radius: float, twist: float) -> dict[int, mpc]:
    """Critical vertices placed by depth on circles, angles from cyclic order."""
    pos = {root: mpc(0)}
    stack = [(root, None, 0.0, 2 * mpmath.pi, 0)]
    while stack:
        v, parent, lo, hi, depth = stack.pop()
        nbrs = tree.adj[v]
        if parent is not None:
            k = nbrs.index(parent)
            nbrs = nbrs[k + 1 :] + nbrs[:k]
        kids = [w for w in nbrs if w != parent]
        if not kids:
            continue
        step = (hi - lo) / len(kids)
        for i, w in enumerate(kids):
            a, b = lo + i * step, lo + (i + 1) * step
            if tree.degree(w) >= 2:
                ang = (a + b) / 2 + twist
                pos[w] = (depth + 1) * radius * mpmath.exp(1j * ang)
            stack.append((w, v, a, b, depth + 1))
    return pos


class _System:
    def __init__(self, tree: PlaneTree):
        tree.validate()
        self.tree = tree
        self.d = tree.n_edges
        self.root = tree.root()
        crit = tree.critical_vertices()
        self.others = [v for v in crit if v != self.root]
        self.m0 = tree.multiplicity(self.root)
        self.mult = [tree.multiplicity(v) for v in self.others]
        self.target = [mpf(-1) if tree.colors[v] == BLACK else mpf(1) for v in self.others]
        root_value = -1 if tree.colors[self.root] == BLACK else 1
        self.root_value = mpf(root_value)

    def derivative(self, ws: list) -> list:
        p = [mpc(0)] * self.m0 + [mpc(self.d)]
        for w, m in zip(ws, self.mult):
            p = _polymul_linear_pow(p, w, m)
        return p

    def residual(self, ws: list) -> list:
        D = self.derivative(ws)
        return [self.root_value + _integrate_eval(D, w) - t for w, t in zip(ws, self.target)]

    def jacobian(self, ws: list):
        D = self.derivative(ws)
        n = len(ws)
        J = mpmath.matrix(n, n)
        defl = [_deflate(D, w) for w in ws]
        for j in range(n):
            for i in range(n):
                J[i, j] = -self.mult[j] * _integrate_eval(defl[j], ws[i])
        return J

    def coefficients(self, ws: list) -> list:
        D = self.derivative(ws)
        return [self.root_value] + [c / (i + 1) for i, c in enumerate(D)]


def _newton(sys: _System, ws: list, ctx: PrecisionContext, maxiter: int) -> tuple[list, mpf, int]:
    def norm(r):
        return max((abs(x) for x in r), default=mpf(0))

    r = sys.residual(ws)
    nr = norm(r)
    goal = mpf(2) ** (-ctx.bits // 2 - 16)
    for it in range(1, maxiter + 1):
        if nr < goal:
            return ws, nr, it
        try:
            step = mpmath.lu_solve(sys.jacobian(ws), mpmath.matrix(r))
        except ZeroDivisionError:
            break
        lam = mpf(1)
        while lam > mpf(2) ** -30:
            trial = [w - lam * step[k] for k, w in enumerate(ws)]
            rt = sys.residual(trial)
            nt = norm(rt)
            if nt < nr * (1 - lam / 4) or nt < goal:
                ws, r, nr = trial, rt, nt
                break
            lam /= 2
        else:
            break
    return ws, nr, maxiter


def _distinct(ws: list, ctx: PrecisionContext) -> bool:
    pts = [mpc(0)] + list(ws)
    sep = mpf(ctx.cluster_radius)
    return all(abs(a - b) > sep for i, a in enumerate(pts) for b in pts[i + 1 :])


def solve_belyi_numeric(
    tree: PlaneTree,
    ctx: PrecisionContext | None = None,
    radii=(1.0, 0.5, 2.0, 0.25, 4.0),
    twists=(0.0, 0.3, -0.3, 0.7),
    maxiter: int = 200,
) -> NumericBelyi:
    """Monic symmetric-convention Belyi polynomial for the tree, with w0 = 0."""
    ctx = ctx or PrecisionContext()
    sys = _System(tree)
    best = None
    with mp.workprec(ctx.bits + 32):
        for radius, twist in product(radii, twists):
            pos = _layout(tree, sys.root, radius, twist)
            start = [pos[v] for v in sys.others]
            ws, res, it = _newton(sys, start, ctx, maxiter)
            if best is None or res < best[1]:
                best = (ws, res, it, radius)
            if res < ctx.residual_bound and _distinct(ws, ctx):
                coeffs = sys.coefficients(ws)
                crit = [(mpc(0), sys.m0, sys.root_value)] + list(zip(ws, sys.mult, sys.target))
                return NumericBelyi(coeffs, crit, res, it, radius)
    raise NonConvergenceError(f"Belyi solve did not converge; best residual {mpmath.nstr(best[1], 5)}")


# -- comparison with exact polynomials ---------------------------------------

def _exact_critical(B: BelyiPoly, prec: int):
    """(w, multiplicity, value) of the symmetric-convention exact polynomial."""
    from ..solvekit import roots_univariate, to_mpmath
    from .polys import critical_profile_poly

    S = B.to_symmetric()
    prof = critical_profile_poly(S)
    ctx = PrecisionContext(prec)
    out = []
    for (v, m), f in prof.points.items():
        for z, _ in roots_univariate(f, ctx):
            out.append((to_mpmath(z), m, v))
    return S, out


def gauge_distance(num: NumericBelyi, exact: BelyiPoly, ctx: PrecisionContext | None = None) -> mpf:
    """Max coefficient difference between num(w) and exact(alpha w + beta).

    beta sends w0 = 0 to the exact white point of the same multiplicity and
    alpha is fixed by one further matched critical point; every compatible
    match is tried and the smallest distance returned.
    """
    ctx = ctx or PrecisionContext()
    with mp.workprec(ctx.bits + 32):
        S, ecrit = _exact_critical(exact, ctx.bits + 32)
        ecoef = [mpf(c.numerator) / c.denominator for c in S.poly.coeffs]
        if len(ecoef) != len(num.coeffs):
            return mpf("inf")
        root_w, root_m, root_v = num.critical_points[0]
        anchors = [z for z, m, v in ecrit if m == root_m and v == root_v]
        if len(num.critical_points) > 1:
            w1, m1, v1 = num.critical_points[1]
        best = mpf("inf")
        for beta in anchors:
            if len(num.critical_points) == 1:
                # only w0 is critical: T-like case, alpha from leading coefficients
                alphas = [mpmath.root(1 / ecoef[-1], len(ecoef) - 1, k) for k in range(len(ecoef) - 1)]
            else:
                alphas = [(z - beta) / w1 for z, m, v in ecrit if m == m1 and v == v1 and z != beta]
            for alpha in alphas:
                moved = _compose_affine(ecoef, alpha, beta)
                dist = max(abs(a - b) for a, b in zip(moved, num.coeffs))
                best = min(best, dist)
        return best


def _compose_affine(c: list, alpha, beta) -> list:
    # coefficients of p(alpha w + beta)
    out = [mpc(0)]
    for a in reversed(c):
        nxt = [mpc(0)] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i] += v * beta
            nxt[i + 1] += v * alpha
        nxt[0] += a
        out = nxt
    while len(out) > len(c):
        out.pop()
    return out
