"""gcd, squarefree decomposition and resultants over Q.

Everything here is exact.  Large resultants are computed by evaluating the
Sylvester determinant at integer nodes (fraction-free Bareiss elimination)
and interpolating with integer-only Newton forward differences.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .poly import PolyU, PolyUV

# primes used for the modular squarefree certificate
_PRIMES = (2305843009213693951, 4611686018427387847, 9223372036854775783)


def poly_gcd(a: PolyU, b: PolyU) -> PolyU:
    """Monic gcd over Q (gcd(0, 0) = 0)."""
    while b:
        a, b = b, a % b
    return a.monic()


def _gcd_mod_p(a: list[int], b: list[int], p: int) -> int:
    """Degree of gcd(a, b) over GF(p); inputs are coefficient lists low-to-high."""

    def trim(v):
        while v and v[-1] % p == 0:
            v.pop()
        return v

    a, b = trim([x % p for x in a]), trim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            q = a[-1] * inv % p
            off = len(a) - len(b)
            for i, y in enumerate(b):
                a[off + i] = (a[off + i] - q * y) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def is_squarefree_certified(P: PolyU) -> bool:
    """True only if P is provably squarefree over Q (modular gcd with P').

    A False answer is inconclusive: it means every trial prime divided the
    leading coefficient or produced a nontrivial modular gcd.
    """
    if P.degree <= 1:
        return P.degree == 1
    ints, _ = P.integer_coeffs()
    dints = [k * c for k, c in enumerate(ints)][1:]
    for p in _PRIMES:
        if ints[-1] % p == 0:
            continue
        if _gcd_mod_p(ints, dints, p) == 0:
            return True
    return False


def squarefree_decomposition(P: PolyU) -> tuple[Fraction, list[tuple[int, PolyU]]]:
    """Yun's algorithm.  Returns (c, [(m, f_m)]) with P = c * prod f_m^m, f_m monic."""
    if not P:
        raise ValueError("squarefree decomposition of the zero polynomial")
    c = P.lc
    if P.degree == 0:
        return c, []
    if is_squarefree_certified(P):
        return c, [(1, P.monic())]
    f = P.monic()
    fd = f.derive()
    a = poly_gcd(f, fd)
    b = f // a
    cc = fd // a
    d = cc - b.derive()
    out: list[tuple[int, PolyU]] = []
    m = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((m, g))
        b = b // g
        cc = d // g
        d = cc - b.derive()
        m += 1
    return c, out


def squarefree_profile(P: PolyU) -> list[tuple[int, PolyU]]:
    """[(multiplicity, monic squarefree factor)], factors pairwise coprime."""
    return squarefree_decomposition(P)[1]


# -- determinants and resultants -------------------------------------------

def bareiss_det(M: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (copied, not mutated)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def sylvester_matrix(f: list, g: list) -> list[list]:
    """Sylvester matrix for coefficient lists (low-to-high) with formal degrees len-1."""
    n, m = len(f) - 1, len(g) - 1
    size = n + m
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(m):
        rows.append([0] * i + fr + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gr + [0] * (size - m - 1 - i))
    return rows


def resultant_univariate(f: PolyU, g: PolyU) -> Fraction:
    if not f or not g:
        return Fraction(0)
    fi, fd = f.integer_coeffs()
    gi, gd = g.integer_coeffs()
    n, m = f.degree, g.degree
    if n + m == 0:
        return Fraction(1)
    det = bareiss_det(sylvester_matrix(fi, gi))
    return Fraction(det, fd ** m * gd ** n)


def _interpolate_int_nodes(values: list[int]) -> list[Fraction]:
    """Monomial coefficients of the polynomial taking ``values[k]`` at x = k."""
    B = len(values) - 1
    diffs = list(values)
    delta = [diffs[0]]
    for k in range(1, B + 1):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        delta.append(diffs[0])
    fB = factorial(B)
    # Horner on the Newton form, scaled by B! to stay integral
    T = [delta[B]]
    for k in range(B - 1, -1, -1):
        scale = fB // factorial(k)
        # T <- delta_k * B!/k! + (x - k) * T
        shifted = [0] + T
        for i, c in enumerate(T):
            shifted[i] -= k * c
        shifted[0] += delta[k] * scale
        T = shifted
    return [Fraction(c, fB) for c in T]


def _eval_rows(rows: list[dict[int, int]], x0: int) -> list[int]:
    out = []
    for row in rows:
        acc = 0
        if row:
            for i in range(max(row), -1, -1):
                acc = acc * x0 + row.get(i, 0)
        out.append(acc)
    return out


def resultant(F: PolyUV, G: PolyUV, eliminate: int | str = 1) -> PolyU:
    """Sylvester resultant of F and G with respect to one variable.

    The result is a PolyU in the remaining variable.
    """
    if isinstance(eliminate, str):
        eliminate = F.vars.index(eliminate)
    keep = 1 - eliminate
    n, m = F.degree_in(eliminate), G.degree_in(eliminate)
    if n <= 0 and m <= 0:
        raise ValueError("both inputs are constant in the eliminated variable")
    if F.is_zero() or G.is_zero():
        return PolyU([], F.vars[keep])
    Fi, Fden = F.integer_form()
    Gi, Gden = G.integer_form()

    def rows_of(terms, deg):
        rows: list[dict[int, int]] = [dict() for _ in range(deg + 1)]
        for k, c in terms.items():
            rows[k[eliminate]][k[keep]] = c
        return rows

    frows, grows = rows_of(Fi, n), rows_of(Gi, m)
    dxF = max((k[keep] for k in Fi), default=0)
    dxG = max((k[keep] for k in Gi), default=0)
    bound = min(m * dxF + n * dxG, F.total_degree * G.total_degree)
    values = []
    for x0 in range(bound + 1):
        f0 = _eval_rows(frows, x0)
        g0 = _eval_rows(grows, x0)
        values.append(bareiss_det(sylvester_matrix(f0, g0)))
    coeffs = _interpolate_int_nodes(values)
    scale = Fraction(1, Fden ** m * Gden ** n)
    return PolyU([c * scale for c in coeffs], F.vars[keep])
