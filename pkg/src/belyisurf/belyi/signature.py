"""Parameter records for the three tree families and their derived data."""
from __future__ import annotations

from dataclasses import dataclass, field


class SignatureError(ValueError):
    pass


@dataclass(frozen=True)
class BelyiSignature:
    """A Belyi passport with its family parameters.

    ``d`` degree, ``nu`` common multiplicity of the s-1 black critical points
    and the white point w0, ``eps`` multiplicity of the extra black point u
    (0 when absent), ``s`` the number of multiplicity-nu critical points.
    """

    family: str
    d: int
    nu: int
    eps: int
    s: int
    params: dict = field(default_factory=dict, compare=False, hash=False)
    initial: tuple[int, int, int] | None = field(default=None, compare=False, hash=False)

    @property
    def label(self) -> str:
        args = ",".join(str(v) for v in self.params.values())
        return f"{self.family}[{args}]"

    def grid_key(self) -> tuple:
        return (self.family,) + tuple(self.params.values())


def signature_b1(n: int, m: int) -> BelyiSignature:
    if n < 0 or m < 1:
        raise SignatureError(f"B1 needs n >= 0, m >= 1 (got n={n}, m={m})")
    k = 3 * m + 1
    nu = 3 * n + k - 2
    return BelyiSignature("B1", k * nu + 1, nu, 0, k, {"n": n, "m": m}, (9 * m * m, 3 * m - 1, 0))


def signature_b2(j: int, n: int, m: int, l: int) -> BelyiSignature:
    if j not in (0, 1):
        raise SignatureError("B2 needs j in {0, 1}")
    if n < 0 or (j == 0 and m < 1) or (j == 1 and m < 0) or l < m:
        raise SignatureError(f"B2 parameter constraints violated: j={j} n={n} m={m} l={l}")
    a, b = 3 * m + j, 3 * l + j + 1
    nu = 3 * n + b - 1
    nu0 = b - 1
    return BelyiSignature(
        "B2", b * nu + a, nu, a - 1, b, {"j": j, "n": n, "m": m, "l": l}, (b * nu0 + a, nu0, a - 1)
    )


# case -> (x, p(m), q(m, l), nu0(m), z(l)); rows of the third family
B3_CASES = {
    "a1": (1, lambda m: 3 * m - 1, lambda m, l: m * (3 * m - 2) + l + 1, lambda m: 3 * m - 1, lambda l: 3 * l + 1),
    "a2": (1, lambda m: 3 * m, lambda m, l: 3 * m * m + l + 1, lambda m: 3 * m, lambda l: 3 * l + 2),
    "a3": (1, lambda m: 3 * m + 1, lambda m, l: m * (3 * m + 2) + l + 1, lambda m: 3 * m + 1, lambda l: 3 * l + 1),
    "b1": (2, lambda m: 3 * m - 1, lambda m, l: m * (3 * m - 1) + l + 1, lambda m: 3 * m, lambda l: 3 * l + 2),
    "b2": (2, lambda m: 3 * m, lambda m, l: m * (3 * m + 1) + l + 1, lambda m: 3 * m + 1, lambda l: 3 * l + 2),
    "b3": (2, lambda m: 3 * m + 1, lambda m, l: 3 * m * (m + 1) + l + 1, lambda m: 3 * m + 2, lambda l: 3 * l),
    "c1": (3, lambda m: 3 * m - 1, lambda m, l: 3 * m * m + l, lambda m: 3 * m + 1, lambda l: 3 * l),
    "c2": (3, lambda m: 3 * m, lambda m, l: m * (3 * m + 2) + l + 1, lambda m: 3 * m + 2, lambda l: 3 * l + 2),
    "c3": (3, lambda m: 3 * m + 1, lambda m, l: (3 * m + 1) * (m + 1) + l + 1, lambda m: 3 * (m + 1), lambda l: 3 * l + 2),
}


def b3_l_range(m: int) -> range:
    return range(0, 1) if m == 1 else range(0, m - 1)


def signature_b3(x: int, case: str | int, n: int, m: int, l: int) -> BelyiSignature:
    """Third family; ``case`` is a tag a1..c3 or the subcase digit 1..3."""
    if isinstance(case, int):
        case = "abc"[x - 1] + str(case) if x in (1, 2, 3) else "?"
    if case not in B3_CASES:
        raise SignatureError(f"unknown B3 case {case!r}")
    cx, pf, qf, nuf, zf = B3_CASES[case]
    if cx != x:
        raise SignatureError(f"case {case} has x={cx}, not {x}")
    if m < 1 or n < 0:
        raise SignatureError(f"B3 needs m >= 1, n >= 0 (got m={m}, n={n})")
    if l not in b3_l_range(m):
        raise SignatureError(f"B3 needs l in {list(b3_l_range(m))} for m={m} (got {l})")
    p = pf(m)
    if p < 4:
        raise SignatureError(f"B3 case {case} at m={m} has p={p} < 4")
    q, nu0, z = qf(m, l), nuf(m), zf(l)
    d0 = x + p + (p - 1) * nu0 + z
    if d0 != 3 * q:
        raise SignatureError(f"initial-tree identity fails for {case}: {d0} != 3*{q}")
    d, nu = d0 + 3 * n * p, nu0 + 3 * n
    return BelyiSignature(
        "B3", d, nu, z, p, {"x": x, "p": p, "n": n, "m": m, "l": l, "case": case}, (d0, nu0, z)
    )


def b3_from_bracket(x: int, p: int, n: int, m: int, l: int) -> BelyiSignature:
    """B3[x, p, n, m, l] notation: the subcase follows from p - 3m."""
    sub = {-1: 1, 0: 2, 1: 3}.get(p - 3 * m)
    if sub is None:
        raise SignatureError(f"p={p} is not 3m-1, 3m or 3m+1 for m={m}")
    return signature_b3(x, sub, n, m, l)


def signature_two_vertex(nu: int) -> BelyiSignature:
    if nu < 1:
        raise SignatureError("two-vertex family needs nu >= 1")
    return BelyiSignature("TwoVertex", 2 * nu + 1, nu, 0, 2, {"nu": nu})


def signature_G(a: int, b: int, c: int) -> BelyiSignature:
    """G_{a,b,c}: u of multiplicity a-1, b-1 blacks of multiplicity c-1, w0 of multiplicity b-1."""
    if min(a, b, c) < 1:
        raise SignatureError("G needs positive a, b, c")
    # s counts the multiplicity-nu points (u joins them when a == c)
    s = b + (1 if a == c else 0)
    eps = 0 if a == c else a - 1
    return BelyiSignature("G", a + (b - 1) * c, c - 1, eps, s, {"a": a, "b": b, "c": c})


def floor_identities(d: int, nu: int, s: int) -> bool:
    return d // (nu + 1) == s - 1 and (d - 1) // nu == s


# -- parameter grids ---------------------------------------------------------

def iter_b1(dmax: int):
    m = 1
    while signature_b1(0, m).d <= dmax:
        n = 0
        while (sig := signature_b1(n, m)).d <= dmax:
            yield sig
            n += 1
        m += 1


def iter_b2(dmax: int):
    for j in (0, 1):
        m = 1 - j
        while signature_b2(j, 0, m, m).d <= dmax:
            l = m
            while signature_b2(j, 0, m, l).d <= dmax:
                n = 0
                while (sig := signature_b2(j, n, m, l)).d <= dmax:
                    yield sig
                    n += 1
                l += 1
            m += 1


def iter_b3(dmax: int):
    for case, (x, pf, *_rest) in B3_CASES.items():
        m = 1
        while True:
            if pf(m) >= 4:
                if signature_b3(x, case, 0, m, 0).d > dmax:
                    break
                for l in b3_l_range(m):
                    n = 0
                    while (sig := signature_b3(x, case, n, m, l)).d <= dmax:
                        yield sig
                        n += 1
            m += 1


def iter_signatures(dmax: int):
    yield from iter_b1(dmax)
    yield from iter_b2(dmax)
    yield from iter_b3(dmax)
