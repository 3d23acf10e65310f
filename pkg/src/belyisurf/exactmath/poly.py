"""Dense univariate and sparse bivariate polynomials with exact coefficients.

Coefficients are normally :class:`fractions.Fraction`; any object supporting
ring arithmetic with ints works (``AlgebraicScalar`` during the deltoid
expansion, mpmath numbers for evaluation only).
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping


class ScalarFieldError(TypeError):
    """Raised when polynomial operands live over incompatible scalar fields."""


def _field_tag(c) -> object:
    # (int, Fraction) are the base field; AlgebraicScalar carries an order
    order = getattr(c, "order", None)
    return ("cyclo", order) if order is not None else "Q"


def _check_fields(a: Iterable, b: Iterable) -> None:
    ta = {_field_tag(c) for c in a} - {"Q"}
    tb = {_field_tag(c) for c in b} - {"Q"}
    if len(ta | tb) > 1:
        raise ScalarFieldError(f"incompatible scalar fields {ta | tb}")


def _as_exact(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        raise TypeError("float coefficients are not exact; pass Fraction or str")
    return c


class PolyU:
    """Dense univariate polynomial ``sum coeffs[k] * var**k``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "w"):
        cs = [_as_exact(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c, var: str = "w") -> "PolyU":
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "w") -> "PolyU":
        return cls([0] * k + [c], var)

    @classmethod
    def x(cls, var: str = "w") -> "PolyU":
        return cls([0, 1], var)

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyU):
            other = PolyU.const(other, self.var) if other is not None else None
        return other is not None and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyU({self.to_str()!r})"

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            parts.append(f"{c}" if not mono else (mono if c == 1 else f"({c})*{mono}"))
        return " + ".join(parts)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "PolyU":
        if isinstance(other, PolyU):
            return other
        return PolyU.const(other, self.var)

    def __add__(self, other) -> "PolyU":
        other = self._coerce(other)
        _check_fields(self.coeffs, other.coeffs)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyU([self[k] + other[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> "PolyU":
        return PolyU([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "PolyU":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PolyU":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PolyU":
        if not isinstance(other, PolyU):
            other = _as_exact(other)
            _check_fields(self.coeffs, [other])
            return PolyU([c * other for c in self.coeffs], self.var)
        _check_fields(self.coeffs, other.coeffs)
        if not self.coeffs or not other.coeffs:
            return PolyU([], self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyU(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "PolyU":
        c = _as_exact(c)
        return PolyU([a / c for a in self.coeffs], self.var)

    def __pow__(self, e: int) -> "PolyU":
        if e < 0:
            raise ValueError("negative power")
        result = PolyU.const(1, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: "PolyU") -> tuple["PolyU", "PolyU"]:
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return PolyU([], self.var), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            q = rem[k + len(other.coeffs) - 1] / lead
            quo[k] = q
            if q != 0:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= q * b
        return PolyU(quo, self.var), PolyU(rem[: len(other.coeffs) - 1], self.var)

    def __floordiv__(self, other) -> "PolyU":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "PolyU":
        return divmod(self, other)[1]

    # -- calculus and substitution ----------------------------------------
    def derive(self) -> "PolyU":
        return PolyU([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    eval = __call__

    def compose_affine(self, a, b) -> "PolyU":
        """Return ``P(a*var + b)``."""
        lin = PolyU([b, a], self.var)
        acc = PolyU([], self.var)
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def compose(self, q: "PolyU") -> "PolyU":
        acc = PolyU([], q.var)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def monic(self) -> "PolyU":
        if not self.coeffs:
            return self
        return self / self.lc

    def with_var(self, var: str) -> "PolyU":
        return PolyU(self.coeffs, var)

    def map_coeffs(self, fn) -> "PolyU":
        return PolyU([fn(c) for c in self.coeffs], self.var)

    def integer_coeffs(self) -> tuple[list[int], int]:
        """Return ``(ints, den)`` with ``self == PolyU(ints) / den``, ``den > 0``."""
        den = 1
        for c in self.coeffs:
            den = lcm(den, Fraction(c).denominator)
        return [int(Fraction(c) * den) for c in self.coeffs], den

    def integrate(self) -> "PolyU":
        """Antiderivative vanishing at 0."""
        return PolyU([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.var)


Monomial = tuple[int, int]


class PolyUV:
    """Sparse bivariate polynomial ``sum c * x**i * y**j`` keyed by ``(i, j)``."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, vars: tuple[str, str] = ("x", "y")):
        self.terms = {k: _as_exact(c) for k, c in (terms or {}).items() if c != 0}
        self.vars = tuple(vars)

    @classmethod
    def const(cls, c, vars=("x", "y")) -> "PolyUV":
        return cls({(0, 0): c}, vars)

    @classmethod
    def gens(cls, vars=("x", "y")) -> tuple["PolyUV", "PolyUV"]:
        return cls({(1, 0): 1}, vars), cls({(0, 1): 1}, vars)

    @classmethod
    def from_polyu(cls, p: PolyU, which: int = 0, vars=("x", "y")) -> "PolyUV":
        key = (lambda k: (k, 0)) if which == 0 else (lambda k: (0, k))
        return cls({key(k): c for k, c in enumerate(p.coeffs)}, vars)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, which: int) -> int:
        return max((k[which] for k in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyUV):
            other = PolyUV.const(other, self.vars)
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"PolyUV({len(self.terms)} terms, deg {self.total_degree})"

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items())

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "PolyUV":
        return other if isinstance(other, PolyUV) else PolyUV.const(other, self.vars)

    def __add__(self, other) -> "PolyUV":
        other = self._coerce(other)
        _check_fields(self.terms.values(), other.terms.values())
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return PolyUV(out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> "PolyUV":
        return PolyUV({k: -c for k, c in self.terms.items()}, self.vars)

    def __sub__(self, other) -> "PolyUV":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PolyUV":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PolyUV":
        if not isinstance(other, PolyUV):
            other = _as_exact(other)
            _check_fields(self.terms.values(), [other])
            return PolyUV({k: c * other for k, c in self.terms.items()}, self.vars)
        _check_fields(self.terms.values(), other.terms.values())
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return PolyUV(out, self.vars)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "PolyUV":
        c = _as_exact(c)
        return PolyUV({k: v / c for k, v in self.terms.items()}, self.vars)

    def __pow__(self, e: int) -> "PolyUV":
        result = PolyUV.const(1, self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- calculus and substitution ----------------------------------------
    def derive(self, which: int | str) -> "PolyUV":
        if isinstance(which, str):
            which = self.vars.index(which)
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[which]
            if e:
                out[(i - 1, j) if which == 0 else (i, j - 1)] = e * c
        return PolyUV(out, self.vars)

    def __call__(self, x, y):
        # Horner in y of Horner in x
        rows: dict[int, dict[int, object]] = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(j, {})[i] = c
        acc = 0
        for j in range(self.degree_in(1), -1, -1):
            row = rows.get(j)
            val = 0
            if row:
                for i in range(max(row), -1, -1):
                    val = val * x + row.get(i, 0)
            acc = acc * y + val
        return acc

    eval = __call__

    def substitute(self, which: int | str, value) -> PolyU:
        """Set one variable to a scalar; returns a PolyU in the other variable."""
        if isinstance(which, str):
            which = self.vars.index(which)
        other = 1 - which
        out: dict[int, object] = {}
        for k, c in self.terms.items():
            out[k[other]] = out.get(k[other], 0) + c * value ** k[which]
        deg = max(out, default=-1)
        return PolyU([out.get(k, 0) for k in range(deg + 1)], self.vars[other])

    def scale_var(self, which: int | str, s) -> "PolyUV":
        """Replace a variable ``v`` with ``s*v``."""
        if isinstance(which, str):
            which = self.vars.index(which)
        return PolyUV({k: c * s ** k[which] for k, c in self.terms.items()}, self.vars)

    def linear_change(self, mx: tuple, my: tuple) -> "PolyUV":
        """Substitute ``x <- a*x + b*y + c`` and ``y <- a'*x + b'*y + c'``.

        ``mx = (a, b, c)`` and ``my = (a', b', c')``.
        """
        X = PolyUV({(1, 0): mx[0], (0, 1): mx[1], (0, 0): mx[2]}, self.vars)
        Y = PolyUV({(1, 0): my[0], (0, 1): my[1], (0, 0): my[2]}, self.vars)
        xp = [PolyUV.const(1, self.vars)]
        yp = [PolyUV.const(1, self.vars)]
        for _ in range(self.degree_in(0)):
            xp.append(xp[-1] * X)
        for _ in range(self.degree_in(1)):
            yp.append(yp[-1] * Y)
        acc = PolyUV({}, self.vars)
        for (i, j), c in self.terms.items():
            acc = acc + xp[i] * yp[j] * c
        return acc

    def as_poly_in(self, which: int | str) -> list[PolyU]:
        """Coefficients (as PolyU in the other variable) of powers of ``which``."""
        if isinstance(which, str):
            which = self.vars.index(which)
        other = 1 - which
        n = self.degree_in(which)
        buckets: list[dict[int, object]] = [dict() for _ in range(n + 1)]
        for k, c in self.terms.items():
            buckets[k[which]][k[other]] = c
        return [
            PolyU([b.get(e, 0) for e in range(max(b, default=-1) + 1)], self.vars[other])
            for b in buckets
        ]

    def map_coeffs(self, fn) -> "PolyUV":
        return PolyUV({k: fn(c) for k, c in self.terms.items()}, self.vars)

    def integer_form(self) -> tuple[dict[Monomial, int], int]:
        """Return ``(int_terms, den)`` with ``self == int_terms / den``."""
        den = 1
        for c in self.terms.values():
            den = lcm(den, Fraction(c).denominator)
        return {k: int(Fraction(c) * den) for k, c in self.terms.items()}, den

    def swap(self) -> "PolyUV":
        return PolyUV({(j, i): c for (i, j), c in self.terms.items()}, self.vars[::-1])

