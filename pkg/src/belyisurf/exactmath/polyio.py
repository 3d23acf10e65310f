"""The "poly v1" text format.

    poly v1
    vars: x y
    degree: 3
    term 0 0 : -1/1
    term 0 2 : 1/3
    ...

Terms are sorted lexicographically by exponent tuple; rationals are written
in lowest terms with an explicit denominator.  Any number of variables is
allowed (one per exponent column).
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .poly import PolyU, PolyUV

MAGIC = "poly v1"


class PolyFormatError(ValueError):
    pass


def dumps_terms(terms: Mapping[tuple[int, ...], Fraction], vars: tuple[str, ...]) -> str:
    nz = {k: Fraction(c) for k, c in terms.items() if c != 0}
    degree = max((sum(k) for k in nz), default=-1)
    lines = [MAGIC, "vars: " + " ".join(vars), f"degree: {degree}"]
    for k in sorted(nz):
        c = nz[k]
        lines.append("term " + " ".join(str(e) for e in k) + f" : {c.numerator}/{c.denominator}")
    return "\n".join(lines) + "\n"


def loads_terms(text: str) -> tuple[dict[tuple[int, ...], Fraction], tuple[str, ...]]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != MAGIC:
        raise PolyFormatError("missing 'poly v1' header")
    vars: tuple[str, ...] | None = None
    degree = None
    terms: dict[tuple[int, ...], Fraction] = {}
    for ln in lines[1:]:
        if ln.startswith("vars:"):
            vars = tuple(ln[5:].split())
        elif ln.startswith("degree:"):
            degree = int(ln[7:])
        elif ln.startswith("term "):
            if vars is None:
                raise PolyFormatError("term before vars header")
            lhs, _, rhs = ln[5:].partition(":")
            exps = tuple(int(e) for e in lhs.split())
            if len(exps) != len(vars):
                raise PolyFormatError(f"exponent arity mismatch in {ln!r}")
            num, _, den = rhs.strip().partition("/")
            c = Fraction(int(num), int(den or 1))
            if exps in terms:
                raise PolyFormatError(f"duplicate term {exps}")
            terms[exps] = c
        else:
            raise PolyFormatError(f"unrecognized line {ln!r}")
    if vars is None or degree is None:
        raise PolyFormatError("missing vars or degree header")
    if max((sum(k) for k in terms), default=-1) != degree:
        raise PolyFormatError("declared degree disagrees with terms")
    return terms, vars


def dumps(p: PolyU | PolyUV) -> str:
    if isinstance(p, PolyU):
        return dumps_terms({(k,): c for k, c in enumerate(p.coeffs)}, (p.var,))
    return dumps_terms(p.terms, p.vars)


def loads(text: str) -> PolyU | PolyUV:
    terms, vars = loads_terms(text)
    if len(vars) == 1:
        deg = max((k[0] for k in terms), default=-1)
        return PolyU([terms.get((k,), 0) for k in range(deg + 1)], vars[0])
    if len(vars) == 2:
        return PolyUV(terms, vars)
    raise PolyFormatError(f"{len(vars)}-variable poly: use loads_terms")


def write(path: str | Path, p) -> None:
    Path(path).write_text(dumps(p))


def read(path: str | Path):
    return loads(Path(path).read_text())
