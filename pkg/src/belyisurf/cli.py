"""Command-line front end: ``belyisurf <subcommand> [options]``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import deltoid, singular
from .belyi import (
    build_tree,
    chebyshev_tree,
    jacobi_G,
    signature_b1,
    signature_b2,
    signature_b3,
    signature_G,
    signature_two_vertex,
    two_vertex_exact,
)
from .belyi.numeric import solve_belyi_numeric
from .belyi.polys import BelyiPoly
from .exactmath import polyio
from .solvekit import PrecisionContext, _env_bits

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandConfig:
    subcommand: str
    precision: int = 256
    box: tuple[float, float] = (-4.0, 4.0)
    resolution: int = 96
    out: Path | None = None
    options: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.precision < 64:
            raise ValueError("precision must be at least 64 bits")
        if not self.box[0] < self.box[1]:
            raise ValueError("box needs lo < hi")
        if self.resolution < 8:
            raise ValueError("resolution must be at least 8")

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.precision)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# -- family arguments ----------------------------------------------------------

def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=["G", "two-vertex", "chebyshev", "B1", "B2", "B3"])
    for name in ("a", "b", "c", "nu", "n", "m", "l", "j", "x", "degree"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--case", help="B3 row tag a1..c3")


FAMILY_PARAMS = {
    "G": ("a", "b", "c"),
    "two-vertex": ("nu",),
    "chebyshev": ("degree",),
    "B1": ("n", "m"),
    "B2": ("j", "n", "m", "l"),
    "B3": ("x", "case", "n", "m", "l"),
}


def _require(args) -> None:
    missing = [f"--{k}" for k in FAMILY_PARAMS.get(args.family, ()) if getattr(args, k, None) is None]
    if missing:
        raise ValueError(f"family {args.family} needs {' '.join(missing)}")


def _signature(args):
    _require(args)
    f = args.family
    if f == "G":
        return signature_G(args.a, args.b, args.c)
    if f == "two-vertex":
        return signature_two_vertex(args.nu)
    if f == "B1":
        return signature_b1(args.n, args.m)
    if f == "B2":
        return signature_b2(args.j, args.n, args.m, args.l)
    if f == "B3":
        return signature_b3(args.x, args.case, args.n, args.m, args.l)
    return None


def _closed_form(args) -> BelyiPoly | None:
    _require(args)
    f = args.family
    if f == "G":
        return jacobi_G(args.a, args.b, args.c)
    if f == "two-vertex":
        return two_vertex_exact(args.nu)
    if f == "B2" and args.n == 0:
        sig = _signature(args)
        a, b = 3 * args.m + args.j, 3 * args.l + args.j + 1
        G = jacobi_G(a, b, b)
        return BelyiPoly(G.poly, G.convention, sig)
    return None


def _tree(args):
    _require(args)
    if args.family == "chebyshev":
        return chebyshev_tree(args.degree)
    return build_tree(_signature(args))


# -- subcommands -------------------------------------------------------------------

def cmd_j(cfg: CommandConfig, args) -> int:
    fam = deltoid.build_J(args.degree)
    _emit(polyio.dumps(fam.J), cfg.out)
    return EXIT_OK


def cmd_belyi(cfg: CommandConfig, args) -> int:
    if args.family == "chebyshev":
        from .belyi import chebyshev_belyi

        B = chebyshev_belyi(args.degree)
    else:
        B = None if args.numeric else _closed_form(args)
    if B is None:
        sol = solve_belyi_numeric(_tree(args), cfg.ctx)
        doc = {
            "convention": "symmetric",
            "gauge": "w0 = 0, monic",
            "residual": float(sol.residual),
            "coeffs": [[str(c.real), str(c.imag)] for c in sol.coeffs],
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", cfg.out)
        return EXIT_OK
    conv = args.convention or B.convention
    B = B.to_unit() if conv == "unit" else B.to_symmetric()
    _emit(polyio.dumps(B.poly), cfg.out)
    return EXIT_OK


def cmd_tree(cfg: CommandConfig, args) -> int:
    t = _tree(args)
    _emit(t.to_dot() if args.format == "dot" else t.to_tree_v1(), cfg.out)
    return EXIT_OK


def _surface(args):
    if args.kind == "nodal":
        return singular.surface_nodal(args.degree)
    if args.family is None:
        raise ValueError("belyi surfaces need --family")
    B = _closed_form(args)
    if B is None:
        raise ValueError("belyi surfaces need a closed-form family (G, two-vertex, or B2 with n = 0)")
    return singular.surface_belyi(args.degree if args.degree else B.degree, B)


def _add_surface_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", required=True, choices=["nodal", "belyi"])
    p.add_argument("--degree", type=int)
    p.add_argument("--family", choices=["G", "two-vertex", "B2"])
    for name in ("a", "b", "c", "nu", "n", "m", "l", "j"):
        p.add_argument(f"--{name}", type=int)


def cmd_surface(cfg: CommandConfig, args) -> int:
    _emit(_surface(args).dumps(), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: CommandConfig, args) -> int:
    S = _surface(args)
    _, report = singular.enumerate_singularities(S, cfg.ctx)
    _emit(report.to_json() + "\n", cfg.out)
    for note in report.notes:
        if note.startswith("paper-discrepancy"):
            print(note, file=sys.stderr)
    return EXIT_OK if report.match else EXIT_MISMATCH


def cmd_counts(cfg: CommandConfig, args) -> int:
    try:
        census = deltoid.critical_profile_J(args.degree, cfg.ctx)
    except deltoid.CensusMismatchError as exc:
        print(f"census mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    c = census.as_int_keys()
    _emit("{" + ", ".join(f"{k}:{c[k]}" for k in (0, 8, -1)) + "}\n", cfg.out)
    return EXIT_OK


def cmd_bounds(cfg: CommandConfig, args) -> int:
    eq = args.eq
    lines = []
    if eq in ("11", "12", "13"):
        fn = {"11": singular.bound_eq11, "12": singular.bound_eq12, "13": singular.bound_eq13}[eq]
        for m in args.m or [1, 2, 3, 4, 5]:
            lines.append(f"{fn(m)}")
    elif eq == "37":
        for d, s in _pairs(args.ds):
            lines.append(f"{singular.predicted_count_eq37(d, s)}")
    elif eq == "labs":
        for d, j in _pairs(args.ds):
            lines.append(f"{singular.labs_count(d, j)}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def _pairs(flat):
    if not flat or len(flat) % 2:
        raise ValueError("--ds expects pairs: d1 s1 d2 s2 ...")
    return list(zip(flat[::2], flat[1::2]))


def cmd_mesh(cfg: CommandConfig, args) -> int:
    from .mesh import marching_cubes

    mesh = marching_cubes(_surface(args), cfg.box, cfg.resolution)
    _emit(mesh.to_obj(), cfg.out)
    print(f"{len(mesh.vertices)} vertices, {len(mesh.triangles)} triangles", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "j": cmd_j,
    "belyi": cmd_belyi,
    "tree": cmd_tree,
    "surface": cmd_surface,
    "verify": cmd_verify,
    "counts": cmd_counts,
    "bounds": cmd_bounds,
    "mesh": cmd_mesh,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="belyisurf", description=__doc__)
    ap.add_argument("--precision", type=int, default=None, help="working bits (env FORGE_PRECISION_BITS, default 256)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("j", help="write J_d in poly v1 format")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("belyi", help="Belyi polynomial from a family (closed form or --numeric)")
    _add_family_args(p)
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--convention", choices=["unit", "symmetric"])
    p.add_argument("--out", type=Path)

    p = sub.add_parser("tree", help="plane tree of a family in DOT or tree v1")
    _add_family_args(p)
    p.add_argument("--format", choices=["dot", "tree"], default="tree")
    p.add_argument("--out", type=Path)

    for name, hlp in (("surface", "write the surface polynomial"), ("verify", "enumerate singular points, write a report")):
        p = sub.add_parser(name, help=hlp)
        _add_surface_args(p)
        p.add_argument("--out", type=Path)

    p = sub.add_parser("counts", help="critical census of J_d at values 0, 8, -1")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("bounds", help="lower-bound and count formula tables")
    p.add_argument("--eq", required=True, choices=["11", "12", "13", "37", "labs"])
    p.add_argument("--m", type=int, nargs="+")
    p.add_argument("--ds", type=int, nargs="+", help="(d, s) or (d, j) pairs for 37 and labs")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("mesh", help="OBJ mesh of the real zero set")
    _add_surface_args(p)
    p.add_argument("--box", type=float, nargs=2, default=(-4.0, 4.0))
    p.add_argument("--resolution", type=int, default=96)
    p.add_argument("--out", type=Path)
    return ap


def cmd_dispatch(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    cfg = CommandConfig(
        args.subcommand,
        precision=args.precision or _env_bits(),
        box=tuple(getattr(args, "box", (-4.0, 4.0))),
        resolution=getattr(args, "resolution", 96),
        out=getattr(args, "out", None),
    )
    try:
        cfg.validate()
        return COMMANDS[args.subcommand](cfg, args)
    except (ArithmeticError, AssertionError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cmd_dispatch())


if __name__ == "__main__":
    main()
