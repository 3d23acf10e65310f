"""Float meshes of real slices of split surfaces (visualization only)."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
from skimage.measure import marching_cubes as _skimage_mc


class MeshError(ValueError):
    pass


@dataclass
class MeshOutput:
    vertices: np.ndarray  # (n, 3) float
    triangles: np.ndarray  # (m, 3) int

    def euler_characteristic(self) -> int:
        edges = np.sort(np.concatenate([self.triangles[:, [0, 1]], self.triangles[:, [1, 2]], self.triangles[:, [0, 2]]]), axis=1)
        n_edges = len(np.unique(edges, axis=0))
        return len(self.vertices) - n_edges + len(self.triangles)

    def to_obj(self) -> str:
        lines = [f"v {x:.9g} {y:.9g} {z:.9g}" for x, y, z in self.vertices]
        lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in self.triangles]
        return "\n".join(lines) + "\n"

    def write_obj(self, path: str | Path) -> None:
        Path(path).write_text(self.to_obj())


def _grid(box, resolution: int):
    lo, hi = box
    if not hi > lo:
        raise MeshError("box must satisfy lo < hi")
    if resolution < 8:
        raise MeshError("resolution must be at least 8")
    return np.linspace(lo, hi, resolution + 1)


def _split_field(S, axis: np.ndarray) -> np.ndarray:
    # f(u, v) on a 2D grid plus g(w) on a line, broadcast to 3D
    U, V = np.meshgrid(axis, axis, indexing="ij")
    f = np.zeros_like(U)
    for (i, j), c in S.f.terms.items():
        f += float(c) * U**i * V**j
    g = np.zeros_like(axis)
    for c in reversed(S.g.coeffs):
        g = g * axis + float(c)
    return f[:, :, None] + g[None, None, :]


def marching_cubes(
    S=None, box=(-4.0, 4.0), resolution: int = 96, field: Callable | None = None
) -> MeshOutput:
    """Zero set of S (a SurfaceModel) or of ``field(U, V, W)`` over box^3.

    The classic Lorensen-Cline case table is used with linear interpolation
    along cell edges; zero-area triangles are dropped.
    """
    axis = _grid(box, resolution)
    with np.errstate(over="raise", invalid="raise"):
        try:
            if field is not None:
                U, V, W = np.meshgrid(axis, axis, axis, indexing="ij")
                vol = np.asarray(field(U, V, W), dtype=float)
            else:
                vol = _split_field(S, axis)
        except FloatingPointError as exc:
            raise MeshError(f"field overflows on the box {box}; try a smaller box") from exc
    if not np.all(np.isfinite(vol)):
        raise MeshError(f"field overflows on the box {box}; try a smaller box")
    if vol.min() > 0 or vol.max() < 0:
        return MeshOutput(np.zeros((0, 3)), np.zeros((0, 3), dtype=int))
    step = (box[1] - box[0]) / resolution
    verts, faces, _, _ = _skimage_mc(vol, 0.0, spacing=(step,) * 3, method="lorensen", allow_degenerate=False)
    verts = verts + box[0]
    a, b, c = (verts[faces[:, k]] for k in range(3))
    area = np.linalg.norm(np.cross(b - a, c - a), axis=1)
    faces = faces[area > 1e-14 * step * step]
    return MeshOutput(verts, faces.astype(int))
