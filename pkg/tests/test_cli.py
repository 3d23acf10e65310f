import json
from pathlib import Path

import numpy as np
import pytest

from belyisurf.cli import CommandConfig, cmd_dispatch
from belyisurf.deltoid import build_J
from belyisurf.exactmath import polyio
from belyisurf.mesh import MeshError, marching_cubes
from belyisurf.singular import surface_nodal

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cmd_dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_counts(capsys):
    code, out, _ = run(capsys, "counts", "--degree", "9")
    assert code == 0 and out == "{0:36, 8:9, -1:19}\n"


def test_bounds(capsys):
    assert run(capsys, "bounds", "--eq", "13", "--m", "1", "2")[1] == "55\n166\n"
    assert run(capsys, "bounds", "--eq", "11", "--m", "1", "2")[1] == "4\n59\n"
    assert run(capsys, "bounds", "--eq", "37", "--ds", "9", "4", "36", "7")[1] == "127\n4177\n"
    assert run(capsys, "bounds", "--eq", "labs", "--ds", "9", "2")[1] == "126\n"
    assert run(capsys, "bounds", "--eq", "37", "--ds", "9")[0] == 2


def test_verify_cusp_nonic(capsys):
    code, out, _ = run(capsys, "verify", "--kind", "belyi", "--family", "G", "--a", "3", "--b", "3", "--c", "3")
    doc = json.loads(out)
    assert code == 0 and doc["match"] is True
    assert doc["found"] == [{"type": "A2", "count": 127, "all_real": False}]
    assert list(doc) == sorted(doc)


def test_verify_nodal(capsys):
    code, out, _ = run(capsys, "verify", "--kind", "nodal", "--degree", "3")
    assert code == 0
    assert json.loads(out)["found"] == [{"type": "A1", "count": 4, "all_real": True}]


@pytest.mark.parametrize("d", range(3, 13))
def test_j_round_trip(d, tmp_path):
    path = tmp_path / f"j{d}.poly"
    assert cmd_dispatch(["j", "--degree", str(d), "--out", str(path)]) == 0
    assert polyio.read(path) == build_J(d).J


GOLDEN_CASES = {
    "j3.poly": ["j", "--degree", "3"],
    "counts9.txt": ["counts", "--degree", "9"],
    "bounds13.txt": ["bounds", "--eq", "13", "--m", "1", "2", "3"],
    "tree_G333.tree": ["tree", "--family", "G", "--a", "3", "--b", "3", "--c", "3"],
    "belyi_G122.poly": ["belyi", "--family", "G", "--a", "1", "--b", "2", "--c", "2"],
    "surface_nodal3.poly": ["surface", "--kind", "nodal", "--degree", "3"],
    "verify_nodal3.json": ["verify", "--kind", "nodal", "--degree", "3"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_and_deterministic(name, capsys):
    argv = GOLDEN_CASES[name]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
    assert first[1] == (GOLDEN / name).read_text()


def test_belyi_outputs(capsys):
    code, out, _ = run(capsys, "belyi", "--family", "two-vertex", "--nu", "1", "--convention", "symmetric")
    assert code == 0 and polyio.loads(out) == polyio.loads("poly v1\nvars: x\ndegree: 3\nterm 0 : 1\nterm 2 : -6\nterm 3 : 4\n")
    code, out, _ = run(capsys, "belyi", "--family", "B1", "--n", "0", "--m", "1")
    doc = json.loads(out)
    assert code == 0 and doc["residual"] < 2.0**-64 and len(doc["coeffs"]) == 10


def test_tree_dot(capsys):
    code, out, _ = run(capsys, "tree", "--family", "two-vertex", "--nu", "2", "--format", "dot")
    assert code == 0 and out.startswith("graph") and out.count(" -- ") == 5


def test_usage_errors(capsys):
    code, _, err = run(capsys, "belyi", "--family", "G", "--a", "3")
    assert code == 2 and "--b --c" in err
    assert run(capsys, "surface", "--kind", "nodal", "--degree", "4")[0] == 2
    assert run(capsys, "--precision", "32", "counts", "--degree", "9")[0] == 2
    assert run(capsys, "surface", "--kind", "belyi", "--family", "B2", "--j", "0", "--n", "1", "--m", "1", "--l", "1")[0] == 2
    with pytest.raises(SystemExit):
        cmd_dispatch(["frobnicate"])


def test_config_validation():
    CommandConfig("j").validate()
    for bad in (dict(precision=10), dict(box=(1.0, 1.0)), dict(resolution=4)):
        with pytest.raises(ValueError):
            CommandConfig("mesh", **bad).validate()


def test_precision_env(monkeypatch, capsys):
    monkeypatch.setenv("FORGE_PRECISION_BITS", "320")
    code, out, _ = run(capsys, "counts", "--degree", "4")
    assert code == 0 and out == "{0:6, 8:1, -1:2}\n"


# -- mesh ------------------------------------------------------------------------

def test_mesh_sphere():
    m = marching_cubes(field=lambda u, v, w: u * u + v * v + w * w - 1, box=(-2, 2), resolution=32)
    assert m.euler_characteristic() == 2
    assert m.triangles.min() >= 0 and m.triangles.max() < len(m.vertices)
    a, b, c = (m.vertices[m.triangles[:, k]] for k in range(3))
    assert np.all(np.linalg.norm(np.cross(b - a, c - a), axis=1) > 0)
    r = np.linalg.norm(m.vertices, axis=1)
    assert np.all(abs(r - 1) < 0.05)


def test_mesh_resolution_scaling():
    sphere = lambda u, v, w: u * u + v * v + w * w - 1
    n1 = len(marching_cubes(field=sphere, box=(-2, 2), resolution=24).vertices)
    n2 = len(marching_cubes(field=sphere, box=(-2, 2), resolution=48).vertices)
    assert 2 < n2 / n1 < 8


def test_mesh_nodal_nonempty(tmp_path, capsys):
    m = marching_cubes(surface_nodal(3), (-4, 4), 48)
    assert len(m.triangles) > 0
    out = tmp_path / "c.obj"
    code, _, err = run(capsys, "mesh", "--kind", "nodal", "--degree", "3", "--resolution", "24", "--out", str(out))
    assert code == 0 and "vertices" in err
    lines = out.read_text().splitlines()
    assert lines[0].startswith("v ") and lines[-1].startswith("f ")


def test_mesh_errors():
    with pytest.raises(MeshError):
        marching_cubes(field=lambda u, v, w: u, box=(1, 0))
    with pytest.raises(MeshError):
        marching_cubes(field=lambda u, v, w: u, resolution=4)
    with pytest.raises(MeshError):
        marching_cubes(field=lambda u, v, w: np.exp(1000 * u), box=(-4, 4), resolution=8)
    empty = marching_cubes(field=lambda u, v, w: u * u + 1, resolution=8)
    assert len(empty.triangles) == 0
