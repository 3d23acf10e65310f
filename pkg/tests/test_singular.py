from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from belyisurf.belyi import jacobi_G, two_vertex_exact
from belyisurf.deltoid import build_J
from belyisurf.exactmath import PolyU, chebyshev_T
from belyisurf.singular import (
    CountReport,
    SurfaceError,
    bound_eq11,
    bound_eq12,
    bound_eq13,
    census_minus1,
    dumps_hypersurface,
    enumerate_singularities,
    extra_eps_count,
    hypersurface_difference,
    improvement_delta,
    labs_count,
    nodal_count,
    predict_counts,
    predicted_count_eq37,
    surface_belyi,
    surface_nodal,
)
from belyisurf.solvekit import PrecisionContext

CTX = PrecisionContext(256)
Z = PolyU.x("w")


def test_surface_nodal_examples():
    S = surface_nodal(3)
    assert S.g == (4 * Z**3 - 3 * Z + 1) / 2
    assert S.g == (chebyshev_T(3).with_var("w") + 1) / 2
    assert S.provenance["g_identity"]
    with pytest.raises(SurfaceError):
        surface_nodal(4)


def test_surface_belyi_errors():
    with pytest.raises(SurfaceError):
        surface_belyi(9, jacobi_G(3, 4, 4))
    S = surface_belyi(9, two_vertex_exact(4))
    assert S.g(0) == 1 and S.g(1) == 0  # unit convention: black value 0


@pytest.mark.parametrize("d", [3, 6, 9])
def test_hypersurface(d):
    H = hypersurface_difference(d)
    assert all(isinstance(c, Fraction) for c in H.values())
    assert max(sum(e) for e in H) == d
    swapped = {(k, l, i, j): -c for (i, j, k, l), c in H.items()}
    assert swapped == H
    if d == 3:
        J = build_J(3).J.substitute("y", 0)
        section = {(i, k): c for (i, j, k, l), c in H.items() if j == 0 and l == 0}
        want = {(i, 0): c for i, c in enumerate(J.coeffs) if c and i}
        want.update({(0, i): -c for i, c in enumerate(J.coeffs) if c and i})
        assert section == want
        assert dumps_hypersurface(3).startswith("poly v1")


def test_formula_examples():
    assert [nodal_count(3), nodal_count(6)] == [4, 59]
    assert [predicted_count_eq37(9, 4), predicted_count_eq37(36, 7), predicted_count_eq37(15, 4)] == [127, 4177, 376]
    assert [extra_eps_count(15), extra_eps_count(3), extra_eps_count(15, 0)] == [105, 3, 0]
    assert [labs_count(9, 2), labs_count(15, 3), labs_count(36, 5)] == [126, 375, 4176]
    assert [improvement_delta(9, 2, 4), improvement_delta(15, 3, 4), improvement_delta(36, 5, 7)] == [1, 1, 1]
    assert [bound_eq13(1), bound_eq13(2), bound_eq12(3), bound_eq11(1), bound_eq11(2)] == [55, 166, 127, 4, 59]
    with pytest.raises(ValueError):
        predicted_count_eq37(10, 2)
    with pytest.raises(ValueError):
        labs_count(9, 0)


def test_nodal_count_matches_bound():
    for m in range(1, 30):
        assert nodal_count(3 * m) == bound_eq11(m)


@given(st.integers(1, 50))
def test_two_vertex_count_identity(m):
    assert predicted_count_eq37(6 * m + 3, 2) == bound_eq13(m)


def test_census_minus1():
    assert [census_minus1(d) for d in (3, 4, 9)] == [1, 2, 19]


def test_report_json_shape():
    r = CountReport("x", {"A2": 3}, {"A2": (3, True)}, ["n"])
    doc = r.to_dict()
    assert set(doc) == {"surface", "predicted", "found", "match", "notes"}
    assert doc["match"] is True
    assert not CountReport("x", {"A2": 3}, {"A2": (2, True)}).match
    assert not CountReport("x", {}, {}).match


def _check(S, expect, all_real=None):
    pts, rep = enumerate_singularities(S, CTX)
    assert rep.predicted == expect
    assert {t: c for t, (c, _) in rep.found.items()} == expect, rep.to_json()
    assert rep.match
    assert len(pts) == sum(expect.values())
    assert max(p.residual for p in pts) < 2.0**-128
    if all_real is not None:
        assert all(r for _, r in rep.found.values()) == all_real
    return pts, rep


def test_nodal_3():
    pts, _ = _check(surface_nodal(3), {"A1": 4}, all_real=True)
    assert all(p.g_order == 2 for p in pts)


def test_nodal_6():
    _check(surface_nodal(6), {"A1": 59})


def test_cusp_nonic():
    pts, _ = _check(surface_belyi(9, jacobi_G(3, 3, 3)), {"A2": 127})
    by_value = {}
    for p in pts:
        key = round(complex(p.f_value).real)
        by_value[key] = by_value.get(key, 0) + 1
    assert by_value == {0: 36 * 3, -1: 19}


def test_two_vertex_nonic_real():
    S = surface_belyi(9, two_vertex_exact(4))
    pts, _ = _check(S, {"A4": 55}, all_real=True)
    radius = CTX.cluster_radius
    assert all(abs(c.imag) < radius for p in pts for c in p.coords)


@pytest.mark.parametrize(
    "d,B",
    [(3, lambda: jacobi_G(1, 2, 2)), (3, lambda: two_vertex_exact(1)), (15, lambda: jacobi_G(3, 4, 4)), (15, lambda: two_vertex_exact(7))],
)
def test_count_identity_closed_forms(d, B):
    S = surface_belyi(d, B())
    sig = S.provenance["signature"]
    expect = {f"A{sig.nu}": predicted_count_eq37(d, sig.s)}
    if sig.eps:
        expect[f"A{sig.eps}"] = extra_eps_count(d)
    assert predict_counts(S) == expect
    _check(S, expect)


# -- brute-force completeness ---------------------------------------------------

def _float_derivs(S):
    terms = [(i, j, complex(float(c))) for (i, j), c in S.f.terms.items()]
    g = np.array([float(c) for c in S.g.coeffs])
    g1 = np.polynomial.polynomial.polyder(g)
    g2 = np.polynomial.polynomial.polyder(g1)

    def ev(u, v):
        out = {k: 0 for k in ("f", "u", "v", "uu", "uv", "vv")}
        for i, j, c in terms:
            out["f"] = out["f"] + c * u**i * v**j
            if i:
                out["u"] = out["u"] + c * i * u ** (i - 1) * v**j
            if j:
                out["v"] = out["v"] + c * j * u**i * v ** (j - 1)
            if i > 1:
                out["uu"] = out["uu"] + c * i * (i - 1) * u ** (i - 2) * v**j
            if i and j:
                out["uv"] = out["uv"] + c * i * j * u ** (i - 1) * v ** (j - 1)
            if j > 1:
                out["vv"] = out["vv"] + c * j * (j - 1) * u**i * v ** (j - 2)
        return out

    P = np.polynomial.polynomial.polyval
    return ev, (lambda w: P(w, g)), (lambda w: P(w, g1)), (lambda w: P(w, g2))


def _sweep(S, n=9, span=2.5, steps=80):
    """Newton on grad F = 0 in C^3 from a coarse complex grid."""
    ev, g, g1, g2 = _float_derivs(S)
    axis = np.linspace(-span, span, n)
    re, im = np.meshgrid(axis, axis[::3] / 2, indexing="ij")
    zs = (re + 1j * im).ravel()
    U, V, W = (a.ravel() for a in np.meshgrid(zs, zs[::2], zs[::2], indexing="ij"))
    with np.errstate(all="ignore"):
        for _ in range(steps):
            e = ev(U, V)
            det = e["uu"] * e["vv"] - e["uv"] ** 2
            U, V = U - (e["vv"] * e["u"] - e["uv"] * e["v"]) / det, V - (e["uu"] * e["v"] - e["uv"] * e["u"]) / det
            W = W - g1(W) / g2(W)
        e = ev(U, V)
        ok = np.isfinite(U) & np.isfinite(V) & np.isfinite(W)
        ok &= (abs(e["u"]) < 1e-7) & (abs(e["v"]) < 1e-7) & (abs(g1(W)) < 1e-7)
        ok &= abs(e["f"] + g(W)) < 1e-6
    return np.stack([U[ok], V[ok], W[ok]], axis=1)


@pytest.mark.parametrize("make", [lambda: surface_nodal(3), lambda: surface_belyi(9, jacobi_G(3, 3, 3))])
def test_no_singular_points_outside_pairing(make):
    S = make()
    pts, _ = enumerate_singularities(S, CTX)
    known = np.array([[complex(c) for c in p.coords] for p in pts])
    found = _sweep(S)
    hit = set()
    for q in found:
        err = np.abs(known - q).max(axis=1)
        # double roots of g' converge linearly in w, hence the loose bound
        assert err.min() < 1e-3, q
        hit.add(int(err.argmin()))
    assert len(hit) >= len(known) // 2
