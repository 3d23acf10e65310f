from fractions import Fraction

import pytest

from belyisurf.belyi import jacobi_G
from belyisurf.deltoid import build_J
from belyisurf.exactmath import PolyU, PolyUV
from belyisurf.solvekit import (
    BucketError,
    PositiveDimensionalError,
    PrecisionContext,
    _ctx,
    bucket_values,
    roots_univariate,
    solve_gradient_2d,
)

W = PolyU.x()
X, Y = PolyUV.gens()
CTX = PrecisionContext(256)
TARGETS = [Fraction(0), Fraction(8), Fraction(-1)]


def _near(z, w, tol=1e-60):
    return abs(complex(z) - complex(w)) < 1e-12 and abs(z - w) < tol


def test_precision_context():
    assert 0 < CTX.cluster_radius < 1e-8 and 0 < CTX.value_tolerance < 1e-8
    assert CTX.doubled().bits == 512


def test_precision_env(monkeypatch):
    monkeypatch.setenv("FORGE_PRECISION_BITS", "384")
    assert PrecisionContext().bits == 384


def test_roots_examples():
    r = roots_univariate(W**2 - 1, CTX)
    assert [(round(complex(z).real), m) for z, m in r] == [(-1, 1), (1, 1)]
    r = roots_univariate((W - 2) ** 3, CTX)
    assert len(r) == 1 and r[0][1] == 3 and abs(complex(r[0][0]) - 2) < 1e-60


def test_roots_G666_derivative():
    d = jacobi_G(6, 6, 6).poly.derive()
    r = roots_univariate(d, CTX)
    s3 = 3**0.5
    expect = [0, 2, complex(0.5, s3 / 2), complex(0.5, -s3 / 2), complex(1.5, s3 / 2), complex(1.5, -s3 / 2), 1]
    assert sum(m for _, m in r) == d.degree
    assert all(m == 5 for _, m in r) and len(r) == 7
    for e in expect:
        assert any(abs(complex(z) - e) < 1e-40 for z, _ in r)


def test_roots_residuals():
    P = PolyU([Fraction(-5), Fraction(45, 7), Fraction(-45, 11), 1])
    for z, _ in roots_univariate(P, CTX):
        from belyisurf.solvekit import poly_residual

        assert poly_residual(P, z, 288) < CTX.residual_bound


def test_gradient_quadratic():
    pts = solve_gradient_2d(X**2 + Y**2, CTX)
    assert len(pts) == 1
    p = pts[0]
    assert abs(p.x) < 1e-60 and abs(p.y) < 1e-60 and abs(p.value) < 1e-60
    assert abs(p.hessian_det - 4) < 1e-60


def test_gradient_J3():
    pts = solve_gradient_2d(build_J(3).J, CTX)
    assert len(pts) == 4
    assert bucket_values(pts, TARGETS, CTX) == {0: 3, 8: 0, -1: 1}


def test_gradient_positive_dimensional():
    with pytest.raises(PositiveDimensionalError):
        solve_gradient_2d((X + Y) ** 2, CTX)


def test_bucket_examples():
    assert bucket_values([], TARGETS, CTX) == {0: 0, 8: 0, -1: 0}
    pts = solve_gradient_2d(build_J(4).J, CTX)
    assert bucket_values(pts, TARGETS, CTX) == {0: 6, 8: 1, -1: 2}
    with pytest.raises(BucketError):
        bucket_values(pts, [Fraction(0), Fraction(8)], CTX)


def test_J9_total_and_buckets():
    pts = solve_gradient_2d(build_J(9).J, CTX)
    assert len(pts) == 64
    assert bucket_values(pts, TARGETS, CTX) == {0: 36, 8: 9, -1: 19}


def test_determinism():
    a = solve_gradient_2d(build_J(5).J, CTX)
    b = solve_gradient_2d(build_J(5).J, CTX)
    assert [p.key() for p in a] == [p.key() for p in b]
    assert [str(p.x) for p in a] == [str(p.x) for p in b]
    keys = [p.key() for p in a]
    assert keys == sorted(keys)


def test_separation_and_residuals():
    pts = solve_gradient_2d(build_J(7).J, CTX)
    for i, p in enumerate(pts):
        assert p.newton_residual < CTX.residual_bound
        for q in pts[i + 1 :]:
            assert abs(p.x - q.x) + abs(p.y - q.y) > CTX.cluster_radius


def test_product_of_lines_zero_points():
    lines = [X + 2 * Y - 1, X - Y + 3, 3 * X + Y + Fraction(1, 2), X + 5 * Y - 7]
    F = PolyUV.const(1)
    for L in lines:
        F = F * L
    pts = solve_gradient_2d(F, CTX)
    zeros = [p for p in pts if abs(p.value) < CTX.value_tolerance]
    crossings = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a, b = lines[i], lines[j]
            a1, b1, c1 = a.coeff(1, 0), a.coeff(0, 1), a.coeff(0, 0)
            a2, b2, c2 = b.coeff(1, 0), b.coeff(0, 1), b.coeff(0, 0)
            det = a1 * b2 - a2 * b1
            crossings.append(((b1 * c2 - b2 * c1) / det, (a2 * c1 - a1 * c2) / det))
    assert len(zeros) == len(crossings) == 6
    for x, y in crossings:
        hit = [p for p in zeros if abs(complex(p.x) - complex(x)) + abs(complex(p.y) - complex(y)) < 1e-12]
        assert len(hit) == 1
    # each numeric zero lies on two lines to well within the cluster radius
    with _ctx(CTX.bits + 32):
        for p in zeros:
            on = [L for L in lines if abs(L(p.x, p.y)) < CTX.cluster_radius]
            assert len(on) == 2


@pytest.mark.parametrize("d", [4, 6, 8, 10, 12])
def test_precision_doubling_stable(d):
    J = build_J(d).J
    a = bucket_values(solve_gradient_2d(J, CTX), TARGETS, CTX)
    ctx2 = CTX.doubled()
    b = bucket_values(solve_gradient_2d(J, ctx2), TARGETS, ctx2)
    assert a == b
