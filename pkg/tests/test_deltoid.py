from fractions import Fraction
from math import comb

import mpmath
import pytest

from belyisurf.deltoid import (
    RationalityError,
    build_J,
    census_closed_form,
    chebyshev_axis_difference,
    critical_profile_J,
    lambda_norm,
    line_form,
    mu_range,
    verify_chebyshev_axis,
)
from belyisurf.exactmath import PolyU, PolyUV
from belyisurf.solvekit import PrecisionContext


def test_lambda_examples():
    assert lambda_norm(4).to_rational() == -1
    assert lambda_norm(6).to_rational() == 1
    l3 = lambda_norm(3)
    assert (l3 * l3).to_rational() == 3
    assert abs(complex(l3) - 3**0.5) < 1e-12


def test_mu_range_examples():
    assert list(mu_range(3)) == [0, 1, 2]
    assert list(mu_range(5)) == [-1, 0, 1, 2, 3]
    assert all(len(mu_range(d)) == d for d in range(3, 60))
    with pytest.raises(ValueError):
        line_form(3, 5)


@pytest.mark.parametrize("d", [3, 4, 7, 12])
def test_lines_match_float_construction(d):
    with mpmath.workprec(200):
        for mu in mu_range(d):
            L = line_form(d, mu)
            assert not L.vertical
            th = mpmath.pi * (6 * mu - 1) / (6 * d)
            a, b, c = L.to_complex(200)
            direct = (-mpmath.tan(th), mpmath.mpf(1), mpmath.cos(2 * th) * mpmath.tan(th) + mpmath.sin(2 * th))
            for got, want in zip((a, b, c), direct):
                assert abs(got - want) < mpmath.mpf(10) ** -40
            dist = abs(c) / mpmath.sqrt(abs(a) ** 2 + abs(b) ** 2)
            assert abs(dist - abs(mpmath.sin(3 * th))) < mpmath.mpf(10) ** -40


def test_J3_axis_and_degree():
    J = build_J(3).J
    assert J.substitute("y", 0) == PolyU([-1, 0, 3, -1], "x")
    for d in range(3, 13):
        assert build_J(d).J.total_degree == d


@pytest.mark.parametrize("d", [3, 9])
def test_chebyshev_axis(d):
    assert verify_chebyshev_axis(d)
    assert chebyshev_axis_difference(d).is_zero()


def test_chebyshev_axis_mutation():
    J = build_J(6).J
    terms = dict(J.terms)
    terms[(2, 0)] = terms.get((2, 0), 0) + 1
    assert not verify_chebyshev_axis(6, PolyUV(terms))


def test_jhat_relation():
    fam = build_J(4)
    # J-hat(x, sqrt3 y) = J(x, 3 y) ... checked numerically at a point
    x, y = Fraction(1, 3), Fraction(-2, 5)
    s3 = 3**0.5
    jh = sum(complex(c) * float(x) ** i * (float(y) / s3) ** j for (i, j), c in fam.jhat.terms.items())
    assert abs(jh - float(fam.J(x, y))) < 1e-12


def test_jhat_is_lambda_times_lines():
    fam = build_J(5)
    x, y = Fraction(2, 7), Fraction(1, 9)
    prod = fam.lam
    for L in fam.lines:
        prod = prod * L(x, y)
    assert prod == fam.jhat(x, y)


def test_rationality_error_type():
    assert issubclass(RationalityError, ArithmeticError)


def test_census_closed_form_totals():
    for d in range(3, 40):
        c = census_closed_form(d)
        assert c[0] == comb(d, 2)
        assert sum(c.values()) == (d - 1) ** 2
        if d % 3 == 0:
            assert c[8] == d * (d - 3) // 6 and c[-1] == d * d // 3 - d + 1
        else:
            assert c[8] == (d - 1) * (d - 2) // 6 and c[-1] == (d - 1) * (d - 2) // 3


@pytest.mark.parametrize("d,expect", [(3, {0: 3, 8: 0, -1: 1}), (4, {0: 6, 8: 1, -1: 2}), (9, {0: 36, 8: 9, -1: 19})])
def test_critical_profile_examples(d, expect):
    assert critical_profile_J(d, PrecisionContext(256)).as_int_keys() == expect


@pytest.mark.parametrize("d", range(3, 16))
def test_distinct_crossings_and_morse_zero_points(d):
    fam = build_J(d)
    pts = fam.line_points()
    assert len(pts) == comb(d, 2)
    keys = {(complex(x).real.__round__(9), complex(y).real.__round__(9)) for _, (x, y) in pts}
    assert len(keys) == comb(d, 2)
    if d <= 15:
        census = critical_profile_J(d, PrecisionContext(256))
        assert census.morse[Fraction(0)]
        assert census.morse[Fraction(-1)]
