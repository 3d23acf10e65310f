"""Exact scalar and polynomial arithmetic."""
from fractions import Fraction as Rational

from .algebra import (
    bareiss_det,
    is_squarefree_certified,
    poly_gcd,
    resultant,
    resultant_univariate,
    squarefree_decomposition,
    squarefree_profile,
)
from .cyclotomic import AlgebraicScalar, VerticalLineError, cyclotomic_poly, trig_scalar
from .poly import PolyU, PolyUV, ScalarFieldError
from .special import chebyshev_T, gen_binomial, jacobi_shifted

__all__ = [
    "Rational",
    "AlgebraicScalar",
    "VerticalLineError",
    "PolyU",
    "PolyUV",
    "ScalarFieldError",
    "bareiss_det",
    "chebyshev_T",
    "cyclotomic_poly",
    "gen_binomial",
    "is_squarefree_certified",
    "jacobi_shifted",
    "poly_gcd",
    "resultant",
    "resultant_univariate",
    "squarefree_decomposition",
    "squarefree_profile",
    "trig_scalar",
]
