"""Exact constructions of deltoid-line polynomials, tree-defined Belyi
polynomials, and split surfaces ``J_d(u,v) + G(w) = 0`` with their
A-type singularity counts."""

__version__ = "0.1.0"
