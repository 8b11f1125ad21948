"""Cone stratification toolkit: Jordan algebras, orthogonal polynomials, Bessel operators and symmetry breaking transforms."""

__version__ = "0.1.0"
