"""Genus-two A1 spherical DAHA: Psi polynomials, knot operators and mapping class group checks."""

__version__ = "0.1.0"
