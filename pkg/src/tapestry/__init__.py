"""Twisted Alexander polynomials and meridional epimorphism obstructions for knot groups."""

__version__ = "0.1.0"
