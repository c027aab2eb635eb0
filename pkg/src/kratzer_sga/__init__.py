"""Exact su(1,1) spectrum, isospectral family and Lie point symmetries of
u'' + (C/x^2 + D/x + E) u = 0, with a finite-difference cross-check."""

__version__ = "0.1.0"
