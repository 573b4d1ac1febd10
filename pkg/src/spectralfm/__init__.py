"""Exact spectral-cover computations on Weierstrass cubic fibrations."""

__version__ = "0.1.0"
