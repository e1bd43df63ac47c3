"""Finite-scale laboratory for abstract forcing."""

__version__ = "0.1.0"
