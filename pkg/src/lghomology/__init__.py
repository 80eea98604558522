"""Exact-arithmetic invariants of curved algebras from Landau-Ginzburg models."""

__version__ = "0.1.0"
