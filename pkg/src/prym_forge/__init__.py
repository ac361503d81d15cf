"""Exact computations for the n-gonal construction on permutation monodromy."""

__version__ = "0.1.0"
