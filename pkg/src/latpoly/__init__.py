"""Exact-arithmetic toolkit for lattice polytopes and toric geometry."""

__version__ = "0.1.0"
