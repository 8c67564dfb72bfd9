"""Exact computations around Ehrhart h-vectors of Gorenstein lattice polytopes."""

__version__ = "0.1.0"
