"""Hydrophobicity-driven fold scoring on the 2D square lattice."""
__version__ = "0.1.0"
