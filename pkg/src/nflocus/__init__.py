"""Symbolic nonfree loci of rank-3 matroids over representation slices."""

__version__ = "0.1.0"
