"""Exact computations for genus-5 fibrations cut out by 5x5 Pfaffians."""

__version__ = "0.1.0"
