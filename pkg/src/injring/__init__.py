"""Exact degreewise workbench for graded commutative rings over GF(2)."""

__version__ = "0.1.0"
