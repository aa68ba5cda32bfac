"""Genus-zero GV invariants and quantum K-theory J-functions, in exact arithmetic."""

__version__ = "0.1.0"
