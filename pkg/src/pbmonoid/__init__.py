"""Computations in partial Brauer monoids."""
__version__ = "0.1.0"
