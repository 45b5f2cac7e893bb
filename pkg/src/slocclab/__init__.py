"""Exact-arithmetic laboratory for asymptotic SLOCC tensor transformations."""

__version__ = "0.1.0"
