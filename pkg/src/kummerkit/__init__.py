"""Exact computations on Kummer planes, Humbert invariants and boundary maps."""

__version__ = "0.1.0"
