"""Exact invariants of plane curves built from lines and conics."""

__version__ = "0.1.0"
