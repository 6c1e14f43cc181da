"""Exact computations for the Springer correspondence on (SL(2n+1), SO(2n+1))."""

__version__ = "1.0.0"
