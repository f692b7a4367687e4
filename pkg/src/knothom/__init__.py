"""Exact Khovanov homology, Lee/s-invariant, and grid knot Floer homology."""

__version__ = "0.1.0"
