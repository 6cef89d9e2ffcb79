"""Exact tools for Hilbert functions, Gorenstein quotients and nodal hypersurfaces."""

__version__ = "0.1.0"
