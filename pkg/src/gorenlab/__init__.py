"""Exact Gorenstein-periodicity engine for modules over quiver algebras."""

__version__ = "0.1.0"
