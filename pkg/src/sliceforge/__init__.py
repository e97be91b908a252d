"""Exact-arithmetic engine for C4-equivariant slice and Tate spectral sequences."""

__version__ = "0.1.0"
