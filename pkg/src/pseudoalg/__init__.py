"""Associative pseudoalgebras over H = U(g), computed exactly."""

__version__ = "0.1.0"
