"""Exact verification toolkit for Koornwinder polynomials and kernel identities of type BC."""

__version__ = "0.1.0"
