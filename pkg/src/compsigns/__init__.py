"""Exact-arithmetic toolkit for composition polynomials and the sign
behaviour of their alternating weighted part-count sums."""

from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
