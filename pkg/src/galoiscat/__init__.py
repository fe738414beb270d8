"""Finite-scale Galois theory over concrete categories with a fiber functor."""

__version__ = "0.1.0"
