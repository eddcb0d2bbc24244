"""Exact computations around the Koszul map of finite-dimensional Lie algebras."""

__version__ = "0.1.0"
