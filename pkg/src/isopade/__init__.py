"""Exact Hermite-Pade approximation, Mahler duality and Schlesinger transformations."""

__version__ = "0.1.0"
