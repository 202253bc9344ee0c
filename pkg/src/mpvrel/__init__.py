"""Exact computations with multiple polylogarithm values at roots of unity."""

__version__ = "0.1.0"
