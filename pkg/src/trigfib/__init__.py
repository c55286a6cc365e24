"""Exact Chebyshev/Fibonacci/Lucas identities, resolvent sums and circulant resistance."""

__version__ = "0.1.0"
