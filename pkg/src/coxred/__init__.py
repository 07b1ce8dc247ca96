"""Exact reflection-group arithmetic: Coxeter diagrams, their integral
reflection representations, reductions modulo primes, and the homology of
the resulting congruence kernels."""

__version__ = "0.1.0"
