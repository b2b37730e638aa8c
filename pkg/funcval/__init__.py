"""
funcval

Exact polytopes, piecewise-affine convex functions, Legendre-Fenchel
conjugation and SL(n)/translation-invariant valuations on convex functions,
with a verification CLI.
"""

__version__ = "1.0.0"
