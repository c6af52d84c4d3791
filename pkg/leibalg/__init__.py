"""
Leibalg - exact computation of Lie-centroids, Lie-derivations and related
invariants of finite-dimensional Leibniz algebras.
"""

__version__ = "0.1.0"
