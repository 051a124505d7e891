"""Isospectral graph reductions and eigenvalue inclusion regions over rational-function weights."""
from .wfield import LAM, NEG_INF, POLE, Poly, RationalFn, SpectrumList, poly_roots

__all__ = ["LAM", "NEG_INF", "POLE", "Poly", "RationalFn", "SpectrumList", "poly_roots"]
__version__ = "0.1.0"
