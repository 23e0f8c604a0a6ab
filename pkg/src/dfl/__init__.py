"""Delaunay triangulation functionals.

Exact construction of planar Delaunay triangulations, evaluation of the
lifted-volume, centroid, circumradius, harmonic-index, surface-area and
Dirichlet functionals, and brute-force verification of which triangulation
optimises each one.
"""
__version__ = "0.1.0"

from dfl.delaunay import build_dt, degeneracy_scan, is_delaunay
from dfl.functionals import (Evaluator, FunctionalSpec, FunctionalValue, Kind, evaluate,
                             identity_residual, lct_check, lemma2_relation)
from dfl.geometry import Sign, SiteSet
from dfl.triangulation import Triangulation, canonical_key, flip_edge, validate

__all__ = [
    "Evaluator", "FunctionalSpec", "FunctionalValue", "Kind", "Sign", "SiteSet",
    "Triangulation", "build_dt", "canonical_key", "degeneracy_scan", "evaluate",
    "flip_edge", "identity_residual", "is_delaunay", "lct_check", "lemma2_relation",
    "validate",
]
