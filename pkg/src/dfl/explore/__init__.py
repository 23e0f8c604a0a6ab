"""Enumeration, optimality verification, flip descent and counterexample search."""
from dfl.explore.descent import FlipTrace, flip_descent, random_flip_walk
from dfl.explore.enumeration import (EnumerationResult, backtrack_triangulations,
                                     enumerate_triangulations)
from dfl.explore.lawson3d import QuadraticFormSummary, theorem8_form, two_triangulations_3d
from dfl.explore.sampling import random_convex_quad, random_heights, random_sites, stream
from dfl.explore.search import (ProbeReport, SearchKind, SearchReport, search_counterexample,
                                sv_epsilon_probe)
from dfl.explore.verify import (SequenceReport, VerificationReport, min_angle_direction,
                                verify_angle_sequence, verify_optimality,
                                verify_radius_sequence)

__all__ = [
    "EnumerationResult", "FlipTrace", "ProbeReport", "QuadraticFormSummary", "SearchKind",
    "SearchReport", "SequenceReport", "VerificationReport", "backtrack_triangulations",
    "enumerate_triangulations", "flip_descent", "min_angle_direction", "random_convex_quad",
    "random_flip_walk", "random_heights", "random_sites", "search_counterexample", "stream",
    "sv_epsilon_probe", "theorem8_form", "two_triangulations_3d", "verify_angle_sequence",
    "verify_optimality", "verify_radius_sequence",
]
