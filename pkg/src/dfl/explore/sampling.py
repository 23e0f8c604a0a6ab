"""Seeded random inputs.

Each iteration of a randomized procedure draws from its own stream derived
from ``(seed, index)``, so results do not depend on execution order.
"""
from __future__ import annotations

import numpy as np

from dfl.delaunay import degeneracy_scan
from dfl.errors import Degenerate, NotConvex
from dfl.functionals import delaunay_diagonal
from dfl.geometry import SiteSet, convex_hull_2d


def stream(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(index)])


def random_sites(rng: np.random.Generator, n: int, dim: int = 2, bits: int = 10,
                 max_tries: int = 10_000) -> SiteSet:
    """General-position site set with integer coordinates in [0, 2**bits)."""
    for _ in range(max_tries):
        pts = {tuple(int(x) for x in rng.integers(0, 1 << bits, size=dim)) for _ in range(n)}
        if len(pts) != n:
            continue
        try:
            sites = SiteSet(sorted(pts))
        except ValueError:
            continue
        if degeneracy_scan(sites).clean:
            return sites
    raise RuntimeError(f"no general-position set of {n} sites found")


def random_heights(rng: np.random.Generator, n: int, bits: int = 10, signed: bool = True):
    lo = -(1 << bits) if signed else 0
    return [int(y) for y in rng.integers(lo, 1 << bits, size=n)]


def random_convex_quad(rng: np.random.Generator, bits: int = 10, max_tries: int = 10_000):
    """Four points in strictly convex, non-cocircular position, CCW order."""
    for _ in range(max_tries):
        pts = [tuple(int(x) for x in rng.integers(0, 1 << bits, size=2)) for _ in range(4)]
        if len(set(pts)) != 4:
            continue
        try:
            ring = convex_hull_2d([tuple(map(int, p)) for p in pts])
        except ValueError:
            continue
        if len(ring) != 4:
            continue
        quad = [pts[i] for i in ring]
        try:
            delaunay_diagonal(quad)
        except (NotConvex, Degenerate):
            continue
        return quad
    raise RuntimeError("no convex quadrilateral found")
