"""Exhaustive enumeration of planar triangulations.

The primary route is a breadth-first closure of the Delaunay triangulation
under edge flips. An independent backtracking tiler, which never flips,
exists only to cross-check it.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from dfl import kernels
from dfl.delaunay import build_dt
from dfl.errors import DimensionMismatch, InvariantViolation, TooManySites
from dfl.geometry import SiteSet
from dfl.triangulation import (Triangulation, _separated, canonical_key, flip_edge,
                               interior_edges, is_flippable)

DEFAULT_CAP = 10


@dataclass
class EnumerationResult:
    triangulations: list
    dt: Triangulation

    @property
    def count(self) -> int:
        return len(self.triangulations)

    @property
    def dt_key(self) -> str:
        return canonical_key(self.dt)

    def keys(self) -> list[str]:
        return [canonical_key(t) for t in self.triangulations]

    def to_dict(self) -> dict:
        return {"count": self.count, "dt_key": self.dt_key, "keys": self.keys()}


def enumerate_triangulations(sites: SiteSet, cap: int = DEFAULT_CAP) -> EnumerationResult:
    if sites.dim != 2:
        raise DimensionMismatch("enumeration is planar only")
    if len(sites) > cap:
        raise TooManySites(f"{len(sites)} sites exceeds the enumeration cap of {cap}")
    dt = build_dt(sites)
    seen = {dt.simplices}
    out = [dt]
    queue = deque([dt])
    while queue:
        t = queue.popleft()
        for e in interior_edges(t):
            if not is_flippable(t, e):
                continue
            u = flip_edge(t, e)
            if u.simplices not in seen:
                seen.add(u.simplices)
                out.append(u)
                queue.append(u)
    size = len(dt)
    if any(len(t) != size for t in out):
        raise InvariantViolation("triangulations with different triangle counts")
    return EnumerationResult(out, dt)


def backtrack_triangulations(sites: SiteSet) -> list[frozenset]:
    """All triangulations, found by growing tilings from a hull edge."""
    if sites.dim != 2:
        raise DimensionMismatch("tiler is planar only")
    p = sites.ints
    n = len(p)
    o = kernels.orient2d

    def strictly_between(i, j, q):
        a, b, c = p[i], p[j], p[q]
        return (o(a, b, c) == 0 and min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    def empty(tri):
        i, j, k = tri
        s = o(p[i], p[j], p[k])
        for q in range(n):
            if q in tri:
                continue
            if (o(p[i], p[j], p[q]) * s >= 0 and o(p[j], p[k], p[q]) * s >= 0
                    and o(p[k], p[i], p[q]) * s >= 0):
                return False
        return True

    tris = [t for t in itertools.combinations(range(n), 3)
            if o(*(p[i] for i in t)) != 0 and empty(t)]
    by_edge: dict = {}
    for t in tris:
        for e in itertools.combinations(t, 2):
            by_edge.setdefault(e, []).append(t)

    hull = {}
    for i, j in itertools.combinations(range(n), 2):
        sides = {o(p[i], p[j], p[q]) for q in range(n)} - {0}
        if len(sides) == 1 and not any(strictly_between(i, j, q)
                                       for q in range(n) if q not in (i, j)):
            hull[(i, j)] = sides.pop()

    results = []
    start = min(hull)

    def third(tri, e):
        return next(v for v in tri if v not in e)

    def grow(chosen, open_edges, closed):
        if not open_edges:
            results.append(frozenset(chosen))
            return
        e = min(open_edges)
        need = open_edges[e]
        for tri in by_edge.get(e, ()):
            k = third(tri, e)
            if o(p[e[0]], p[e[1]], p[k]) != need:
                continue
            if any(not _separated(sites, tri, c) for c in chosen):
                continue
            new_open = dict(open_edges)
            new_closed = set(closed)
            ok = True
            for f in itertools.combinations(tri, 2):
                side = o(p[f[0]], p[f[1]], p[third(tri, f)])
                if f in new_open:
                    if new_open[f] != side:
                        ok = False
                        break
                    del new_open[f]
                    new_closed.add(f)
                elif f in new_closed:
                    ok = False
                    break
                elif f in hull:
                    if hull[f] != side:
                        ok = False
                        break
                    new_closed.add(f)
                else:
                    new_open[f] = -side
            if ok:
                grow(chosen + [tri], new_open, new_closed)

    grow([], {start: hull[start]}, set())
    return results
