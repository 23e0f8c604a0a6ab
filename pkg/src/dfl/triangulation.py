"""Triangulations as immutable sets of sorted simplices over a SiteSet."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from dfl.errors import (DegenerateSimplex, DimensionMismatch, InvalidTriangulation,
                        NotConvex, NotInterior)
from dfl.geometry import SiteSet, simplex_volume

Simplex = tuple  # sorted tuple of site indices


def _facets(s: Simplex):
    for i in range(len(s)):
        yield s[:i] + s[i + 1:], s[i]


class Triangulation:
    """A set of d-simplices over ``sites``.

    Simplices are stored as sorted index tuples, so two triangulations with
    the same simplex set compare and hash equal. Construction rejects
    out-of-range indices and zero-volume simplices; :func:`validate` checks
    that the simplices actually tile the convex hull.
    """

    def __init__(self, sites: SiteSet, simplices, *, _trusted=False):
        self.sites = sites
        if _trusted:
            self.simplices = frozenset(simplices)
        else:
            d = sites.dim
            norm = set()
            for s in simplices:
                s = tuple(sorted(int(i) for i in s))
                if len(s) != d + 1:
                    raise DimensionMismatch(f"simplex {s} needs {d + 1} vertices")
                if len(set(s)) != len(s) or s[0] < 0 or s[-1] >= len(sites):
                    raise InvalidTriangulation(f"bad vertex indices in simplex {s}")
                if sites.orient(*s) == 0:
                    raise DegenerateSimplex(f"simplex {s} has zero volume")
                norm.add(s)
            self.simplices = frozenset(norm)
        self._adjacency = None
        self._valid = None

    @property
    def dim(self) -> int:
        return self.sites.dim

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(sorted(self.simplices))

    def __eq__(self, other):
        return (isinstance(other, Triangulation)
                and self.simplices == other.simplices
                and (self.sites is other.sites or self.sites == other.sites))

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        return f"Triangulation({len(self)} simplices over {self.sites!r})"

    @property
    def adjacency(self) -> dict:
        """Map facet -> tuple of (simplex, opposite vertex) pairs."""
        if self._adjacency is None:
            adj: dict = {}
            for s in self.simplices:
                for f, v in _facets(s):
                    adj.setdefault(f, []).append((s, v))
            self._adjacency = {f: tuple(v) for f, v in adj.items()}
        return self._adjacency

    def interior_facets(self):
        return sorted(f for f, inc in self.adjacency.items() if len(inc) == 2)

    def volume(self) -> Fraction:
        return sum((simplex_volume(self.sites.simplex(s)) for s in self.simplices),
                   Fraction(0))

    def is_valid(self) -> bool:
        if self._valid is None:
            self._valid = validate(self).valid
        return self._valid

    def require_valid(self):
        if not self.is_valid():
            raise InvalidTriangulation("; ".join(validate(self).violations))


@dataclass
class ValidityReport:
    valid: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.valid


def _separated(sites: SiteSet, s: Simplex, t: Simplex) -> bool:
    """True when the interiors of the two simplices are disjoint (exact SAT)."""
    p = sites.ints
    d = sites.dim
    if d == 2:
        axes = []
        for tri in (s, t):
            for a, b in itertools.combinations(tri, 2):
                ex, ey = p[b][0] - p[a][0], p[b][1] - p[a][1]
                axes.append((-ey, ex))
    elif d == 3:
        axes = []
        edges = []
        for tet in (s, t):
            for a, b, c in itertools.combinations(tet, 3):
                axes.append(_cross(_sub(p[b], p[a]), _sub(p[c], p[a])))
            edges.extend(_sub(p[b], p[a]) for a, b in itertools.combinations(tet, 2))
        for u in edges[:6]:
            for v in edges[6:]:
                axes.append(_cross(u, v))
    else:
        raise DimensionMismatch("overlap test supports d = 2 and d = 3")
    for ax in axes:
        if not any(ax):
            continue
        ps = [sum(a * b for a, b in zip(ax, p[i])) for i in s]
        pt = [sum(a * b for a, b in zip(ax, p[i])) for i in t]
        if max(ps) <= min(pt) or max(pt) <= min(ps):
            return True
    return False


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def validate(t: Triangulation) -> ValidityReport:
    """Check that ``t`` is a triangulation of the convex hull of its sites."""
    sites = t.sites
    out = []
    if not t.simplices:
        return ValidityReport(False, ["empty triangulation"])
    for s in sorted(t.simplices):
        if sites.orient(*s) == 0:
            out.append(f"degenerate simplex {s}")
    if out:
        return ValidityReport(False, out)

    total = t.volume()
    hull = sites.hull_volume()
    if total != hull:
        out.append(f"volume sum {total} != hull volume {hull}")

    used = set(itertools.chain.from_iterable(t.simplices))
    missing = sorted(set(range(len(sites))) - used)
    if missing:
        out.append(f"sites not used as vertices: {missing}")

    n = len(sites)
    for f, inc in sorted(t.adjacency.items()):
        if len(inc) > 2:
            out.append(f"facet {f} shared by {len(inc)} simplices")
        elif len(inc) == 1:
            signs = {sites.orient(*f, q) for q in range(n)} - {0}
            if len(signs) > 1:
                out.append(f"dangling facet {f} is not on the convex hull")
        else:
            (_, u), (_, v) = inc
            if sites.orient(*f, u) * sites.orient(*f, v) >= 0:
                out.append(f"simplices across facet {f} lie on the same side")

    simplices = sorted(t.simplices)
    for s, r in itertools.combinations(simplices, 2):
        if not _separated(sites, s, r):
            out.append(f"simplices {s} and {r} overlap")
    return ValidityReport(not out, out)


def interior_edges(t: Triangulation) -> list[tuple[int, int]]:
    if t.dim != 2:
        raise DimensionMismatch("interior_edges is planar only")
    return t.interior_facets()


def quad_of_edge(t: Triangulation, edge) -> tuple[int, int, int, int]:
    """Return (i, k, j, l): the quadrilateral around interior edge (i, j)
    with opposite vertices k and l."""
    edge = tuple(sorted(edge))
    inc = t.adjacency.get(edge)
    if inc is None or len(inc) != 2:
        raise NotInterior(f"edge {edge} is not an interior edge")
    (_, k), (_, l) = inc
    return edge[0], k, edge[1], l


def is_flippable(t: Triangulation, edge) -> bool:
    i, k, j, l = quad_of_edge(t, edge)
    o = t.sites.orient
    return o(k, l, i) * o(k, l, j) < 0


def flip_edge(t: Triangulation, edge) -> Triangulation:
    """Replace interior edge ``edge`` by the other diagonal of its quadrilateral."""
    if t.dim != 2:
        raise DimensionMismatch("flip_edge is planar only")
    i, k, j, l = quad_of_edge(t, edge)
    o = t.sites.orient
    if o(k, l, i) * o(k, l, j) >= 0:
        raise NotConvex(f"quadrilateral around edge {(i, j)} is not strictly convex")
    old = {tuple(sorted((i, j, k))), tuple(sorted((i, j, l)))}
    new = {tuple(sorted((k, l, i))), tuple(sorted((k, l, j)))}
    return Triangulation(t.sites, (t.simplices - old) | new, _trusted=True)


def canonical_key(t: Triangulation) -> str:
    """Serialised sorted simplex list; equal iff the simplex sets are equal."""
    return ";".join(" ".join(map(str, s)) for s in sorted(t.simplices))


def from_key(sites: SiteSet, key: str) -> Triangulation:
    simplices = [tuple(int(x) for x in part.split()) for part in key.split(";") if part]
    return Triangulation(sites, simplices)
