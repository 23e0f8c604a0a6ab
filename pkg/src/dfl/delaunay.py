"""Planar Delaunay construction, Delaunay certificates and degeneracy scans."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from dfl.errors import DimensionMismatch, InvariantViolation
from dfl.geometry import SiteSet
from dfl.triangulation import Triangulation


def _tri(a, b, c):
    return tuple(sorted((a, b, c)))


def _edge(a, b):
    return (a, b) if a < b else (b, a)


def sweep_triangulation(sites: SiteSet) -> set:
    """Some valid triangulation: insert sites in lexicographic order, joining
    each to the hull edges it sees."""
    if sites.dim != 2:
        raise DimensionMismatch("planar construction only")
    orient = sites.orient
    order = sorted(range(len(sites)), key=lambda i: sites.ints[i])
    m = 2
    while orient(order[0], order[1], order[m]) == 0:
        m += 1
    apex = order[m]
    tris = {_tri(order[t], order[t + 1], apex) for t in range(m - 1)}
    if orient(order[0], order[m - 1], apex) > 0:
        hull = order[:m] + [apex]
    else:
        hull = order[m - 1::-1] + [apex]

    for p in order[m + 1:]:
        h = len(hull)
        vis = [orient(hull[a], hull[(a + 1) % h], p) < 0 for a in range(h)]
        start = next(a for a in range(h) if vis[a] and not vis[a - 1])
        a = start
        while vis[a % h]:
            tris.add(_tri(hull[a % h], hull[(a + 1) % h], p))
            a += 1
        end = a % h  # first vertex after the visible chain
        keep = [hull[(end + t) % h] for t in range((start - end) % h + 1)]
        hull = keep + [p]
    return tris


def _lift_weight(sites: SiteSet, tri) -> int:
    """Integer proportional to the V contribution of a triangle."""
    p = sites.ints
    a, b, c = (p[i] for i in tri)
    det = abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    return sum(x * x + y * y for x, y in (a, b, c)) * det


def build_dt(sites: SiteSet) -> Triangulation:
    """Delaunay triangulation by Lawson flips from a sweep triangulation.

    Cocircular quadruples are left unflipped. Every flip is checked to
    strictly lower the lifted volume V; a failure raises InvariantViolation.
    """
    tris = sweep_triangulation(sites)
    opp: dict = {}
    for t in tris:
        for e, v in ((t[:2], t[2]), ((t[0], t[2]), t[1]), (t[1:], t[0])):
            opp.setdefault(e, set()).add(v)
    stack = sorted((e for e, v in opp.items() if len(v) == 2), reverse=True)
    while stack:
        e = stack.pop()
        thirds = opp.get(e)
        if thirds is None or len(thirds) != 2:
            continue
        i, j = e
        k, l = sorted(thirds)
        if sites.incircle(i, j, k, l) <= 0:
            continue
        if sites.orient(k, l, i) * sites.orient(k, l, j) >= 0:
            raise InvariantViolation(f"illegal edge {e} bounds a non-convex quadrilateral")
        before = _lift_weight(sites, (i, j, k)) + _lift_weight(sites, (i, j, l))
        after = _lift_weight(sites, (k, l, i)) + _lift_weight(sites, (k, l, j))
        if not after < before:
            raise InvariantViolation(f"flip of {e} did not decrease V")
        tris -= {_tri(i, j, k), _tri(i, j, l)}
        tris |= {_tri(k, l, i), _tri(k, l, j)}
        del opp[e]
        opp[_edge(k, l)] = {i, j}
        for a, b, old, new in ((i, k, j, l), (k, j, i, l), (j, l, i, k), (l, i, j, k)):
            s = opp[_edge(a, b)]
            s.discard(old)
            s.add(new)
            stack.append(_edge(a, b))
    return Triangulation(sites, tris, _trusted=True)


@dataclass
class DelaunayCheck:
    is_delaunay: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.is_delaunay


def delaunay_witness(t: Triangulation):
    """First interior facet violating the empty-sphere test, or None."""
    s = t.sites
    for f in t.interior_facets():
        (simplex, _), (_, q) = t.adjacency[f]
        if t.dim == 2:
            sign = s.incircle(*simplex, q)
        elif t.dim == 3:
            sign = s.insphere(*simplex, q)
        else:
            raise DimensionMismatch("Delaunay test supports d = 2 and d = 3")
        if sign > 0:
            return f
    return None


def is_delaunay(t: Triangulation) -> DelaunayCheck:
    t.require_valid()
    w = delaunay_witness(t)
    return DelaunayCheck(w is None, w)


@dataclass
class DegeneracyReport:
    collinear: list = field(default_factory=list)
    cocircular: list = field(default_factory=list)
    coplanar: list = field(default_factory=list)
    cospherical: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.collinear or self.cocircular or self.coplanar or self.cospherical)

    def __bool__(self):
        return not self.clean

    def to_dict(self):
        return {k: [list(x) for x in getattr(self, k)]
                for k in ("collinear", "cocircular", "coplanar", "cospherical")}


def _cospherical(sites: SiteSet, idx, flat, test) -> bool:
    """Whether all points of ``idx`` lie on one (d-1)-sphere, using any
    non-flat base simplex."""
    for base_pos in range(len(idx)):
        base = idx[:base_pos] + idx[base_pos + 1:]
        if flat(*base) == 0:
            continue
        return test(*base, idx[base_pos]) == 0
    return False


def degeneracy_scan(sites: SiteSet) -> DegeneracyReport:
    """Brute-force list of general-position violations (intended for small n)."""
    n = len(sites)
    rep = DegeneracyReport()
    if sites.dim == 2:
        for tri in itertools.combinations(range(n), 3):
            if sites.orient(*tri) == 0:
                rep.collinear.append(tri)
        for quad in itertools.combinations(range(n), 4):
            if _cospherical(sites, quad, sites.orient, sites.incircle):
                rep.cocircular.append(quad)
    elif sites.dim == 3:
        for quad in itertools.combinations(range(n), 4):
            if sites.orient(*quad) == 0:
                rep.coplanar.append(quad)
        for five in itertools.combinations(range(n), 5):
            if _cospherical(sites, five, sites.orient, sites.insphere):
                rep.cospherical.append(five)
    else:
        raise DimensionMismatch("degeneracy scan supports d = 2 and d = 3")
    return rep
