"""Exact geometric primitives.

Points are tuples of :class:`fractions.Fraction`. Signs come from the
integer kernels in :mod:`dfl.kernels` after scaling coordinates to a common
denominator, which preserves every predicate's sign. Measures are returned
as exact fractions; lengths and radii are carried squared.
"""
from __future__ import annotations

import enum
import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

from dfl import kernels
from dfl.errors import (AllCollinear, DegenerateSimplex, DegenerateTetrahedron,
                        DegenerateTriangle, DimensionMismatch, DuplicateSite,
                        TooFewSites)

Point = tuple  # tuple[Fraction, ...]


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def to_fraction(x) -> Fraction:
    """Exact rational for ``x``; floats are read through their decimal repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite coordinate {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if hasattr(x, "_mpf_"):
        sign, man, exp, _ = x._mpf_
        if not man and exp:
            raise ValueError(f"non-finite coordinate {x!r}")
        q = Fraction(man) * Fraction(2) ** exp
        return -q if sign else q
    try:
        return Fraction(x)
    except TypeError:
        # mpmath and similar: go through a long decimal string
        return Fraction(str(x))


def exact_decimal(q) -> str:
    """Finite decimal text for ``q`` when one exists, else "p/q"."""
    q = Fraction(q)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(q.numerator)
    scaled = abs(q.numerator) * 10 ** places // q.denominator
    digits = str(scaled).rjust(places + 1, "0")
    text = f"{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")
    return ("-" if q < 0 else "") + text


def as_point(coords: Iterable) -> Point:
    return tuple(to_fraction(c) for c in coords)


def _points(pts, count=None) -> list[Point]:
    pts = [as_point(p) for p in pts]
    if not pts:
        raise DimensionMismatch("no points given")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    if count is not None and len(pts) != count(d):
        raise DimensionMismatch(f"expected {count(d)} points of dimension {d}, "
                                f"got {len(pts)}")
    return pts


def scale_to_int(pts: Sequence[Point]) -> tuple[list[tuple[int, ...]], int]:
    """Multiply all coordinates by the lcm of their denominators."""
    den = 1
    for p in pts:
        for c in p:
            den = den * c.denominator // math.gcd(den, c.denominator)
    return [tuple(int(c * den) for c in p) for p in pts], den


def _det(rows: list[list]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                row_r, row_c = m[r], m[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return det


def _int_orient(ipts) -> int:
    d = len(ipts[0])
    if d == 2:
        return kernels.orient2d(*ipts)
    if d == 3:
        return kernels.orient3d(*ipts)
    o = ipts[0]
    det = _det([[p[i] - o[i] for i in range(d)] for p in ipts[1:]])
    return (det > 0) - (det < 0)


def orientation(simplex_vertices) -> Sign:
    """Sign of det[v1 - v0, ..., vd - v0]."""
    pts = _points(simplex_vertices, lambda d: d + 1)
    ipts, _ = scale_to_int(pts)
    return Sign(_int_orient(ipts))


def in_circle(a, b, c, q) -> Sign:
    """Raw in-circle sign: POSITIVE iff ``q`` is strictly inside the circle
    through ``a, b, c`` *and* ``a, b, c`` is counter-clockwise. Callers with
    clockwise triangles must negate.
    """
    pts = _points([a, b, c, q], lambda d: 4)
    if len(pts[0]) != 2:
        raise DimensionMismatch("in_circle needs planar points")
    ipts, _ = scale_to_int(pts)
    if kernels.orient2d(*ipts[:3]) == 0:
        raise DegenerateTriangle("collinear triangle has no circumcircle")
    return Sign(kernels.incircle(*ipts))


def in_sphere(a, b, c, d, q) -> Sign:
    """POSITIVE iff ``q`` is strictly inside the circumsphere of the
    tetrahedron, whatever its vertex order."""
    pts = _points([a, b, c, d, q], lambda dim: 5)
    if len(pts[0]) != 3:
        raise DimensionMismatch("in_sphere needs points in R^3")
    ipts, _ = scale_to_int(pts)
    o = kernels.orient3d(*ipts[:4])
    if o == 0:
        raise DegenerateTetrahedron("coplanar tetrahedron has no circumsphere")
    return Sign(o * kernels.insphere(*ipts))


def signed_volume(simplex_vertices) -> Fraction:
    pts = _points(simplex_vertices, lambda d: d + 1)
    d = len(pts[0])
    o = pts[0]
    det = _det([[p[i] - o[i] for i in range(d)] for p in pts[1:]])
    return det / math.factorial(d)


def simplex_volume(simplex_vertices) -> Fraction:
    """Unsigned d-volume; zero for degenerate simplices."""
    return abs(signed_volume(simplex_vertices))


def centroid(simplex_vertices) -> Point:
    pts = _points(simplex_vertices)
    n = len(pts)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*pts))


def sqdist(p, q) -> Fraction:
    return sum(((x - y) ** 2 for x, y in zip(p, q)), Fraction(0))


def circumradius2(triangle) -> Fraction:
    """Squared circumradius of a planar triangle, a^2 b^2 c^2 / (4 det^2)."""
    a, b, c = _points(triangle, lambda d: 3)
    if len(a) != 2:
        raise DimensionMismatch("circumradius2 needs planar points")
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if det == 0:
        raise DegenerateTriangle("collinear triangle has no circumcircle")
    return sqdist(a, b) * sqdist(b, c) * sqdist(c, a) / (4 * det * det)


def circumcenter(simplex_vertices) -> Point:
    """Exact circumcenter of a non-degenerate d-simplex."""
    pts = _points(simplex_vertices, lambda d: d + 1)
    d = len(pts[0])
    o = pts[0]
    rows = [[p[i] - o[i] for i in range(d)] for p in pts[1:]]
    rhs = [sum(x * x for x in r) / 2 for r in rows]
    den = _det(rows)
    if den == 0:
        raise DegenerateSimplex("degenerate simplex has no circumcenter")
    # Cramer's rule; d is small
    center = []
    for i in range(d):
        m = [r[:i] + [rhs[k]] + r[i + 1:] for k, r in enumerate(rows)]
        center.append(o[i] + _det(m) / den)
    return tuple(center)


def second_moment(simplex_vertices) -> Fraction:
    """Exact integral of |x|^2 over the simplex."""
    pts = _points(simplex_vertices, lambda d: d + 1)
    d = len(pts[0])
    vol = simplex_volume(pts)
    if vol == 0:
        return Fraction(0)
    s = tuple(sum(col, Fraction(0)) for col in zip(*pts))
    total = sum((sum(x * x for x in p) for p in pts), Fraction(0))
    return vol * (total + sum(x * x for x in s)) / ((d + 1) * (d + 2))


def gram_det(vectors) -> Fraction:
    vs = [tuple(Fraction(x) for x in v) for v in vectors]
    if not vs:
        return Fraction(1)
    return _det([[sum(a * b for a, b in zip(u, v)) for v in vs] for u in vs])


def squared_measure(points) -> Fraction:
    """Squared k-measure of the k-simplex spanned by ``points`` (any ambient dim)."""
    o = points[0]
    edges = [tuple(x - y for x, y in zip(p, o)) for p in points[1:]]
    k = len(edges)
    return gram_det(edges) / math.factorial(k) ** 2


def face_volumes(simplex_vertices) -> list[Fraction]:
    """Squared (d-1)-measures of the facets; facet i omits vertex i."""
    pts = _points(simplex_vertices, lambda d: d + 1)
    d = len(pts[0])
    if d not in (2, 3):
        raise DimensionMismatch("face_volumes supports d = 2 and d = 3")
    return [squared_measure(pts[:i] + pts[i + 1:]) for i in range(d + 1)]


def convex_hull_2d(pts: Sequence[Point]) -> list[int]:
    """Indices of the strict hull vertices in counter-clockwise order."""
    ipts, _ = scale_to_int(list(pts))
    order = sorted(range(len(ipts)), key=lambda i: ipts[i])
    if len(order) < 3:
        return order

    def chain(seq):
        out = []
        for i in seq:
            while len(out) >= 2 and kernels.orient2d(ipts[out[-2]], ipts[out[-1]], ipts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def _hull_volume_3d(pts: list[Point]) -> Fraction:
    ipts, den = scale_to_int(pts)
    n = len(ipts)
    ref = centroid(ipts)
    seen = set()
    total = Fraction(0)
    for i, j, k in itertools.combinations(range(n), 3):
        a, b, c = ipts[i], ipts[j], ipts[k]
        signs = [kernels.orient3d(a, b, c, p) for p in ipts]
        nz = {s for s in signs if s}
        if len(nz) != 1:
            continue
        face = frozenset(m for m in range(n) if signs[m] == 0)
        if face in seen:
            continue
        seen.add(face)
        idx = sorted(face)
        normal = _cross(_sub(b, a), _sub(c, a))
        drop = max(range(3), key=lambda t: abs(normal[t]))
        proj = [tuple(Fraction(ipts[m][t]) for t in range(3) if t != drop) for m in idx]
        ring = [idx[m] for m in convex_hull_2d(proj)]
        for u, v in zip(ring[1:-1], ring[2:]):
            total += abs(_det([_sub(ipts[ring[0]], ref), _sub(ipts[u], ref),
                               _sub(ipts[v], ref)])) / 6
    return total / den ** 3


def _sub(p, q):
    return tuple(x - y for x, y in zip(p, q))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def hull_volume(points) -> Fraction:
    """Exact volume of the convex hull (d = 2 or 3)."""
    pts = _points(points)
    d = len(pts[0])
    if d == 2:
        ring = convex_hull_2d(pts)
        if len(ring) < 3:
            return Fraction(0)
        area = sum((pts[i][0] * pts[j][1] - pts[j][0] * pts[i][1]
                    for i, j in zip(ring, ring[1:] + ring[:1])), Fraction(0))
        return abs(area) / 2
    if d == 3:
        return _hull_volume_3d(pts)
    raise DimensionMismatch("hull_volume supports d = 2 and d = 3")


class SiteSet:
    """Immutable, indexed set of distinct sites spanning R^d.

    Holds the exact rational coordinates and a common-denominator integer
    copy used by the predicate kernels.
    """

    def __init__(self, points, labels=None):
        pts = _points(points)
        d = len(pts[0])
        if d < 2:
            raise DimensionMismatch("sites must have dimension >= 2")
        if len(set(pts)) != len(pts):
            raise DuplicateSite("site set contains repeated points")
        if len(pts) < d + 1:
            raise TooFewSites(f"need at least {d + 1} sites in dimension {d}, got {len(pts)}")
        self.points: tuple[Point, ...] = tuple(pts)
        self.dim = d
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != len(pts):
            raise DimensionMismatch("one label per site required")
        ints, self.denominator = scale_to_int(pts)
        self.ints: tuple[tuple[int, ...], ...] = tuple(ints)
        if not self._spans():
            raise AllCollinear("sites are not affinely spanning"
                               + (" (all collinear)" if d == 2 else ""))
        self._hull_volume = None

    def _spans(self) -> bool:
        o = self.ints[0]
        rows = [[x - y for x, y in zip(p, o)] for p in self.ints[1:]]
        # rank test by elimination
        rank = 0
        m = [list(map(Fraction, r)) for r in rows]
        for col in range(self.dim):
            pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
            if pivot is None:
                continue
            m[rank], m[pivot] = m[pivot], m[rank]
            for r in range(len(m)):
                if r != rank and m[r][col]:
                    f = m[r][col] / m[rank][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
            rank += 1
        return rank == self.dim

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        return isinstance(other, SiteSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"SiteSet(n={len(self)}, dim={self.dim})"

    def orient(self, *idx) -> int:
        """Orientation sign of the simplex with these vertex indices."""
        return _int_orient([self.ints[i] for i in idx])

    def incircle(self, i, j, k, q) -> int:
        """Normalised in-circle sign of site ``q`` against triangle (i, j, k)."""
        p = self.ints
        o = kernels.orient2d(p[i], p[j], p[k])
        if o == 0:
            raise DegenerateTriangle(f"sites {i}, {j}, {k} are collinear")
        return o * kernels.incircle(p[i], p[j], p[k], p[q])

    def insphere(self, i, j, k, l, q) -> int:
        """Normalised in-sphere sign of site ``q`` against tetrahedron (i, j, k, l)."""
        p = self.ints
        o = kernels.orient3d(p[i], p[j], p[k], p[l])
        if o == 0:
            raise DegenerateTetrahedron(f"sites {i}, {j}, {k}, {l} are coplanar")
        return o * kernels.insphere(p[i], p[j], p[k], p[l], p[q])

    def simplex(self, idx) -> list[Point]:
        return [self.points[i] for i in idx]

    def hull_volume(self) -> Fraction:
        if self._hull_volume is None:
            self._hull_volume = hull_volume(self.points)
        return self._hull_volume
