"""Triangulation functionals and the local circle test.

Every functional here is an additive sum over simplices plus a constant
that depends only on the site set (only SV has a nonzero constant: the hull
volume). :class:`Evaluator` memoises the per-simplex terms so that ranking
many triangulations of one site set costs one evaluation per distinct
simplex. Rankings compare the term sums, never the constant.

Values that are rational (C2, V, DF, HRM with integer exponent, mean radius
with ``phi="square"``) are computed exactly. The rest are evaluated in
113-bit binary floating point and compared with a relative tolerance.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from dfl.errors import (BadExponent, Degenerate, DegenerateTetrahedron, DimensionMismatch, HeightFieldMismatch,
                        LemmaViolation, NotConvex, SelfIntersecting, ZeroArea)
from dfl.geometry import (SiteSet, as_point, centroid, circumradius2, face_volumes,
                          scale_to_int, second_moment, simplex_volume, sqdist,
                          squared_measure, to_fraction)
from dfl import kernels
from dfl.triangulation import Triangulation

MP = mpmath.MPContext()
MP.prec = 113

TOL = 1e-12


def mpq(q: Fraction):
    return MP.mpf(q.numerator) / q.denominator


class Kind(enum.Enum):
    C2 = "c2"
    V = "v"
    MEAN_RADIUS = "radius"
    HRM = "hrm"
    SV = "sv"
    DF = "df"
    MIN_ANGLE_SUM = "minangle"


MAXIMIZED = {Kind.C2, Kind.MIN_ANGLE_SUM}

PHI_CATALOG: dict[str, Callable] = {
    # each maps a squared radius to phi(R)
    "identity": lambda r2: MP.sqrt(r2),
    "square": lambda r2: r2,
    "sqrt": lambda r2: MP.sqrt(MP.sqrt(r2)),
    "log": lambda r2: MP.log(r2) / 2,
}


def height_field(values, n: int | None = None) -> tuple[Fraction, ...]:
    ys = tuple(to_fraction(y) for y in values)
    if n is not None and len(ys) != n:
        raise HeightFieldMismatch(f"height field has {len(ys)} values for {n} sites")
    return ys


@dataclass(frozen=True)
class FunctionalSpec:
    """Names one functional and its parameters."""

    kind: Kind
    phi: str | Callable | None = None
    k: Fraction | None = None
    origin: tuple | None = None
    heights: tuple | None = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is Kind.MEAN_RADIUS:
            phi = self.phi or "identity"
            if isinstance(phi, str) and phi not in PHI_CATALOG:
                raise ValueError(f"unknown phi {phi!r}; choose from {sorted(PHI_CATALOG)}")
            object.__setattr__(self, "phi", phi)
        elif self.phi is not None:
            raise ValueError("phi applies to MEAN_RADIUS only")
        if kind is Kind.HRM:
            k = to_fraction(1 if self.k is None else self.k)
            if k < Fraction(1, 2):
                raise BadExponent(f"exponent k={k} is below 1/2")
            object.__setattr__(self, "k", k)
        elif self.k is not None:
            raise ValueError("k applies to HRM only")
        if kind is Kind.C2:
            if self.origin is not None:
                object.__setattr__(self, "origin", as_point(self.origin))
        elif self.origin is not None:
            raise ValueError("origin applies to C2 only")
        if kind in (Kind.SV, Kind.DF):
            if self.heights is None:
                raise HeightFieldMismatch(f"{kind.name} needs a height field")
            object.__setattr__(self, "heights", height_field(self.heights))
        elif self.heights is not None:
            raise ValueError("heights apply to SV and DF only")

    @property
    def maximize(self) -> bool:
        return self.kind in MAXIMIZED

    @property
    def exact(self) -> bool:
        if self.kind is Kind.MEAN_RADIUS:
            return self.phi == "square"
        if self.kind is Kind.HRM:
            return self.k.denominator == 1
        return self.kind in (Kind.C2, Kind.V, Kind.DF)

    def with_heights(self, heights) -> "FunctionalSpec":
        return FunctionalSpec(self.kind, heights=heights)

    def label(self) -> str:
        if self.kind is Kind.MEAN_RADIUS:
            phi = self.phi if isinstance(self.phi, str) else getattr(self.phi, "__name__", "custom")
            return f"radius[{phi}]"
        if self.kind is Kind.HRM:
            return f"hrm[k={self.k}]"
        return self.kind.value

    def to_dict(self) -> dict:
        out = {"kind": self.kind.name, "maximize": self.maximize}
        if self.kind is Kind.MEAN_RADIUS:
            out["phi"] = self.phi if isinstance(self.phi, str) else "custom"
        if self.kind is Kind.HRM:
            out["k"] = str(self.k)
        if self.origin is not None:
            out["origin"] = [str(c) for c in self.origin]
        if self.heights is not None:
            out["heights"] = [str(y) for y in self.heights]
        return out


@dataclass(frozen=True)
class FunctionalValue:
    exact: Fraction | None
    approx: object  # mpf

    @classmethod
    def of(cls, q: Fraction) -> "FunctionalValue":
        return cls(q, mpq(q))

    @classmethod
    def inexact(cls, x) -> "FunctionalValue":
        return cls(None, MP.mpf(x))

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def __add__(self, other: "FunctionalValue") -> "FunctionalValue":
        if self.exact is not None and other.exact is not None:
            return FunctionalValue.of(self.exact + other.exact)
        return FunctionalValue(None, self.approx + other.approx)

    def __float__(self):
        return float(self.exact) if self.exact is not None else float(self.approx)

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        return MP.nstr(self.approx, 30)

    def to_dict(self) -> dict:
        return {"value": str(self), "exact": self.is_exact, "float": float(self)}


ZERO = FunctionalValue.of(Fraction(0))


def fv_sum(values) -> FunctionalValue:
    exact = Fraction(0)
    inexact = []
    all_exact = True
    for v in values:
        if all_exact and v.exact is not None:
            exact += v.exact
        else:
            all_exact = False
        inexact.append(v.approx)
    if all_exact:
        return FunctionalValue.of(exact)
    return FunctionalValue(None, MP.fsum(inexact))


class Order(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    NEAR_TIE = 2


def compare(a: FunctionalValue, b: FunctionalValue, tol: float = TOL) -> Order:
    """Exact comparison when both are exact, else relative tolerance."""
    if a.exact is not None and b.exact is not None:
        return Order((a.exact > b.exact) - (a.exact < b.exact))
    diff = a.approx - b.approx
    scale = max(abs(a.approx), abs(b.approx))
    if abs(diff) <= tol * scale:
        return Order.NEAR_TIE
    return Order.GREATER if diff > 0 else Order.LESS


def better(a: FunctionalValue, b: FunctionalValue, maximize: bool, tol: float = TOL) -> bool:
    """True when ``a`` strictly beats ``b`` beyond the tolerance."""
    o = compare(a, b, tol)
    return o is (Order.GREATER if maximize else Order.LESS)


# per-simplex terms ---------------------------------------------------------

def _angles(pts):
    out = []
    for i in range(3):
        a, b, c = pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]
        u = (b[0] - a[0], b[1] - a[1])
        v = (c[0] - a[0], c[1] - a[1])
        cross = abs(u[0] * v[1] - u[1] * v[0])
        dot = u[0] * v[0] + u[1] * v[1]
        out.append(MP.atan2(mpq(cross), mpq(dot)))
    return out


def _require_2d(d, what):
    if d != 2:
        raise DimensionMismatch(f"{what} is defined for planar triangulations only")


def simplex_term(spec: FunctionalSpec, pts, heights=None) -> FunctionalValue:
    """Contribution of one simplex with vertex coordinates ``pts``.

    ``heights`` are the height values at these vertices (SV and DF only).
    """
    kind = spec.kind
    d = len(pts[0])
    vol = simplex_volume(pts)
    if kind is Kind.V:
        return FunctionalValue.of(sum((sum(x * x for x in p) for p in pts), Fraction(0)) * vol)
    if kind is Kind.C2:
        c = centroid(pts)
        o = spec.origin or (Fraction(0),) * d
        return FunctionalValue.of(sqdist(c, o) * vol)
    if kind is Kind.MEAN_RADIUS:
        _require_2d(d, "mean radius")
        r2 = circumradius2(pts)
        if spec.phi == "square":
            return FunctionalValue.of(r2)
        phi = spec.phi
        if isinstance(phi, str):
            return FunctionalValue.inexact(PHI_CATALOG[phi](mpq(r2)))
        return FunctionalValue.inexact(phi(MP.sqrt(mpq(r2))))
    if kind is Kind.HRM:
        if d == 2:
            return _hrm_parts(face_volumes(pts), vol, spec.k)
        if d == 3 and spec.k == 1:
            return _hrm3(face_volumes(pts), vol)
        raise DimensionMismatch("HRM supports d = 2 (any k) and d = 3 (k = 1)")
    if kind in (Kind.SV, Kind.DF):
        lifted = [tuple(p) + (y,) for p, y in zip(pts, heights)]
        lift2 = squared_measure(lifted)
        vol2 = vol * vol
        if kind is Kind.DF:
            return FunctionalValue.of(lift2 / vol - vol)
        excess = lift2 - vol2
        if excess == 0:
            return ZERO
        # SV term minus the flat volume, written without cancellation
        return FunctionalValue.inexact(mpq(excess) / (MP.sqrt(mpq(lift2)) + mpq(vol)))
    if kind is Kind.MIN_ANGLE_SUM:
        _require_2d(d, "min-angle sum")
        return FunctionalValue.inexact(min(_angles(pts)))
    raise ValueError(f"unhandled functional {kind}")


def _hrm_parts(sq_lengths, area, k: Fraction) -> FunctionalValue:
    if k.denominator == 1:
        kk = int(k)
        return FunctionalValue.of(sum((a ** kk for a in sq_lengths), Fraction(0)) / area ** kk)
    kf = mpq(k)
    num = MP.fsum(mpq(a) ** kf for a in sq_lengths)
    return FunctionalValue.inexact(num / mpq(area) ** kf)


def _hrm3(sq_areas, vol) -> FunctionalValue:
    num = MP.fsum(mpq(f) * MP.sqrt(mpq(f)) for f in sq_areas)
    return FunctionalValue.inexact(num / mpq(vol * vol))


class Evaluator:
    """Memoised evaluation of one functional over triangulations of one site set."""

    def __init__(self, spec: FunctionalSpec, sites: SiteSet):
        self.spec = spec
        self.sites = sites
        if spec.heights is not None and len(spec.heights) != len(sites):
            raise HeightFieldMismatch(
                f"height field has {len(spec.heights)} values for {len(sites)} sites")
        self._terms: dict = {}

    def term(self, simplex) -> FunctionalValue:
        v = self._terms.get(simplex)
        if v is None:
            pts = self.sites.simplex(simplex)
            hs = [self.spec.heights[i] for i in simplex] if self.spec.heights else None
            v = self._terms[simplex] = simplex_term(self.spec, pts, hs)
        return v

    def offset(self) -> FunctionalValue:
        if self.spec.kind is Kind.SV:
            return FunctionalValue.of(self.sites.hull_volume())
        return ZERO

    def score(self, t: Triangulation) -> FunctionalValue:
        """Sum of simplex terms; orders triangulations exactly like the value."""
        return fv_sum(self.term(s) for s in t.simplices)

    def value(self, t: Triangulation) -> FunctionalValue:
        return self.offset() + self.score(t)

    def score_of(self, simplices) -> FunctionalValue:
        return fv_sum(self.term(s) for s in simplices)

    def local_delta(self, removed, added) -> FunctionalValue:
        """Score change when simplices ``removed`` are replaced by ``added``."""
        new = fv_sum(self.term(s) for s in added)
        old = fv_sum(self.term(s) for s in removed)
        if new.exact is not None and old.exact is not None:
            return FunctionalValue.of(new.exact - old.exact)
        return FunctionalValue(None, new.approx - old.approx)


def evaluate(spec: FunctionalSpec, t: Triangulation) -> FunctionalValue:
    t.require_valid()
    return Evaluator(spec, t.sites).value(t)


# public evaluators -----------------------------------------------------------

def eval_c2(t: Triangulation, origin=None) -> FunctionalValue:
    return evaluate(FunctionalSpec(Kind.C2, origin=origin), t)


def eval_v(t: Triangulation) -> FunctionalValue:
    return evaluate(FunctionalSpec(Kind.V), t)


def identity_residual(t: Triangulation) -> Fraction:
    """(d+1)^2 C2 + V - (d+1)(d+2) * integral of |x|^2 over the hull; always 0."""
    t.require_valid()
    d = t.dim
    c2 = eval_c2(t).exact
    v = eval_v(t).exact
    moment = sum((second_moment(t.sites.simplex(s)) for s in t.simplices), Fraction(0))
    return (d + 1) ** 2 * c2 + v - (d + 1) * (d + 2) * moment


def eval_mean_radius(t: Triangulation, phi="identity") -> FunctionalValue:
    return evaluate(FunctionalSpec(Kind.MEAN_RADIUS, phi=phi), t)


def eval_hrm(t: Triangulation, k=1) -> FunctionalValue:
    return evaluate(FunctionalSpec(Kind.HRM, k=k), t)


def eval_sv(t: Triangulation, heights) -> FunctionalValue:
    return evaluate(FunctionalSpec(Kind.SV, heights=height_field(heights, len(t.sites))), t)


def eval_df(t: Triangulation, heights) -> FunctionalValue:
    return evaluate(FunctionalSpec(Kind.DF, heights=height_field(heights, len(t.sites))), t)


def eval_min_angle_sum(t: Triangulation) -> FunctionalValue:
    return evaluate(FunctionalSpec(Kind.MIN_ANGLE_SUM), t)


def angle_sequence(t: Triangulation) -> list:
    """All triangle angles (radians, mpf) in ascending order."""
    t.require_valid()
    _require_2d(t.dim, "angle sequence")
    out = []
    for s in t.simplices:
        out.extend(_angles(t.sites.simplex(s)))
    return sorted(out)


def compare_sequences(a: Sequence, b: Sequence, tol: float = TOL) -> int:
    """Lexicographic comparison with per-entry relative tolerance."""
    for x, y in zip(a, b):
        if abs(x - y) > tol * max(abs(x), abs(y)):
            return 1 if x > y else -1
    return (len(a) > len(b)) - (len(a) < len(b))


def _segments_intersect(p1, p2, q1, q2) -> bool:
    o = kernels.orient2d
    d1, d2 = o(q1, q2, p1), o(q1, q2, p2)
    d3, d4 = o(p1, p2, q1), o(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True

    def on(a, b, c):
        return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    return ((d1 == 0 and on(q1, q2, p1)) or (d2 == 0 and on(q1, q2, p2))
            or (d3 == 0 and on(p1, p2, q1)) or (d4 == 0 and on(p1, p2, q2)))


def polygon_area(poly) -> Fraction:
    pts = [as_point(p) for p in poly]
    n = len(pts)
    return abs(sum((pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1]
                    for i in range(n)), Fraction(0))) / 2


def eval_hrm_polygon(poly, k=1) -> FunctionalValue:
    """Sum of a_i^(2k) over area^k for a simple polygon given as a vertex cycle."""
    pts = [as_point(p) for p in poly]
    n = len(pts)
    if n < 3 or any(len(p) != 2 for p in pts):
        raise DimensionMismatch("polygon needs at least 3 planar vertices")
    k = to_fraction(k)
    if k < Fraction(1, 2):
        raise BadExponent(f"exponent k={k} is below 1/2")
    area = polygon_area(pts)
    if area == 0:
        raise ZeroArea("polygon has zero area")
    ipts, _ = scale_to_int(pts)
    edges = [(ipts[i], ipts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a, b, c = ipts[i], ipts[(i + 1) % n], ipts[(i + 2) % n]
        if kernels.orient2d(a, b, c) == 0 and (
                (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1])) < 0:
            raise SelfIntersecting(f"polygon folds back at vertex {(i + 1) % n}")
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if _segments_intersect(*edges[i], *edges[j]):
                raise SelfIntersecting(f"edges {i} and {j} intersect")
    sq = [sqdist(pts[i], pts[(i + 1) % n]) for i in range(n)]
    return _hrm_parts(sq, area, k)


def eval_hrm_simplex3(tet) -> FunctionalValue:
    """Sum of cubed facet areas over squared volume for a tetrahedron."""
    pts = [as_point(p) for p in tet]
    if len(pts) != 4 or any(len(p) != 3 for p in pts):
        raise DimensionMismatch("a tetrahedron needs 4 points in R^3")
    vol = simplex_volume(pts)
    if vol == 0:
        raise DegenerateTetrahedron("tetrahedron has zero volume")
    return _hrm3(face_volumes(pts), vol)


# quadrilaterals ----------------------------------------------------------------

def _convex_quad(quad):
    pts = [as_point(p) for p in quad]
    if len(pts) != 4 or any(len(p) != 2 for p in pts):
        raise DimensionMismatch("a quadrilateral needs 4 planar points")
    ipts, _ = scale_to_int(pts)
    signs = {kernels.orient2d(ipts[i], ipts[(i + 1) % 4], ipts[(i + 2) % 4]) for i in range(4)}
    if signs not in ({1}, {-1}):
        raise NotConvex("points are not a strictly convex quadrilateral in this order")
    ccw = signs == {1}
    inside = kernels.incircle(ipts[0], ipts[1], ipts[2], ipts[3]) * (1 if ccw else -1)
    if inside == 0:
        raise Degenerate("quadrilateral is cocircular")
    return pts, ipts, inside > 0


def delaunay_diagonal(quad) -> tuple[int, int]:
    """Indices of the Delaunay diagonal of a convex quadrilateral ABCD."""
    _, _, bd = _convex_quad(quad)
    return (1, 3) if bd else (0, 2)


def _r2_parts(a, b, c):
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    l1 = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
    l2 = (b[0] - c[0]) ** 2 + (b[1] - c[1]) ** 2
    l3 = (c[0] - a[0]) ** 2 + (c[1] - a[1]) ** 2
    return Fraction(l1 * l2 * l3, 4 * det * det)


LEMMA_RELATIONS = {
    1: lambda r: (r["ABD"] < r["ABC"] and r["ABD"] < r["ADC"]
                  and r["BCD"] < r["ABC"] and r["BCD"] < r["ADC"]),
    2: lambda r: r["ABD"] < r["ABC"] < r["BCD"] < r["ADC"],
    3: lambda r: r["ABD"] < r["ADC"] < r["BCD"] < r["ABC"],
    4: lambda r: r["BCD"] < r["ABC"] < r["ABD"] < r["ADC"],
    5: lambda r: r["BCD"] < r["ADC"] < r["ABD"] < r["ABC"],
}


@dataclass
class LemmaResult:
    relation: int
    radii2: dict  # triangle label -> squared circumradius (scaled quad units)
    labels: tuple  # input indices playing A, B, C, D
    scale: int = 1

    def radii(self) -> dict:
        return {k: math.sqrt(v) / self.scale for k, v in self.radii2.items()}


def lemma2_relation(quad) -> LemmaResult:
    """Which of the five circumradius orderings a convex quadrilateral obeys.

    Vertices are relabelled so that BD is the Delaunay diagonal.
    """
    pts, ipts, bd = _convex_quad(quad)
    labels = (0, 1, 2, 3) if bd else (1, 2, 3, 0)
    A, B, C, D = (ipts[i] for i in labels)
    r = {"ABD": _r2_parts(A, B, D), "BCD": _r2_parts(B, C, D),
         "ABC": _r2_parts(A, B, C), "ADC": _r2_parts(A, D, C)}
    _, den = scale_to_int(pts)
    for rel, holds in LEMMA_RELATIONS.items():
        if holds(r):
            return LemmaResult(rel, r, labels, den)
    raise LemmaViolation(f"no admissible radius ordering holds: {r}")


@dataclass
class LCTResult:
    passed: bool
    near_tie: bool
    delaunay_diagonal: tuple
    value_delaunay: FunctionalValue
    value_other: FunctionalValue

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"passed": self.passed, "near_tie": self.near_tie,
                "delaunay_diagonal": list(self.delaunay_diagonal),
                "value_delaunay": self.value_delaunay.to_dict(),
                "value_other": self.value_other.to_dict()}


def lct_check(spec: FunctionalSpec, quad, heights=None, tol: float = TOL) -> LCTResult:
    """Compare a functional on the two diagonal triangulations of a convex quad."""
    pts, _, bd = _convex_quad(quad)
    if spec.kind in (Kind.SV, Kind.DF):
        if heights is None:
            heights = spec.heights
        spec = spec.with_heights(height_field(heights, 4))
    elif heights is not None:
        raise ValueError("heights apply to SV and DF only")
    sites = SiteSet(pts)
    t_ac = Triangulation(sites, [(0, 1, 2), (0, 2, 3)])
    t_bd = Triangulation(sites, [(0, 1, 3), (1, 2, 3)])
    dt, other = (t_bd, t_ac) if bd else (t_ac, t_bd)
    ev = Evaluator(spec, sites)
    v_dt, v_other = ev.value(dt), ev.value(other)
    o = compare(ev.score(other), ev.score(dt), tol)
    if o is Order.NEAR_TIE:
        passed, near = True, True
    else:
        passed = o in ((Order.LESS, Order.EQUAL) if spec.maximize else (Order.GREATER, Order.EQUAL))
        near = False
    return LCTResult(passed, near, (1, 3) if bd else (0, 2), v_dt, v_other)
