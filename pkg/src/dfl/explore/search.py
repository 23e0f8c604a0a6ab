"""Seeded counterexample searches and the small-height SV probe."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from dfl.delaunay import degeneracy_scan, delaunay_witness, is_delaunay
from dfl.errors import BadParams, DegenerateConfiguration
from dfl.functionals import (Evaluator, FunctionalSpec, Kind, Order, TOL, compare,
                             delaunay_diagonal)
from dfl.geometry import SiteSet, exact_decimal, to_fraction
from dfl.explore.enumeration import enumerate_triangulations
from dfl.explore.lawson3d import two_triangulations_3d
from dfl.explore.sampling import (random_convex_quad, random_heights, random_sites,
                                  stream)
from dfl.explore.verify import DT_UNIQUE, UNDECIDED, verify_optimality
from dfl.triangulation import Triangulation, canonical_key


class SearchKind(enum.Enum):
    HRM_K = "HRM_K"
    SV_PLANAR = "SV_PLANAR"
    DST_3D = "DST_3D"
    HRM_3D = "HRM_3D"


FOUND = "FOUND"
NOT_FOUND = "NOT_FOUND"


@dataclass
class SearchReport:
    kind: SearchKind
    params: dict
    seed: int
    budget: int
    status: str
    iterations: int
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "params": self.params, "seed": self.seed,
                "budget": self.budget, "status": self.status,
                "iterations": self.iterations, "witness": self.witness,
                "stats": self.stats}


def _coords(sites: SiteSet) -> list:
    return [[exact_decimal(c) for c in p] for p in sites.points]


def _strictly_better(a, b, maximize=False) -> bool:
    return compare(a, b) is (Order.GREATER if maximize else Order.LESS)


def _try_hrm_k(rng, k: Fraction, stats):
    quad = random_convex_quad(rng)
    sites = SiteSet(quad)
    t_ac = Triangulation(sites, [(0, 1, 2), (0, 2, 3)])
    t_bd = Triangulation(sites, [(0, 1, 3), (1, 2, 3)])
    dt, other = (t_bd, t_ac) if delaunay_diagonal(quad) == (1, 3) else (t_ac, t_bd)
    ev = Evaluator(FunctionalSpec(Kind.HRM, k=k), sites)
    v_dt, v_other = ev.value(dt), ev.value(other)
    if not _strictly_better(v_other, v_dt):
        return None
    return {"sites": _coords(sites),
            "delaunay": canonical_key(dt), "minimizer": canonical_key(other),
            "value_delaunay": v_dt.to_dict(), "value_minimizer": v_other.to_dict()}


def _try_sv_planar(rng, n: int, stats):
    sites = random_sites(rng, n)
    heights = random_heights(rng, n)
    enum_ = enumerate_triangulations(sites)
    rep = verify_optimality(sites, FunctionalSpec(Kind.SV, heights=heights),
                            enumeration=enum_, caveat=False)
    if rep.dt_is_optimal:
        if rep.undecided:
            stats["undecided"] = stats.get("undecided", 0) + 1
        return None
    best = rep.optimum_keys[0]
    return {"sites": _coords(sites), "heights": [exact_decimal(y) for y in heights],
            "delaunay": rep.dt_key, "minimizer": best,
            "minimizer_is_delaunay": False,
            "value_delaunay": rep.values[rep.dt_key].to_dict(),
            "value_minimizer": rep.values[best].to_dict(),
            "triangulations": enum_.count}


def _five_points(rng):
    while True:
        sites = random_sites(rng, 5, dim=3)
        try:
            found = two_triangulations_3d(sites)
        except DegenerateConfiguration:
            continue
        if len(found) == 2:
            return sites, found
        # interior point: only one triangulation; draw again


def _try_3d(rng, kind: Kind, stats):
    sites, (t1, t2) = _five_points(rng)
    flags = [delaunay_witness(t) is None for t in (t1, t2)]
    if sum(flags) != 1:
        stats["ambiguous_delaunay"] = stats.get("ambiguous_delaunay", 0) + 1
        return None
    dt, other = (t1, t2) if flags[0] else (t2, t1)
    heights = random_heights(rng, 5) if kind is Kind.DF else None
    spec = FunctionalSpec(kind, heights=heights)
    ev = Evaluator(spec, sites)
    v_dt, v_other = ev.value(dt), ev.value(other)
    if not _strictly_better(v_other, v_dt):
        return None
    w = {"sites": _coords(sites),
         "delaunay": canonical_key(dt), "minimizer": canonical_key(other),
         "value_delaunay": v_dt.to_dict(), "value_minimizer": v_other.to_dict()}
    if heights is not None:
        w["heights"] = [exact_decimal(y) for y in heights]
    return w


def _reverify(kind: SearchKind, w: dict, params: dict) -> bool:
    """Recompute a witness from its serialised form."""
    sites = SiteSet([[Fraction(c) for c in p] for p in w["sites"]])

    def tri(key):
        return Triangulation(sites, [tuple(map(int, s.split())) for s in key.split(";")])

    dt, other = tri(w["delaunay"]), tri(w["minimizer"])
    if not is_delaunay(dt) or is_delaunay(other):
        return False
    if kind is SearchKind.HRM_K:
        spec = FunctionalSpec(Kind.HRM, k=params["k"])
    elif kind is SearchKind.HRM_3D:
        spec = FunctionalSpec(Kind.HRM)
    elif kind is SearchKind.SV_PLANAR:
        spec = FunctionalSpec(Kind.SV, heights=[Fraction(y) for y in w["heights"]])
    else:
        spec = FunctionalSpec(Kind.DF, heights=[Fraction(y) for y in w["heights"]])
    ev = Evaluator(spec, sites)
    return _strictly_better(ev.score(other), ev.score(dt))


def search_counterexample(kind, params: dict | None = None, seed: int = 0,
                          budget: int = 100_000) -> SearchReport:
    """Uniform random search for a configuration where Delaunay is not optimal.

    Iteration ``i`` draws from the stream ``(seed, i)``. The first witness is
    re-derived from its serialised form before being reported.
    """
    kind = SearchKind(kind)
    params = dict(params or {})
    if budget < 1:
        raise BadParams("budget must be positive")
    if kind is SearchKind.HRM_K:
        k = to_fraction(params.get("k", 3))
        if k == 1 or k < Fraction(1, 2):
            raise BadParams("HRM_K needs k != 1 and k >= 1/2")
        params["k"] = k
        step = lambda rng, st: _try_hrm_k(rng, k, st)  # noqa: E731
    elif kind is SearchKind.SV_PLANAR:
        n = int(params.get("n", 6))
        if not 4 <= n <= 10:
            raise BadParams("SV_PLANAR needs 4 <= n <= 10")
        params["n"] = n
        step = lambda rng, st: _try_sv_planar(rng, n, st)  # noqa: E731
    elif kind is SearchKind.DST_3D:
        step = lambda rng, st: _try_3d(rng, Kind.DF, st)  # noqa: E731
    else:
        step = lambda rng, st: _try_3d(rng, Kind.HRM, st)  # noqa: E731
    stats: dict = {}
    for i in range(budget):
        w = step(stream(seed, i), stats)
        if w is None:
            continue
        w["reverified"] = _reverify(kind, w, params)
        if not w["reverified"]:
            stats["rejected_on_reverify"] = stats.get("rejected_on_reverify", 0) + 1
            continue
        w["iteration"] = i
        return SearchReport(kind, _jsonable(params), seed, budget, FOUND, i + 1, w, stats)
    return SearchReport(kind, _jsonable(params), seed, budget, NOT_FOUND, budget, None, stats)


def _jsonable(params):
    return {k: str(v) if isinstance(v, Fraction) else v for k, v in params.items()}


DEFAULT_SCALES = tuple(Fraction(1, 2 ** i) for i in range(21))


@dataclass
class ProbeReport:
    rows: list  # (scale, optimum keys, dt unique?, status)
    threshold: Fraction | None
    dt_key: str

    @property
    def undecided(self) -> int:
        return sum(1 for r in self.rows if r[3] == UNDECIDED)

    def to_dict(self) -> dict:
        return {"dt_key": self.dt_key,
                "threshold": None if self.threshold is None else str(self.threshold),
                "undecided": self.undecided,
                "rows": [{"scale": str(s), "optimum_keys": k, "is_dt": u, "status": st}
                         for s, k, u, st in self.rows]}


def sv_epsilon_probe(sites: SiteSet, direction, scales=DEFAULT_SCALES,
                     enumeration=None) -> ProbeReport:
    """SV optimality of DT for heights ``s * direction`` over a scale ladder.

    ``threshold`` is the largest tested scale at and below which every
    decided row has DT as unique minimizer (undecided rows are skipped).
    """
    enumeration = enumeration or enumerate_triangulations(sites)
    caveat = not degeneracy_scan(sites).clean
    rows = []
    for s in sorted((Fraction(x) for x in scales), reverse=True):
        heights = [s * Fraction(y) for y in direction]
        rep = verify_optimality(sites, FunctionalSpec(Kind.SV, heights=heights),
                                enumeration=enumeration, caveat=caveat)
        rows.append((s, rep.optimum_keys, rep.dt_is_unique_optimal, rep.status))
    threshold = None
    for s, _, unique, status in reversed(rows):  # ascending scale
        if status == UNDECIDED:
            continue
        if not unique:
            break
        threshold = s
    return ProbeReport(rows, threshold, enumeration.dt_key)
