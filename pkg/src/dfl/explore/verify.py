"""Optimality verification by exhaustive enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field

from dfl.delaunay import degeneracy_scan
from dfl.functionals import (Evaluator, FunctionalSpec, Kind, Order, angle_sequence,
                             compare, compare_sequences)
from dfl.geometry import SiteSet, circumradius2
from dfl.explore.enumeration import EnumerationResult, enumerate_triangulations
from dfl.triangulation import canonical_key

DT_UNIQUE = "DT_UNIQUE"
DT_TIED = "DT_OPTIMAL_TIED"
DT_NOT_OPTIMAL = "DT_NOT_OPTIMAL"
UNDECIDED = "UNDECIDED"


@dataclass
class VerificationReport:
    functional: FunctionalSpec
    optimum_keys: list
    dt_key: str
    dt_is_optimal: bool
    dt_is_unique_optimal: bool
    values: dict
    degeneracy_caveat: bool
    undecided: bool = False

    @property
    def status(self) -> str:
        if not self.dt_is_optimal:
            return DT_NOT_OPTIMAL
        if self.undecided:
            return UNDECIDED
        return DT_UNIQUE if self.dt_is_unique_optimal else DT_TIED

    def to_dict(self) -> dict:
        return {"functional": self.functional.to_dict(),
                "status": self.status,
                "optimum_keys": self.optimum_keys,
                "dt_key": self.dt_key,
                "dt_is_optimal": self.dt_is_optimal,
                "dt_is_unique_optimal": self.dt_is_unique_optimal,
                "undecided": self.undecided,
                "degeneracy_caveat": self.degeneracy_caveat,
                "values": {k: v.to_dict() for k, v in self.values.items()}}


def _resolve(sites, spec, heights, enumeration):
    if heights is not None:
        spec = spec.with_heights(heights)
    if enumeration is None:
        enumeration = enumerate_triangulations(sites)
    return spec, enumeration


def verify_optimality(sites: SiteSet, spec: FunctionalSpec, heights=None,
                      enumeration: EnumerationResult | None = None,
                      caveat: bool | None = None) -> VerificationReport:
    """Evaluate ``spec`` on every triangulation and locate the optimum.

    Exact values are compared exactly. Inexact values within the relative
    tolerance of the best one form an undecided group.
    """
    spec, enumeration = _resolve(sites, spec, heights, enumeration)
    ev = Evaluator(spec, sites)
    ts = enumeration.triangulations
    scores = [ev.score(t) for t in ts]
    if all(s.is_exact for s in scores):
        pick = max if spec.maximize else min
        best = pick(scores, key=lambda s: s.exact)
    else:
        pick = max if spec.maximize else min
        best = pick(scores, key=lambda s: s.approx)
    group = []
    undecided = False
    for t, s in zip(ts, scores):
        o = compare(s, best)
        if o is Order.EQUAL:
            group.append(t)
        elif o is Order.NEAR_TIE:
            group.append(t)
            if s is not best:
                undecided = True
    if caveat is None:
        caveat = not degeneracy_scan(sites).clean
    dt = enumeration.dt
    keys = sorted(canonical_key(t) for t in group)
    dt_key = canonical_key(dt)
    in_group = dt_key in keys
    unique = in_group and len(keys) == 1 and not undecided and not caveat
    offset = ev.offset()
    values = {canonical_key(t): offset + s for t, s in zip(ts, scores)}
    return VerificationReport(spec, keys, dt_key, in_group, unique, values, caveat, undecided)


@dataclass
class SequenceReport:
    holds: bool
    count: int
    counterexample: str | None = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "count": self.count,
                "counterexample": self.counterexample, **self.detail}


def verify_radius_sequence(sites: SiteSet,
                           enumeration: EnumerationResult | None = None) -> SequenceReport:
    """Sorted circumradii of DT are pointwise <= those of every triangulation.

    This is the phi-free form of "sum of phi(R) is minimal for every
    increasing phi": taking phi as the step function 1[R > r] for each r
    shows that pointwise domination of the sorted sequences is necessary,
    and summing termwise shows it is sufficient. Radii are compared squared.
    """
    enumeration = enumeration or enumerate_triangulations(sites)
    cache: dict = {}

    def radii(t):
        out = []
        for s in t.simplices:
            r = cache.get(s)
            if r is None:
                r = cache[s] = circumradius2(sites.simplex(s))
            out.append(r)
        return sorted(out)

    ref = radii(enumeration.dt)
    for t in enumeration.triangulations:
        if any(a > b for a, b in zip(ref, radii(t))):
            return SequenceReport(False, enumeration.count, canonical_key(t))
    return SequenceReport(True, enumeration.count)


def verify_angle_sequence(sites: SiteSet,
                          enumeration: EnumerationResult | None = None) -> SequenceReport:
    """DT's ascending angle sequence is lexicographically >= every other one."""
    enumeration = enumeration or enumerate_triangulations(sites)
    ref = angle_sequence(enumeration.dt)
    for t in enumeration.triangulations:
        if compare_sequences(ref, angle_sequence(t)) < 0:
            return SequenceReport(False, enumeration.count, canonical_key(t))
    return SequenceReport(True, enumeration.count)


def min_angle_direction(sites: SiteSet, enumeration: EnumerationResult | None = None) -> str:
    """Where DT sits for the sum of minimum angles: "max", "min", "both",
    "neither" or "undecided"."""
    enumeration = enumeration or enumerate_triangulations(sites)
    ev = Evaluator(FunctionalSpec(Kind.MIN_ANGLE_SUM), sites)
    dt_score = ev.score(enumeration.dt)
    is_max = is_min = True
    near = False
    for t in enumeration.triangulations:
        o = compare(ev.score(t), dt_score)
        if o is Order.NEAR_TIE and t is not enumeration.dt:
            near = True
        elif o is Order.GREATER:
            is_max = False
        elif o is Order.LESS:
            is_min = False
    if not (is_max or is_min):
        return "neither"
    if near:
        return "undecided"
    if is_max and is_min:
        return "both"
    return "max" if is_max else "min"
