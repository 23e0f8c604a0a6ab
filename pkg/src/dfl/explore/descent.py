"""Flip descent driven by a functional's local comparison."""
from __future__ import annotations

from dataclasses import dataclass, field

from dfl.errors import DimensionMismatch
from dfl.functionals import Evaluator, FunctionalSpec, FunctionalValue, Order, compare
from dfl.triangulation import (Triangulation, flip_edge, interior_edges, is_flippable,
                               quad_of_edge)


def _tri(*v):
    return tuple(sorted(v))


@dataclass
class FlipTrace:
    maximize: bool
    start: FunctionalValue
    steps: list = field(default_factory=list)  # (edge, value after the flip)

    def __len__(self):
        return len(self.steps)

    def values(self) -> list:
        return [self.start] + [v for _, v in self.steps]

    def is_strictly_monotone(self) -> bool:
        vals = self.values()
        for a, b in zip(vals, vals[1:]):
            if a.exact is not None and b.exact is not None:
                ok = b.exact > a.exact if self.maximize else b.exact < a.exact
            else:
                ok = b.approx > a.approx if self.maximize else b.approx < a.approx
            if not ok:
                return False
        return True

    def to_dict(self) -> dict:
        return {"start": self.start.to_dict(),
                "steps": [{"edge": list(e), "value": v.to_dict()} for e, v in self.steps],
                "strictly_monotone": self.is_strictly_monotone()}


def flip_descent(t0: Triangulation, spec: FunctionalSpec, heights=None,
                 max_flips: int | None = None) -> tuple[Triangulation, FlipTrace]:
    """Flip any edge whose quadrilateral strictly improves ``spec`` until none does.

    Edges are scanned in sorted order and the scan restarts after each flip.
    Inexact improvements must exceed the comparison tolerance, so the walk
    cannot cycle.
    """
    if t0.dim != 2:
        raise DimensionMismatch("flip descent is planar only")
    t0.require_valid()
    if heights is not None:
        spec = spec.with_heights(heights)
    ev = Evaluator(spec, t0.sites)
    total = ev.value(t0)
    trace = FlipTrace(spec.maximize, total)
    want = Order.GREATER if spec.maximize else Order.LESS
    t = t0
    while max_flips is None or len(trace) < max_flips:
        for e in interior_edges(t):
            if not is_flippable(t, e):
                continue
            i, k, j, l = quad_of_edge(t, e)
            removed = (_tri(i, j, k), _tri(i, j, l))
            added = (_tri(k, l, i), _tri(k, l, j))
            old = ev.score_of(removed)
            new = ev.score_of(added)
            if compare(new, old) is want:
                t = flip_edge(t, e)
                total = total + ev.local_delta(removed, added)
                trace.steps.append((e, total))
                break
        else:
            break
    return t, trace


def random_flip_walk(t: Triangulation, rng, steps: int) -> Triangulation:
    """Apply ``steps`` uniformly chosen legal flips."""
    for _ in range(steps):
        edges = [e for e in interior_edges(t) if is_flippable(t, e)]
        if not edges:
            break
        t = flip_edge(t, edges[int(rng.integers(len(edges)))])
    return t
