from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfl.delaunay import build_dt
from dfl.errors import DegenerateSimplex, NotConvex, NotInterior
from dfl.explore.sampling import random_sites, stream
from dfl.geometry import SiteSet
from dfl.io import format_triangulation, parse_triangulation
from dfl.triangulation import (Triangulation, canonical_key, flip_edge, from_key,
                               interior_edges, is_flippable, validate)

from strategies import seeds


def square():
    return SiteSet([(0, 0), (1, 0), (1, 1), (0, 1)])


class TestValidate:
    def test_single_triangle(self, unit_triangle):
        assert validate(unit_triangle)
        assert unit_triangle.is_valid()

    def test_both_diagonals_listed(self):
        s = square()
        t = Triangulation(s, [(0, 1, 2), (0, 2, 3), (0, 1, 3), (1, 2, 3)])
        rep = validate(t)
        assert not rep
        assert t.volume() == 2 * s.hull_volume()
        assert any("volume sum" in v for v in rep.violations)

    def test_volume_deficit(self):
        t = Triangulation(square(), [(0, 1, 2)])
        rep = validate(t)
        assert not rep
        assert any("volume sum" in v for v in rep.violations)
        assert any("not used" in v for v in rep.violations)

    def test_overlap(self):
        # (0,1,4) sits inside (0,1,2)
        s = SiteSet([(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)])
        good = build_dt(s)
        assert validate(good)
        bad = Triangulation(s, [(0, 1, 2), (0, 2, 3), (0, 1, 4)])
        rep = validate(bad)
        assert not rep
        assert "simplices (0, 1, 2) and (0, 1, 4) overlap" in rep.violations

    def test_degenerate_simplex_rejected(self):
        s = SiteSet([(0, 0), (1, 1), (2, 2), (0, 1)])
        with pytest.raises(DegenerateSimplex):
            Triangulation(s, [(0, 1, 2)])

    def test_bad_index_rejected(self):
        with pytest.raises(ValueError):
            Triangulation(square(), [(0, 1, 7)])

    def test_tetrahedron(self):
        s = SiteSet([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert validate(Triangulation(s, [(0, 1, 2, 3)]))


class TestFlip:
    def test_kite_flip(self, kite):
        out = flip_edge(kite["bd"], (1, 3))
        assert out == kite["ac"]
        assert validate(out) and validate(kite["bd"])

    def test_involution(self, kite):
        assert flip_edge(flip_edge(kite["bd"], (1, 3)), (0, 2)) == kite["bd"]

    def test_reflex_quad(self):
        s = SiteSet([(0, 0), (4, 0), (0, 4), (1, 1)])
        t = build_dt(s)
        for e in interior_edges(t):
            assert not is_flippable(t, e)
            with pytest.raises(NotConvex):
                flip_edge(t, e)

    def test_collinear_quad_not_convex(self):
        s = SiteSet([(0, 0), (1, 0), (2, 0), (1, 1)])
        t = Triangulation(s, [(0, 1, 3), (1, 2, 3)])
        assert validate(t)
        with pytest.raises(NotConvex):
            flip_edge(t, (1, 3))

    def test_boundary_edge(self, kite):
        with pytest.raises(NotInterior):
            flip_edge(kite["bd"], (0, 1))
        with pytest.raises(NotInterior):
            flip_edge(kite["bd"], (0, 2))

    @settings(max_examples=40, deadline=None)
    @given(seeds, st.integers(4, 9))
    def test_flip_properties(self, seed, n):
        sites = random_sites(stream(seed, 0), n)
        t = build_dt(sites)
        for e in interior_edges(t):
            if not is_flippable(t, e):
                continue
            u = flip_edge(t, e)
            assert validate(u)
            assert canonical_key(u) != canonical_key(t)
            assert u.volume() == t.volume() == sites.hull_volume()
            assert len(u) == len(t)
            (new_edge,) = set(interior_edges(u)) - set(interior_edges(t))
            assert flip_edge(u, new_edge) == t


class TestInteriorEdges:
    def test_single_triangle(self, unit_triangle):
        assert interior_edges(unit_triangle) == []

    def test_quad(self, kite):
        assert interior_edges(kite["bd"]) == [(1, 3)]
        assert interior_edges(kite["ac"]) == [(0, 2)]

    def test_pentagon_fan(self):
        s = SiteSet([(2, 0), (4, 1), (3, 3), (1, 3), (0, 1)])
        t = Triangulation(s, [(0, 1, 2), (0, 2, 3), (0, 3, 4)])
        assert validate(t)
        assert interior_edges(t) == [(0, 2), (0, 3)]

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(3, 10))
    def test_euler_count(self, seed, n):
        sites = random_sites(stream(seed, 1), n)
        t = build_dt(sites)
        from dfl.geometry import convex_hull_2d
        # strict hull vertices plus sites lying on hull edges all bound the region
        h = sum(1 for i in range(n)
                if i in set(convex_hull_2d(sites.points)) or _on_hull_edge(sites, i))
        assert len(t) == 2 * n - h - 2
        assert len(interior_edges(t)) == 3 * n - 2 * h - 3
        assert interior_edges(t) == sorted(interior_edges(t))


def _on_hull_edge(sites, i):
    from dfl.geometry import convex_hull_2d
    hull = convex_hull_2d(sites.points)
    for a, b in zip(hull, hull[1:] + hull[:1]):
        if sites.orient(a, b, i) == 0 and i not in (a, b):
            return True
    return False


class TestCanonicalKey:
    def test_order_independent(self, kite):
        s = kite["sites"]
        a = Triangulation(s, [(1, 2, 3), (0, 1, 3)])
        b = Triangulation(s, [(0, 1, 3), (1, 2, 3)])
        assert canonical_key(a) == canonical_key(b) == "0 1 3;1 2 3"
        assert hash(a) == hash(b)

    def test_flip_changes_key(self, kite):
        assert canonical_key(kite["bd"]) != canonical_key(flip_edge(kite["bd"], (1, 3)))

    def test_empty_sentinel(self, kite):
        t = Triangulation(kite["sites"], [])
        assert canonical_key(t) == ""
        assert not validate(t)

    def test_round_trip(self, kite):
        t = kite["bd"]
        assert from_key(kite["sites"], canonical_key(t)) == t
        assert parse_triangulation(format_triangulation(t), kite["sites"]) == t

    def test_unsorted_input_is_normalised(self, kite):
        t = Triangulation(kite["sites"], [(3, 1, 0), (3, 2, 1)])
        assert t == kite["bd"]
