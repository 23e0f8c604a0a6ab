import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dfl.delaunay import build_dt
from dfl.errors import (BadExponent, Degenerate, DegenerateTetrahedron, HeightFieldMismatch,
                        NotConvex, SelfIntersecting, ZeroArea)
from dfl.explore.enumeration import enumerate_triangulations
from dfl.explore.sampling import random_convex_quad, random_heights, random_sites, stream
from dfl.functionals import (Kind, FunctionalSpec, Order, angle_sequence, compare,
                             compare_sequences, delaunay_diagonal, eval_c2, eval_df, eval_hrm,
                             eval_hrm_polygon, eval_hrm_simplex3, eval_mean_radius,
                             eval_min_angle_sum, eval_sv, eval_v, evaluate, identity_residual,
                             lct_check, lemma2_relation)
from dfl.geometry import SiteSet, simplex_volume
from dfl.triangulation import Triangulation

from strategies import seeds

SQRT3_HALF = "0.86602540378443864676372317075293618347140262690519"
CORNER_TET = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


def close(a, b, rel=1e-12):
    return math.isclose(float(a), float(b), rel_tol=rel, abs_tol=rel)


def gradient_df(t, heights):
    """Dirichlet energy from per-triangle gradients solved exactly."""
    total = F(0)
    for s in t.simplices:
        p = [t.sites[i] for i in s]
        y = [heights[i] for i in s]
        # solve [x1-x0; x2-x0] g = [y1-y0; y2-y0] by Cramer's rule
        a, b = p[1][0] - p[0][0], p[1][1] - p[0][1]
        c, d = p[2][0] - p[0][0], p[2][1] - p[0][1]
        r1, r2 = y[1] - y[0], y[2] - y[0]
        det = a * d - b * c
        g = ((r1 * d - b * r2) / det, (a * r2 - r1 * c) / det)
        total += (g[0] ** 2 + g[1] ** 2) * simplex_volume(p)
    return total


def cross_product_sv(t, heights):
    total = 0.0
    for s in t.simplices:
        q = [np.array([float(c) for c in t.sites[i]] + [float(heights[i])]) for i in s]
        total += np.linalg.norm(np.cross(q[1] - q[0], q[2] - q[0])) / 2
    return total


def numpy_radius(tri):
    p = np.array([[float(c) for c in v] for v in tri])
    a = 2 * (p[1:] - p[0])
    b = (p[1:] ** 2).sum(1) - (p[0] ** 2).sum()
    c = np.linalg.solve(a, b)
    return float(np.linalg.norm(c - p[0]))


def random_triangulations(seed, n, dim=2):
    sites = random_sites(stream(seed, 4), n, dim=dim)
    return sites, enumerate_triangulations(sites).triangulations


class TestC2V:
    def test_examples(self, unit_triangle):
        assert eval_c2(unit_triangle).exact == F(1, 9)
        assert eval_c2(unit_triangle, origin=(F(1, 3), F(1, 3))).exact == 0
        assert eval_v(unit_triangle).exact == 1

    def test_corner_tetrahedron(self):
        t = Triangulation(SiteSet(CORNER_TET), [(0, 1, 2, 3)])
        assert eval_v(t).exact == F(1, 2)
        assert identity_residual(t) == 0

    def test_identity_residual_example(self, unit_triangle):
        assert identity_residual(unit_triangle) == 0
        assert 9 * eval_c2(unit_triangle).exact + eval_v(unit_triangle).exact == 12 * F(1, 6)

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.integers(3, 7))
    def test_identity_residual_zero(self, seed, n):
        sites, ts = random_triangulations(seed, n)
        values = {9 * eval_c2(t).exact + eval_v(t).exact for t in ts}
        assert len(values) == 1
        assert all(identity_residual(t) == 0 for t in ts)

    def test_identity_residual_3d(self):
        from dfl.explore.lawson3d import two_triangulations_3d
        pts = [(0, 0, 0), (3, 0, 0), (0, 3, 0), (1, 1, 2), (1, 1, -2)]
        for t in two_triangulations_3d(pts):
            assert identity_residual(t) == 0

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.integers(4, 7), st.tuples(st.integers(-99, 99), st.integers(-99, 99)),
           st.tuples(st.integers(-99, 99), st.integers(-99, 99)))
    def test_origin_independent_differences(self, seed, n, o1, o2):
        sites, ts = random_triangulations(seed, n)
        a, b = ts[0], ts[-1]
        d1 = eval_c2(a, o1).exact - eval_c2(b, o1).exact
        d2 = eval_c2(a, o2).exact - eval_c2(b, o2).exact
        assert d1 == d2


class TestMeanRadius:
    def test_examples(self):
        t = Triangulation(SiteSet([(0, 0), (2, 0), (0, 2)]), [(0, 1, 2)])
        assert close(eval_mean_radius(t), math.sqrt(2))
        assert eval_mean_radius(t, "square").exact == 2

    def test_kite(self, kite):
        bd = eval_mean_radius(kite["bd"])
        ac = eval_mean_radius(kite["ac"])
        assert close(bd, math.sqrt(2) + math.sqrt(2.5))
        assert close(ac, math.sqrt(4.0625) + math.sqrt(3.25))
        assert close(bd, 2.99535, rel=1e-5)
        assert close(ac, 3.81834, rel=1e-5)
        assert compare(bd, ac) is Order.LESS

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.sampled_from(["identity", "square", "sqrt", "log"]))
    def test_against_numpy(self, seed, phi):
        sites = random_sites(stream(seed, 5), 7)
        t = build_dt(sites)
        f = {"identity": lambda r: r, "square": lambda r: r * r,
             "sqrt": math.sqrt, "log": math.log}[phi]
        expected = math.fsum(f(numpy_radius([sites[i] for i in s])) for s in t.simplices)
        assert close(eval_mean_radius(t, phi), expected, rel=1e-9)


class TestHRM:
    def test_equilateral(self):
        t = Triangulation(SiteSet([(0, 0), (1, 0), ("0.5", SQRT3_HALF)]), [(0, 1, 2)])
        assert close(eval_hrm(t), 4 * math.sqrt(3))
        assert close(eval_hrm(t, 2), 16)

    def test_right_isosceles(self, unit_triangle):
        assert eval_hrm(unit_triangle).exact == 8
        assert eval_hrm(unit_triangle, 2).exact == 24

    def test_bad_exponent(self, unit_triangle):
        with pytest.raises(BadExponent):
            eval_hrm(unit_triangle, F(1, 3))
        assert eval_hrm(unit_triangle, F(1, 2)).exact is None

    @settings(max_examples=50)
    @given(st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50)), min_size=3,
                    max_size=3, unique=True))
    def test_triangle_lower_bound(self, pts):
        assume(simplex_volume(pts) != 0)
        t = Triangulation(SiteSet(pts), [(0, 1, 2)])
        assert float(eval_hrm(t)) > 4 * math.sqrt(3)

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 9),
           st.sampled_from([(3, 4), (5, 12), (8, 15), (1, 0)]))
    def test_similarity_invariance(self, seed, dx, dy, s, pyth):
        sites = random_sites(stream(seed, 6), 6)
        a, b = pyth
        c = math.isqrt(a * a + b * b)
        cos, sin = F(a, c), F(b, c)
        moved = SiteSet([(s * (cos * x - sin * y) + dx, s * (sin * x + cos * y) + dy)
                         for x, y in sites.points])
        t = build_dt(sites)
        u = Triangulation(moved, t.simplices)
        assert eval_hrm(t).exact == eval_hrm(u).exact
        assert close(eval_hrm(t, F(3, 2)), eval_hrm(u, F(3, 2)))

    def test_polygons(self):
        assert eval_hrm_polygon([(0, 0), (1, 0), (1, 1), (0, 1)]).exact == 4
        hexagon = [(math.cos(i * math.pi / 3), math.sin(i * math.pi / 3)) for i in range(6)]
        assert close(eval_hrm_polygon(hexagon), 4 * math.tan(math.pi / 6), rel=1e-12)
        assert eval_hrm_polygon([(0, 0), (2, 0), (2, 1), (0, 1)]).exact == 5

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 12])
    def test_regular_polygon_value(self, n):
        poly = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)]
        assert close(eval_hrm_polygon(poly), 4 * math.tan(math.pi / n), rel=1e-12)

    def test_polygon_errors(self):
        with pytest.raises(SelfIntersecting):
            eval_hrm_polygon([(0, 0), (2, 2), (2, 0), (0, 1)])
        with pytest.raises(ZeroArea):
            eval_hrm_polygon([(0, 0), (1, 0), (2, 0)])

    def test_tetrahedra(self):
        assert close(eval_hrm_simplex3(CORNER_TET), 13.5 + 13.5 * math.sqrt(3))
        r = "0.81649658092772603273242802490196379732198249355222"  # sqrt(2/3)
        regular = [(0, 0, 0), (1, 0, 0), ("0.5", SQRT3_HALF, 0),
                   ("0.5", "0.28867513459481288225457439025097872782380087563506", r)]
        assert close(eval_hrm_simplex3(regular), 27 * math.sqrt(3) / 2, rel=1e-9)
        scaled = [tuple(7 * c for c in p) for p in CORNER_TET]
        assert close(eval_hrm_simplex3(scaled), eval_hrm_simplex3(CORNER_TET))
        with pytest.raises(DegenerateTetrahedron):
            eval_hrm_simplex3([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])


class TestSVDF:
    def test_examples(self, unit_triangle):
        assert close(eval_sv(unit_triangle, [1, 0, 0]), math.sqrt(3) / 2)
        assert eval_df(unit_triangle, [1, 0, 0]).exact == 1
        assert gradient_df(unit_triangle, [1, 0, 0]) == 1

    def test_constant_heights(self, kite):
        for t in (kite["bd"], kite["ac"]):
            assert eval_df(t, [5] * 4).exact == 0
            assert eval_sv(t, [5] * 4).exact == kite["sites"].hull_volume()

    def test_height_mismatch(self, kite):
        with pytest.raises(HeightFieldMismatch):
            eval_df(kite["bd"], [1, 2, 3])

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.integers(3, 8))
    def test_df_matches_gradients(self, seed, n):
        sites = random_sites(stream(seed, 7), n)
        y = random_heights(stream(seed, 8), n)
        t = build_dt(sites)
        assert eval_df(t, y).exact == gradient_df(t, y)

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.integers(3, 8))
    def test_sv_matches_cross_products(self, seed, n):
        sites = random_sites(stream(seed, 9), n)
        y = random_heights(stream(seed, 10), n)
        t = build_dt(sites)
        assert close(eval_sv(t, y), cross_product_sv(t, y), rel=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.fractions(-10, 10, max_denominator=9), st.fractions(-10, 10, max_denominator=9))
    def test_df_affine_heights(self, seed, a, b):
        sites = random_sites(stream(seed, 11), 6)
        y = random_heights(stream(seed, 12), 6)
        t = build_dt(sites)
        assert eval_df(t, [a * v + b for v in y]).exact == a * a * eval_df(t, y).exact

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
    def test_df_linear_heights(self, seed, a1, a2, b):
        sites, ts = random_triangulations(seed, 6)
        y = [a1 * x + a2 * z + b for x, z in sites.points]
        for t in ts:
            assert eval_df(t, y).exact == (a1 * a1 + a2 * a2) * sites.hull_volume()

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.fractions(0, 4, max_denominator=8), st.fractions(0, 4, max_denominator=8))
    def test_sv_monotone_in_scale(self, seed, s1, s2):
        lo, hi = sorted((s1, s2))
        sites = random_sites(stream(seed, 13), 5)
        y = random_heights(stream(seed, 14), 5)
        t = build_dt(sites)
        assert float(eval_sv(t, [lo * v for v in y])) <= float(eval_sv(t, [hi * v for v in y]))

    def test_three_dimensional(self):
        t = Triangulation(SiteSet(CORNER_TET), [(0, 1, 2, 3)])
        # linear interpolant of y=(0,1,2,3) has gradient (1,2,3)
        assert eval_df(t, [0, 1, 2, 3]).exact == F(14, 6)
        assert close(eval_sv(t, [0, 1, 2, 3]), math.sqrt(15) / 6)


class TestMinAngle:
    def test_examples(self, unit_triangle):
        eq = Triangulation(SiteSet([(0, 0), (1, 0), ("0.5", SQRT3_HALF)]), [(0, 1, 2)])
        assert close(eval_min_angle_sum(eq), math.pi / 3)
        assert close(eval_min_angle_sum(unit_triangle), math.pi / 4)

    def test_kite_sequence(self, kite):
        a = angle_sequence(kite["bd"])
        b = angle_sequence(kite["ac"])
        assert len(a) == 6 and a == sorted(a)
        assert close(sum(a), 2 * math.pi)
        assert compare_sequences(a, b) > 0

    def test_sum_is_not_locally_optimal_at_delaunay(self):
        quad = [(407, 949), (357, 429), (982, 646), (869, 922)]
        res = lct_check(FunctionalSpec(Kind.MIN_ANGLE_SUM), quad)
        assert not res.passed and not res.near_tie
        assert close(res.value_delaunay, 1.1408, rel=1e-4)
        assert close(res.value_other, 1.2458, rel=1e-4)
        # the max-min criterion itself still prefers the Delaunay diagonal
        sites = SiteSet(quad)
        i, j = res.delaunay_diagonal
        dt = Triangulation(sites, [(0, 1, 3), (1, 2, 3)] if (i, j) == (1, 3)
                           else [(0, 1, 2), (0, 2, 3)])
        other = Triangulation(sites, [(0, 1, 2), (0, 2, 3)] if (i, j) == (1, 3)
                              else [(0, 1, 3), (1, 2, 3)])
        assert compare_sequences(angle_sequence(dt), angle_sequence(other)) > 0


class TestQuadrilaterals:
    def test_lemma_example(self, kite):
        res = lemma2_relation(kite["points"])
        assert res.relation == 1
        assert res.labels == (0, 1, 2, 3)
        r = res.radii()
        assert close(r["ABD"], math.sqrt(2)) and close(r["BCD"], math.sqrt(2.5))
        assert close(r["ABC"], math.sqrt(4.0625)) and close(r["ADC"], math.sqrt(3.25))

    def test_lemma_relabels(self, kite):
        p = kite["points"]
        rotated = p[1:] + p[:1]
        assert delaunay_diagonal(rotated) == (0, 2)
        assert lemma2_relation(rotated).relation == 1

    def test_lemma_near_square(self):
        for eps in (F(1, 1000), F(-1, 997), F(1, 10**9)):
            quad = [(0, 0), (1, eps), (1, 1), (0, 1)]
            assert lemma2_relation(quad).relation in range(1, 6)

    def test_cocircular_and_reflex(self):
        with pytest.raises(Degenerate):
            lemma2_relation([(0, 0), (1, 0), (1, 1), (0, 1)])
        with pytest.raises(NotConvex):
            lemma2_relation([(0, 0), (4, 0), (1, 1), (0, 4)])
        with pytest.raises(NotConvex):
            lemma2_relation([(0, 0), (1, 1), (1, 0), (0, 1)])

    @settings(max_examples=200, deadline=None)
    @given(seeds)
    def test_lemma_never_violated(self, seed):
        assert lemma2_relation(random_convex_quad(stream(seed, 15))).relation in range(1, 6)

    def test_lct_examples(self, kite):
        assert lct_check(FunctionalSpec(Kind.HRM, k=1), kite["points"])
        res = lct_check(FunctionalSpec(Kind.C2), kite["points"])
        assert res and res.delaunay_diagonal == (1, 3)
        assert compare(res.value_delaunay, res.value_other) is Order.GREATER

    def test_lct_hrm3_counterexample_exists(self):
        spec = FunctionalSpec(Kind.HRM, k=3)
        assert any(not lct_check(spec, random_convex_quad(stream(0, i))) for i in range(500))

    @settings(max_examples=60, deadline=None)
    @given(seeds, st.sampled_from([
        FunctionalSpec(Kind.C2), FunctionalSpec(Kind.V), FunctionalSpec(Kind.HRM, k=1),
        FunctionalSpec(Kind.MEAN_RADIUS, phi="identity"), FunctionalSpec(Kind.MEAN_RADIUS, phi="square"),
        FunctionalSpec(Kind.MEAN_RADIUS, phi="sqrt"), FunctionalSpec(Kind.MEAN_RADIUS, phi="log")]))
    def test_lct_holds(self, seed, spec):
        assert lct_check(spec, random_convex_quad(stream(seed, 16)))

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_lct_df_any_heights(self, seed):
        rng = stream(seed, 17)
        quad = random_convex_quad(rng)
        spec = FunctionalSpec(Kind.DF, heights=[0] * 4)
        assert lct_check(spec, quad, heights=random_heights(rng, 4))

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_lct_sv_small_heights(self, seed):
        rng = stream(seed, 18)
        quad = random_convex_quad(rng)
        y = [v / 2**20 for v in random_heights(rng, 4)]
        assert lct_check(FunctionalSpec(Kind.SV, heights=[0] * 4), quad, heights=y)


class TestSpec:
    def test_parameters(self):
        with pytest.raises(ValueError):
            FunctionalSpec(Kind.V, k=2)
        with pytest.raises(ValueError):
            FunctionalSpec(Kind.MEAN_RADIUS, phi="cube")
        with pytest.raises(HeightFieldMismatch):
            FunctionalSpec(Kind.DF)
        assert FunctionalSpec(Kind.C2).maximize
        assert FunctionalSpec(Kind.MIN_ANGLE_SUM).maximize
        assert not FunctionalSpec(Kind.HRM).maximize

    def test_evaluate_dispatch(self, unit_triangle):
        assert evaluate(FunctionalSpec(Kind.V), unit_triangle).exact == 1
        assert evaluate(FunctionalSpec(Kind.DF, heights=[1, 0, 0]), unit_triangle).exact == 1
