from fractions import Fraction as F

import pytest

from dfl.delaunay import delaunay_witness
from dfl.errors import BadParams
from dfl.explore import search_counterexample
from dfl.explore.search import FOUND, NOT_FOUND, SearchKind
from dfl.functionals import FunctionalSpec, Kind, evaluate
from dfl.geometry import SiteSet
from dfl.triangulation import from_key, validate


def test_hrm_k_witness():
    rep = search_counterexample(SearchKind.HRM_K, {"k": 3}, seed=0, budget=10**5)
    assert rep.status == FOUND and rep.witness["reverified"]
    w = rep.witness
    sites = SiteSet(w["sites"])
    dt = from_key(sites, w["delaunay"])
    other = from_key(sites, w["minimizer"])
    assert validate(dt) and validate(other)
    assert delaunay_witness(dt) is None and delaunay_witness(other) is not None
    spec = FunctionalSpec(Kind.HRM, k=3)
    assert evaluate(spec, other).exact < evaluate(spec, dt).exact


@pytest.mark.parametrize("kind", ["SV_PLANAR", "DST_3D", "HRM_3D"])
def test_other_kinds_found(kind):
    rep = search_counterexample(kind, seed=0, budget=1000)
    assert rep.found and rep.witness["reverified"]
    assert rep.witness["minimizer"] != rep.witness["delaunay"]


def test_dst_3d_witness_exact():
    w = search_counterexample("DST_3D", seed=0, budget=1000).witness
    sites = SiteSet(w["sites"])
    spec = FunctionalSpec(Kind.DF, heights=w["heights"])
    dt, other = from_key(sites, w["delaunay"]), from_key(sites, w["minimizer"])
    assert delaunay_witness(dt) is None
    assert evaluate(spec, other).exact < evaluate(spec, dt).exact


def test_deterministic():
    a = search_counterexample("HRM_K", {"k": "1/2"}, seed=5, budget=3000).to_dict()
    b = search_counterexample("HRM_K", {"k": "1/2"}, seed=5, budget=3000).to_dict()
    assert a == b


def test_not_found_reports_budget():
    rep = search_counterexample("HRM_K", {"k": F(11, 10)}, seed=0, budget=3)
    assert rep.status == NOT_FOUND and rep.iterations == 3 and rep.witness is None


@pytest.mark.parametrize("kind,params,budget", [
    ("HRM_K", {"k": 1}, 10), ("HRM_K", {"k": "0.4"}, 10), ("SV_PLANAR", {"n": 3}, 10),
    ("HRM_K", {"k": 2}, 0)])
def test_bad_params(kind, params, budget):
    with pytest.raises(BadParams):
        search_counterexample(kind, params, budget=budget)


def test_witness_coordinates_are_decimal_strings():
    w = search_counterexample("HRM_K", {"k": 2}, seed=0, budget=10**4).witness
    for p in w["sites"]:
        for c in p:
            assert isinstance(c, str) and "/" not in c
