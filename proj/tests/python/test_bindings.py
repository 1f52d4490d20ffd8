import math

import pytest

import community_forge as cf


def test_torus_distance_and_partition():
    assert cf.torus_distance(0.9, -0.9, 1.0) == pytest.approx(0.2)
    arcs = cf.partition_ring(4, 1.0)
    assert [a.start for a in arcs] == pytest.approx([-1.0, -0.5, 0.0, 0.5])
    assert all(a.length == pytest.approx(0.5) for a in arcs)


def test_kernel_validation_is_raised_as_value_error():
    with pytest.raises(ValueError):
        cf.KernelSpec("gaussian", 1.5, 0.3)
    with pytest.raises(cf.KernelValidationError):
        cf.GlobalParams(L=1.0, c=0.05, E_p=1.0, E_q=1.0,
                        f=cf.KernelSpec("gaussian", 1.0, 0.3), g=cf.KernelSpec("gaussian", 0.9, 0.3))


def test_demand_closed_form():
    f = cf.KernelSpec("gaussian", 1.0, 0.3)
    arc = cf.Arc(-0.1, 0.2)
    s = 0.3 * math.sqrt(2.0)
    want = 0.3 * math.sqrt(math.pi / 2.0) * 2.0 * math.erf(0.1 / s)
    assert cf.demand_at(arc, 1.0, f, 0.0) == pytest.approx(want, rel=1e-13)


def test_canonical_construction_and_verification():
    p = cf.canonical_params()
    assert cf.max_interval_length(p) == pytest.approx(1.0)
    s = cf.construct_covering(p)
    assert s.K == 17
    assert sum(c.arc.length for c in s.communities) == pytest.approx(2.0)
    report = cf.verify_nash(s, n_agents=100, seed=3)
    assert report["pass"]
    c = s.communities[0]
    totals = c.totals
    assert totals["consumer"] == pytest.approx(totals["producer"], rel=1e-6)
    for group in c.checks().values():
        assert all(passed for passed, _, _ in group.values())


def test_infeasible_cost_raises():
    with pytest.raises(cf.ConstructionError):
        cf.construct_covering(cf.canonical_params(c=1.5))


def test_filtering_entry_points():
    p = cf.canonical_params()
    c = cf.construct_covering(p).communities[0]
    agent, offset, step = cf.optimal_filter_agent(c, cf.KernelSpec("gaussian", 1.0, 0.2), p)
    assert abs(offset) <= step
    t = cf.threshold_filter_totals(c, p)
    assert t["threshold"] == pytest.approx(t["all_pass"], rel=1e-6)
    plan = cf.expert_routing_plan(c, p)
    assert plan["delta_total"] >= 0.0
    assert len(plan["gains"]) == len(c.production["y"])


def test_build_structure_from_arcs_detects_split():
    p = cf.canonical_params()
    s = cf.construct_covering(p)
    arcs = [c.arc for c in s.communities]
    a0 = arcs[0]
    arcs[0:1] = [cf.Arc(a0.start, 0.3 * a0.length), cf.Arc(a0.start + 0.3 * a0.length, 0.7 * a0.length)]
    tampered = cf.build_structure(p, arcs)
    assert not cf.verify_nash(tampered, n_agents=200, seed=3)["pass"]
