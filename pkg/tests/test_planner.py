import math

import pytest

from cellplan.capacity import CapacityResult
from cellplan.coverage import CoverageResult
from cellplan.geomap import DigitalMap, Node, region_area
from cellplan.pam import PamConfig, brute_force_best
from cellplan.planner import (
    ClusterReport,
    IterationSnapshot,
    Method,
    PlanWarning,
    check_cluster,
    initial_k,
    plan,
    plan_method1,
    plan_method2,
)
from cellplan.rng import Lcg64
from conftest import make_nodes


def coverage_with(cell_area_m2):
    radius_km = math.sqrt(cell_area_m2 / math.pi) / 1000.0
    return CoverageResult(
        eirp_dbm=58.0,
        total_margin_db=12.0,
        max_path_loss_db=140.0,
        cell_range_km=radius_km,
        cell_area_m2=cell_area_m2,
    )


def capacity_with(subscribers_per_cell):
    return CapacityResult(
        traffic_per_subscriber_e=0.015,
        frequencies_per_cell=2,
        traffic_channels_per_cell=14,
        traffic_per_cell_e=subscribers_per_cell * 0.015,
        subscribers_per_cell=subscribers_per_cell,
    )


def make_map(coords, subscribers=None, declared_area_m2=None):
    return DigitalMap(
        name="t",
        nodes=tuple(make_nodes(coords, subscribers)),
        declared_area_m2=declared_area_m2,
    )


def clump(cx, cy, n, spread, seed):
    rng = Lcg64(seed)
    return [(cx + rng.uniform(-spread, spread), cy + rng.uniform(-spread, spread)) for _ in range(n)]


GENEROUS_AREA = 1e12  # one cell covers anything we build here
GENEROUS_SUBS = 1e9


class TestInitialK:
    def test_coverage_dominated(self):
        # 337800 m2 over a 785398 m2 cell: 0.43 cells, so one suffices
        dmap = make_map([(0, 0), (10, 0)], declared_area_m2=337800.0)
        k = initial_k(dmap, coverage_with(785398.1633974483), capacity_with(1e9))
        assert k == 1

    def test_capacity_dominated(self):
        coords = [(i * 100.0, 0.0) for i in range(10)]
        dmap = make_map(coords, subscribers=[400.0] * 10, declared_area_m2=10.0)
        # 4000 subscribers at 730.67 per cell: 5.47 cells, rounded up to 6
        k = initial_k(dmap, coverage_with(1e12), capacity_with(730.673481510021))
        assert k == 6

    def test_floor_is_one(self):
        dmap = make_map([(0, 0)], declared_area_m2=1.0)
        assert initial_k(dmap, coverage_with(1e12), capacity_with(1e9)) == 1

    def test_capped_at_node_count_with_warning(self):
        dmap = make_map([(0, 0), (5, 0), (9, 3)], subscribers=[300.0] * 3)
        with pytest.warns(PlanWarning, match="capping at 3"):
            k = initial_k(dmap, coverage_with(1e12), capacity_with(10.0))
        assert k == 3


class TestCheckCluster:
    def test_empty_load_singleton(self):
        members = make_nodes([(4, 7)])
        r = check_cluster(1, members, coverage_with(1e6), capacity_with(726.0))
        assert r.hull_area_m2 == 0.0
        assert r.subscribers == 0.0
        assert r.cells_coverage_ratio == 0.0
        assert r.cells_capacity_ratio == 0.0
        assert r.satisfied

    def test_light_cluster_satisfied(self):
        # right triangle, hull area 0.3 km2
        members = make_nodes(
            [(0, 0), (1000, 0), (0, 600)], subscribers=[50.0, 30.0, 20.0]
        )
        r = check_cluster(1, members, coverage_with(785398.1633974483), capacity_with(726.0))
        assert r.hull_area_m2 == pytest.approx(300000.0)
        assert r.cells_coverage_ratio == pytest.approx(0.3819718634205488)
        assert r.cells_capacity_ratio == pytest.approx(100.0 / 726.0)
        assert r.satisfied

    def test_overloaded_cluster_violates(self):
        members = make_nodes([(0, 0), (10, 0)], subscribers=[900.0, 600.0])
        r = check_cluster(2, members, coverage_with(1e12), capacity_with(726.0))
        assert r.cells_capacity_ratio == pytest.approx(1500.0 / 726.0)
        assert not r.satisfied

    def test_oversized_cluster_violates(self):
        members = make_nodes([(0, 0), (3000, 0), (0, 2000)])
        r = check_cluster(1, members, coverage_with(1e6), capacity_with(726.0))
        assert r.cells_coverage_ratio == pytest.approx(3.0)
        assert not r.satisfied

    def test_medoid_must_be_a_member(self):
        with pytest.raises(ValueError, match="9"):
            check_cluster(9, make_nodes([(0, 0)]), coverage_with(1e6), capacity_with(10))

    def test_member_ids_sorted(self):
        members = list(reversed(make_nodes([(0, 0), (5, 0), (9, 0)])))
        r = check_cluster(2, members, coverage_with(1e12), capacity_with(1e9))
        assert r.member_ids == (1, 2, 3)


def assert_partition(result, dmap):
    seen = sorted(nid for r in result.clusters for nid in r.member_ids)
    assert seen == sorted(n.id for n in dmap.nodes)
    for r in result.clusters:
        assert r.medoid_id in r.member_ids


class TestMethod1:
    def test_immediate_convergence(self):
        dmap = make_map([(0, 0), (50, 0), (100, 50)], declared_area_m2=100.0)
        res = plan_method1(dmap, coverage_with(GENEROUS_AREA), capacity_with(GENEROUS_SUBS))
        assert res.method is Method.GLOBAL_RECLUSTER
        assert res.feasible
        assert res.final_k == 1
        assert len(res.iterations) == 1
        assert res.iterations[0].violations == 0
        assert_partition(res, dmap)

    def test_grows_k_until_hulls_fit(self):
        # 3 km x 1 km rectangle: one 1 km2 cell cannot hold the 3 km2 hull,
        # two cells split it into zero-area pairs
        dmap = make_map(
            [(0, 0), (3000, 0), (0, 1000), (3000, 1000)], declared_area_m2=900000.0
        )
        res = plan_method1(dmap, coverage_with(1e6), capacity_with(GENEROUS_SUBS))
        assert res.feasible
        assert res.final_k == 2
        ks = [snap.k for snap in res.iterations]
        assert ks == [1, 2]
        assert res.iterations[0].violations == 1
        assert res.iterations[-1].violations == 0
        assert_partition(res, dmap)

    def test_two_clumps_get_one_medoid_each(self):
        left = clump(0, 0, 3, 200, seed=5)
        right = clump(50_000, 0, 3, 200, seed=6)
        dmap = make_map(left + right, subscribers=[400.0] * 6, declared_area_m2=100.0)
        res = plan_method1(dmap, coverage_with(GENEROUS_AREA), capacity_with(1300.0))
        assert res.feasible
        assert res.final_k == 2
        sides = sorted(
            tuple(sorted(r.member_ids)) for r in res.clusters
        )
        assert sides == [(1, 2, 3), (4, 5, 6)]
        # the 2-medoid optimum places one station in each clump
        best = brute_force_best(dmap.nodes, 2)
        assert {r.medoid_id for r in res.clusters} == set(best.medoid_ids)

    def test_cluster_cap_makes_plan_infeasible(self):
        coords = [(i * 10.0, 0.0) for i in range(9)]
        dmap = make_map(coords, subscribers=[400.0] * 9, declared_area_m2=10.0)
        res = plan_method1(
            dmap, coverage_with(GENEROUS_AREA), capacity_with(726.0), max_total_clusters=2
        )
        assert not res.feasible
        assert res.final_k == 2
        assert any("cap (2)" in note for note in res.notes)
        assert res.iterations[-1].violations > 0
        assert_partition(res, dmap)

    def test_k_strictly_increases(self):
        rng = Lcg64(17)
        coords = [(rng.uniform(0, 5000), rng.uniform(0, 5000)) for _ in range(20)]
        dmap = make_map(coords, subscribers=[80.0] * 20, declared_area_m2=1000.0)
        res = plan_method1(dmap, coverage_with(2e6), capacity_with(300.0))
        ks = [snap.k for snap in res.iterations]
        assert ks == sorted(set(ks))
        assert res.final_k == ks[-1]


class TestMethod2:
    def test_no_violations_single_pass(self):
        dmap = make_map([(0, 0), (50, 0), (100, 50)], declared_area_m2=100.0)
        res = plan_method2(dmap, coverage_with(GENEROUS_AREA), capacity_with(GENEROUS_SUBS))
        assert res.method is Method.LOCAL_SPLIT
        assert res.feasible
        assert res.final_k == 1
        assert len(res.iterations) == 1
        assert_partition(res, dmap)

    def test_splits_only_the_overloaded_clump(self):
        light_a = clump(0, 0, 3, 200, seed=1)
        light_b = clump(50_000, 0, 3, 200, seed=2)
        heavy = clump(25_000, 40_000, 4, 200, seed=3)
        subs = [100.0] * 6 + [350.0] * 4
        dmap = make_map(light_a + light_b + heavy, subscribers=subs, declared_area_m2=100.0)
        cov = coverage_with(GENEROUS_AREA)
        cap = capacity_with(726.0)  # total 2000 subs: start at 3 clusters

        base = plan_method1(dmap, cov, cap, max_total_clusters=3)
        assert not base.feasible  # the heavy clump cannot fit in one cell

        res = plan_method2(dmap, cov, cap)
        assert res.feasible
        assert res.final_k == 4
        members = sorted(tuple(sorted(r.member_ids)) for r in res.clusters)
        # both light clumps survive untouched; the heavy one is split in two
        assert (1, 2, 3) in members
        assert (4, 5, 6) in members
        split = [m for m in members if m not in {(1, 2, 3), (4, 5, 6)}]
        assert len(split) == 2
        assert sorted(nid for part in split for nid in part) == [7, 8, 9, 10]
        assert_partition(res, dmap)

    def test_violated_singleton_is_a_dead_end(self):
        dmap = make_map([(0, 0), (90_000, 0)], subscribers=[100.0, 8000.0], declared_area_m2=10.0)
        with pytest.warns(PlanWarning):
            res = plan_method2(dmap, coverage_with(GENEROUS_AREA), capacity_with(726.0))
        assert not res.feasible
        assert any("cannot be split" in note for note in res.notes)
        assert res.final_k == 2
        assert_partition(res, dmap)

    def test_cluster_cap_blocks_splitting(self):
        coords = [(i * 10.0, 0.0) for i in range(8)]
        dmap = make_map(coords, subscribers=[400.0] * 8, declared_area_m2=10.0)
        res = plan_method2(
            dmap, coverage_with(GENEROUS_AREA), capacity_with(726.0), max_total_clusters=3
        )
        assert not res.feasible
        assert any("keeping it whole" in note for note in res.notes)
        assert res.final_k <= 3
        assert_partition(res, dmap)

    def test_snapshots_track_growth_and_finish_at_final_state(self):
        rng = Lcg64(23)
        coords = [(rng.uniform(0, 20_000), rng.uniform(0, 20_000)) for _ in range(24)]
        dmap = make_map(coords, subscribers=[160.0] * 24, declared_area_m2=1000.0)
        res = plan_method2(dmap, coverage_with(GENEROUS_AREA), capacity_with(500.0))
        ks = [snap.k for snap in res.iterations]
        assert ks == sorted(ks)
        assert ks[-1] == res.final_k
        if res.feasible:
            assert res.iterations[-1].violations == 0
        assert_partition(res, dmap)

    def test_adaptive_split_reaches_feasibility(self):
        coords = clump(0, 0, 12, 300, seed=9)
        dmap = make_map(coords, subscribers=[400.0] * 12, declared_area_m2=100.0)
        cov = coverage_with(GENEROUS_AREA)
        cap = capacity_with(726.0)
        plain = plan_method2(dmap, cov, cap)
        adaptive = plan_method2(dmap, cov, cap, adaptive_split=True)
        assert adaptive.feasible and plain.feasible
        # ratio 6.6 means the first adaptive pass already asks for 7 parts
        assert len(adaptive.iterations) <= len(plain.iterations)
        assert_partition(adaptive, dmap)


def strip_timing(res):
    return (res.method, res.feasible, res.final_k, res.clusters, res.iterations, res.notes)


class TestPlanFrontDoor:
    def test_dispatch_by_int(self):
        dmap = make_map([(0, 0), (10, 10)], declared_area_m2=10.0)
        cov, cap = coverage_with(GENEROUS_AREA), capacity_with(GENEROUS_SUBS)
        assert plan(dmap, cov, cap, 1).method is Method.GLOBAL_RECLUSTER
        assert plan(dmap, cov, cap, 2).method is Method.LOCAL_SPLIT
        assert plan(dmap, cov, cap, Method.LOCAL_SPLIT).method is Method.LOCAL_SPLIT

    def test_unknown_method_rejected(self):
        dmap = make_map([(0, 0)], declared_area_m2=10.0)
        with pytest.raises(ValueError):
            plan(dmap, coverage_with(1e6), capacity_with(10.0), 3)

    def test_bad_cap_rejected(self):
        dmap = make_map([(0, 0)], declared_area_m2=10.0)
        with pytest.raises(ValueError):
            plan_method1(
                dmap, coverage_with(1e6), capacity_with(10.0), max_total_clusters=0
            )

    @pytest.mark.parametrize("method", [1, 2])
    def test_deterministic_apart_from_timing(self, method):
        rng = Lcg64(31)
        coords = [(rng.uniform(0, 30_000), rng.uniform(0, 30_000)) for _ in range(18)]
        dmap = make_map(coords, subscribers=[210.0] * 18, declared_area_m2=1000.0)
        cov, cap = coverage_with(GENEROUS_AREA), capacity_with(726.0)
        cfg = PamConfig(seed=8)
        a = plan(dmap, cov, cap, method, pam_cfg=cfg)
        b = plan(dmap, cov, cap, method, pam_cfg=cfg)
        assert strip_timing(a) == strip_timing(b)
        assert a.elapsed_ms >= 0.0

    @pytest.mark.parametrize("method", [1, 2])
    def test_feasible_plans_satisfy_independent_recheck(self, method):
        rng = Lcg64(47)
        coords = [(rng.uniform(0, 10_000), rng.uniform(0, 10_000)) for _ in range(16)]
        dmap = make_map(coords, subscribers=[120.0] * 16, declared_area_m2=1000.0)
        cov, cap = coverage_with(5e7), capacity_with(400.0)
        res = plan(dmap, cov, cap, method)
        assert res.feasible
        by_id = {n.id: n for n in dmap.nodes}
        for r in res.clusters:
            members = [by_id[nid] for nid in r.member_ids]
            assert region_area(members) / cov.cell_area_m2 <= 1.0 + 1e-12
            assert sum(n.subscribers for n in members) / cap.subscribers_per_cell <= 1.0 + 1e-12
            assert r.hull_area_m2 == pytest.approx(region_area(members))
