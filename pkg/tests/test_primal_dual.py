import random
from fractions import Fraction

import pytest

from kmcds.connectivity import is_k_connected, min_cores
from kmcds.dominating import is_m_dominating
from kmcds.errors import PreconditionViolation
from kmcds.graph import (
    build_unit_disk,
    closed_mask,
    from_edges,
    gamma_mask,
    mask_of,
)
from kmcds.instances import random_instance
from kmcds.oracle import enumerate_demand_cuts, exact_min_kmcds, minimal_members
from kmcds.primal_dual import (
    MinCoreFamily,
    augment_primal_dual_detailed,
    cover_uncrossable,
    decompose_independent,
    max_core,
    run_weighted,
    solve_weighted_kmcds,
)


def test_max_core_identity(c4_plus_apex):
    mc = min_cores(c4_plus_apex, {0, 1, 2}, set(), 2, 0)
    mx = max_core(c4_plus_apex, {0, 1, 2}, set(), 2, 0, mc[0], mc)
    assert mx.x == frozenset({2})


def test_max_core_matches_core_union_enumeration():
    rng = random.Random(19)
    checked = 0
    for trial in range(200):
        n = rng.randint(5, 11)
        inst = random_instance(n, (10, 10), rng.uniform(3.5, 7), seed=2000 + trial)
        g = build_unit_disk(inst)
        k = rng.randint(1, 3)
        nodes = list(range(n))
        rng.shuffle(nodes)
        t = frozenset(nodes[: rng.randint(max(2, k), n)])
        rest = [v for v in nodes if v not in t]
        s = frozenset(rest[: rng.randint(0, len(rest))])
        if not is_k_connected(g, t, k - 1):
            continue
        for r in sorted(t)[:2]:
            mcs = min_cores(g, t, s, k, r)
            if not mcs:
                continue
            fam = enumerate_demand_cuts(g, t, s, k, r=r)
            fam_sets = [frozenset(c.x) for c in fam]
            mins = {frozenset(c.x) for c in minimal_members(fam)}
            for z in mcs:
                zs = frozenset(z.x)
                cores = [fs for fs in fam_sets
                         if zs <= fs and sum(1 for o in mins if o <= fs) == 1]
                union = frozenset().union(*cores) if cores else zs
                got = max_core(g, t, s, k, r, z, mcs)
                assert frozenset(got.x) == union
                checked += 1
    assert checked > 80


def test_core_families_have_disjoint_t_parts():
    rng = random.Random(29)
    for trial in range(120):
        n = rng.randint(6, 11)
        inst = random_instance(n, (10, 10), rng.uniform(3.5, 6.5), seed=3000 + trial)
        g = build_unit_disk(inst)
        k = rng.randint(2, 3)
        nodes = list(range(n))
        rng.shuffle(nodes)
        t = frozenset(nodes[: rng.randint(max(3, k), n)])
        if not is_k_connected(g, t, k - 1):
            continue
        r = min(t)
        fam = enumerate_demand_cuts(g, t, set(), k, r=r)
        mins = {frozenset(c.x) for c in minimal_members(fam)}
        fam_sets = [frozenset(c.x) for c in fam]
        tmask = mask_of(t)
        cores = {
            z: [fs for fs in fam_sets
                if z <= fs and sum(1 for o in mins if o <= fs) == 1]
            for z in mins
        }
        for z1 in mins:
            for z2 in mins:
                if z1 >= z2:
                    continue
                for a in cores[z1]:
                    for b in cores[z2]:
                        assert not (mask_of(a) & mask_of(b) & tmask)


def test_decompose_trivial(c4_plus_apex):
    mc = min_cores(c4_plus_apex, {0, 1, 2}, set(), 2, 0)
    mx = [max_core(c4_plus_apex, {0, 1, 2}, set(), 2, 0, z, mc) for z in mc]
    groups = decompose_independent(mc, mx, 2, 1, g=c4_plus_apex,
                                   tmask=mask_of({0, 1, 2}))
    assert groups == [[0]]


def test_decompose_path_dependence(c6):
    # all of C6 as base, k=3: minimal cuts {1},{2},{3} form a dependence path
    t = frozenset(range(6))
    mc = min_cores(c6, t, set(), 3, 5)
    assert [sorted(c.x) for c in mc] == [[1], [2], [3]]
    mx = [max_core(c6, t, set(), 3, 5, z, mc) for z in mc]
    groups = decompose_independent(mc, mx, 3, 1, g=c6, tmask=mask_of(t))
    assert len(groups) == 2
    for grp in groups:
        for a in grp:
            for b in grp:
                if a >= b:
                    continue
                ta = mask_of(mc[a].x) & mask_of(t)
                gb = gamma_mask(c6, mask_of(mx[b].x))
                tb = mask_of(mc[b].x) & mask_of(t)
                ga = gamma_mask(c6, mask_of(mx[a].x))
                assert not (ta & gb == ta or tb & ga == tb)


def test_cover_hand_trace(c4_plus_apex):
    w = [Fraction(0), Fraction(0), Fraction(0), Fraction(1), Fraction(5)]
    mc = min_cores(c4_plus_apex, {0, 1, 2}, set(), 2, 0)
    family = MinCoreFamily(c4_plus_apex, mc)
    s, dual = cover_uncrossable(c4_plus_apex, {0, 1, 2}, w, family)
    assert s == frozenset({3})
    assert dual.dual_total() == 1
    assert [ev.bought for ev in dual.events] == [3]
    assert dual.y[(2,)] == 1


def test_cover_empty_family(c4_plus_apex):
    family = MinCoreFamily(c4_plus_apex, [])
    s, dual = cover_uncrossable(c4_plus_apex, {0, 1, 2}, [Fraction(1)] * 5, family)
    assert s == frozenset() and dual.dual_total() == 0


def test_augment_hand_instance(c4_plus_apex):
    w = [Fraction(0), Fraction(0), Fraction(0), Fraction(1), Fraction(5)]
    aug = augment_primal_dual_detailed(c4_plus_apex, {0, 1, 2}, 2, w)
    assert aug.added == frozenset({3})


def test_augment_noop_when_connected(c4_plus_apex):
    aug = augment_primal_dual_detailed(c4_plus_apex, {0, 1, 2, 3}, 2,
                                       [Fraction(1)] * 5)
    assert aug.added == frozenset()


def test_k5_weighted_optimal(k5_unit_disk=None):
    k5 = from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)],
                    is_unit_disk=True)
    sol = solve_weighted_kmcds(k5, 3, 3, [Fraction(1)] * 5)
    assert len(sol) == 3


def test_fuzz_validity_and_certificates():
    rng = random.Random(59)
    solved = 0
    for trial in range(60):
        n = rng.randint(8, 12)
        inst = random_instance(n, (10, 10), rng.uniform(4, 7), seed=4000 + trial,
                               weight_mode="uniform:0.2:2" if trial % 2 else "unit")
        g = build_unit_disk(inst)
        k = rng.randint(1, 3)
        m = min(k + rng.randint(0, 1), 3)
        if m < k or not is_k_connected(g, range(n), k):
            continue
        try:
            opt = exact_min_kmcds(g, k, m, w=inst.weights)
        except Exception:
            continue
        run = run_weighted(g, k, m, inst.weights)
        assert is_k_connected(g, run.solution, k)
        assert is_m_dominating(g, run.solution, m)
        wsol = sum((inst.weights[v] for v in run.solution), start=Fraction(0))
        assert wsol >= opt.optimum
        # per-pass certificate: cover weight at most 15x its dual value
        for stage in run.stages:
            for rec in stage.records:
                wres = sum((inst.weights[v] for v in rec.added), start=Fraction(0))
                assert wres <= 15 * rec.dual.dual_total()
        solved += 1
    assert solved >= 25


def test_event_min_cores_strongly_laminar():
    rng = random.Random(61)
    checked = 0
    for trial in range(40):
        n = rng.randint(8, 12)
        inst = random_instance(n, (10, 10), rng.uniform(4, 6.5), seed=5000 + trial)
        g = build_unit_disk(inst)
        k = rng.randint(2, 3)
        if not is_k_connected(g, range(n), k):
            continue
        try:
            run = run_weighted(g, k, k, inst.weights)
        except Exception:
            continue
        for stage in run.stages:
            for rec in stage.records:
                seen = []
                for ev in rec.dual.events:
                    seen.extend(mask_of(c) for c in ev.min_cores)
                for i, a in enumerate(seen):
                    ca = a | gamma_mask(g, a)
                    for b in seen[i + 1:]:
                        cb = b | gamma_mask(g, b)
                        laminar = (
                            a & b == a or a & b == b or (a & cb == 0 and ca & b == 0)
                        )
                        assert laminar
                        checked += 1
    assert checked > 50
