import random

import pytest

from kmcds.connectivity import is_k_connected
from kmcds.dominating import is_m_dominating
from kmcds.errors import PreconditionViolation
from kmcds.graph import build_unit_disk, from_edges
from kmcds.instances import random_instance
from kmcds.oracle import exact_min_kmcds
from kmcds.simple_augment import (
    augment_simple,
    iteration_bound,
    run_unweighted,
    solve_unweighted_kmcds,
)


def test_c4_single_iteration(c4):
    s, trace = augment_simple(c4, {0, 1, 2}, 2, 2)
    assert s == frozenset({3})
    assert trace.iterations == 1
    assert list(trace.log_lines()) == ["iter 1 cut 0 path 0,3,2"]


def test_already_connected_is_noop(c4):
    s, trace = augment_simple(c4, {0, 1, 2, 3}, 2, 2)
    assert s == frozenset() and trace.iterations == 0


def test_m_below_k_rejected(c4):
    with pytest.raises(PreconditionViolation):
        augment_simple(c4, {0, 1, 2}, 2, 1)


def test_k5_matches_oracle(k5):
    sol = solve_unweighted_kmcds(k5, 3, 3)
    assert len(sol) == exact_min_kmcds(k5, 3, 3).optimum == 3


def test_path_interior():
    p5 = from_edges(5, [(i, i + 1) for i in range(4)])
    assert solve_unweighted_kmcds(p5, 1, 1) == frozenset({1, 2, 3})


def test_fuzz_validity_and_bounds():
    rng = random.Random(6)
    solved = 0
    for seed in range(50):
        inst = random_instance(100, (100, 100), 35, seed=seed)
        g = build_unit_disk(inst)
        if not is_k_connected(g, range(g.n), 3):
            continue
        run = run_unweighted(g, 3, 3, check=False)
        assert is_k_connected(g, run.solution, 3)
        assert is_m_dominating(g, run.solution, 3)
        for kp, trace in zip(range(2, 4), run.stage_traces):
            base_size = len(run.backbone_post_prune) + sum(
                len(set().union(*t.added_paths)) for t in run.stage_traces[: kp - 2]
            )
            assert trace.iterations <= iteration_bound(kp, base_size)
        solved += 1
    assert solved >= 40


def test_stage_assertions_are_armed():
    # per-root accounting and laminarity witnesses run inside augment_simple
    inst = random_instance(60, (60, 60), 22, seed=3)
    g = build_unit_disk(inst)
    if is_k_connected(g, range(g.n), 2):
        run = run_unweighted(g, 2, 2, check=False)
        assert run.solution
