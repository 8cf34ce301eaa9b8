import math
import random

import pytest

from kmcds.errors import ParseError, ValidationError
from kmcds.graph import build_unit_disk
from kmcds.instances import (
    MICRO,
    UnitDiskInstance,
    random_instance,
    read_instance,
    write_instance,
)


def test_roundtrip(tmp_path):
    inst = random_instance(25, (100, 100), 20, seed=11, weight_mode="uniform:0.5:2.5")
    path = tmp_path / "a.udg"
    write_instance(inst, str(path))
    assert read_instance(str(path)) == inst


def test_same_seed_bytes_identical(tmp_path):
    a = tmp_path / "a.udg"
    b = tmp_path / "b.udg"
    write_instance(random_instance(40, (100, 100), 20, seed=9), str(a))
    write_instance(random_instance(40, (100, 100), 20, seed=9), str(b))
    assert a.read_bytes() == b.read_bytes()


def test_empty_instance():
    inst = random_instance(0, (10, 10), 5, seed=1)
    assert inst.n == 0
    assert build_unit_disk(inst).edge_count() == 0


def test_weight_count_mismatch_is_parse_error(tmp_path):
    path = tmp_path / "bad.udg"
    path.write_text("udg v1\nn 2 radius 1.0 region 5 5 seed -\n0 1.0 1.0 1.0\n")
    with pytest.raises(ParseError):
        read_instance(str(path))


def test_negative_radius_is_validation_error(tmp_path):
    path = tmp_path / "bad.udg"
    path.write_text("udg v1\nn 1 radius -1.0 region 5 5 seed -\n0 1.0 1.0 1.0\n")
    with pytest.raises(ValidationError):
        read_instance(str(path))


def test_parse_error_carries_line():
    with pytest.raises(ValidationError):
        UnitDiskInstance(n=1, coords=((0, 0),), radius=MICRO,
                         region=(MICRO, MICRO), weights=())


def test_exact_boundary_edge():
    inst = UnitDiskInstance(
        n=2, coords=((0, 0), (20 * MICRO, 0)), radius=20 * MICRO,
        region=(100 * MICRO, 100 * MICRO), weights=(1, 1))
    g = build_unit_disk(inst)
    assert g.has_edge(0, 1)


def test_collinear_spacing():
    inst = UnitDiskInstance(
        n=3, coords=((0, 0), (20 * MICRO, 0), (40 * MICRO, 0)),
        radius=20 * MICRO, region=(100 * MICRO, 100 * MICRO), weights=(1, 1, 1))
    g = build_unit_disk(inst)
    assert g.has_edge(0, 1) and g.has_edge(1, 2) and not g.has_edge(0, 2)
    assert g.edge_count() == 2


def _pair_probability(lam: float) -> float:
    # P(|PQ| <= r) for P, Q uniform in a square of side L, lam = r/L <= 1
    return math.pi * lam**2 - (8.0 / 3.0) * lam**3 + 0.5 * lam**4


def test_pair_probability_formula_against_quadrature():
    # independent numerical check of the closed form used below
    rng = random.Random(123)
    lam = 0.2
    hits = 0
    trials = 200_000
    for _ in range(trials):
        dx = rng.random() - rng.random()
        dy = rng.random() - rng.random()
        if dx * dx + dy * dy <= lam * lam:
            hits += 1
    assert abs(hits / trials - _pair_probability(lam)) < 4e-3


def test_mean_degree_matches_geometry():
    # 400 nodes, 100x100, radius 20: interior estimate 50.3, exact 41.95
    total = 0.0
    seeds = range(100)
    for seed in seeds:
        inst = random_instance(400, (100, 100), 20, seed=seed)
        g = build_unit_disk(inst)
        total += 2 * g.edge_count() / 400
    mean = total / len(seeds)
    expected = 399 * _pair_probability(0.2)
    assert abs(mean - expected) < 1.0
    interior = 400 * math.pi * 20**2 / 100**2
    assert abs(mean / interior - 1.0) < 0.2  # boundary deficit is ~16.5%
