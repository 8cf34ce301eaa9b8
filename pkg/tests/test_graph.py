import random

import pytest

from kmcds.graph import (
    block_cut_tree,
    build_unit_disk,
    from_edges,
    gamma,
    gamma_mask,
    iter_bits,
    mask_components,
    mask_of,
    verify_kissing,
)
from kmcds.instances import random_instance


def test_gamma_basics(c4):
    path = from_edges(3, [(0, 1), (1, 2)])
    assert gamma(path, set()) == frozenset()
    assert gamma(path, {0}) == frozenset({1})
    assert gamma(c4, {0, 2}) == frozenset({1, 3})
    assert gamma(c4, {0, 2}, t={1}) == frozenset({1})


def test_block_cut_path():
    bct = block_cut_tree(from_edges(3, [(0, 1), (1, 2)]))
    assert sorted(sorted(b) for b in bct.blocks) == [[0, 1], [1, 2]]
    assert bct.cut_nodes == frozenset({1})


def test_block_cut_star():
    star = from_edges(5, [(0, i) for i in range(1, 5)])
    bct = block_cut_tree(star)
    assert bct.block_count() == 4
    assert bct.cut_nodes == frozenset({0})


def test_block_cut_cycle(c4):
    bct = block_cut_tree(c4)
    assert bct.block_count() == 1
    assert bct.cut_nodes == frozenset()


def test_block_cut_membership_identity():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 12)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.3]
        g = from_edges(n, edges)
        bct = block_cut_tree(g)
        # every edge in exactly one block
        for (u, v) in g.edges():
            homes = [b for b in bct.blocks if u in b and v in b]
            assert len(homes) >= 1
            covering = [b for b in bct.blocks
                        if u in b and v in b]
            assert len(covering) == 1
        # multi-block membership exactly at cut nodes
        for v in range(n):
            count = sum(1 for b in bct.blocks if v in b)
            assert (count >= 2) == (v in bct.cut_nodes)
        # tree identity per connected component
        comps = mask_components(g.adj, g.all_mask)
        total = sum(len(b) - 1 for b in bct.blocks)
        nonisolated = sum(
            c.bit_count() for c in comps if c.bit_count() > 1
        )
        n_comp_nonisolated = sum(1 for c in comps if c.bit_count() > 1)
        assert total == nonisolated - n_comp_nonisolated


def test_kissing_low_degree_vacuous():
    g = from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    assert verify_kissing(g)


def test_kissing_star_fails():
    assert not verify_kissing(from_edges(7, [(0, i) for i in range(1, 7)]))


def test_kissing_on_generated_instances():
    for seed in range(1000):
        inst = random_instance(30, (30, 30), 9, seed=seed)
        g = build_unit_disk(inst)
        assert verify_kissing(g)


def test_neighborhood_inequalities_fuzz():
    # submodular and posi-modular forms, exact, 10^4 random triples
    rng = random.Random(42)
    checked = 0
    while checked < 10_000:
        n = rng.randint(4, 12)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.4]
        g = from_edges(n, edges)
        for _ in range(20):
            full = (1 << n) - 1
            x = rng.randrange(1 << n)
            y = rng.randrange(1 << n)
            t = rng.randrange(1 << n)

            def gt(mask):
                return gamma_mask(g, mask, t).bit_count()

            lhs = gt(x) + gt(y)
            assert lhs >= gt(x & y) + gt(x | y)
            xp = x | gamma_mask(g, x)
            yp = y | gamma_mask(g, y)
            assert lhs >= gt(x & ~yp & full) + gt(y & ~xp & full)
            checked += 1
