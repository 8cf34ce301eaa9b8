"""Brute-force ground truth for small instances.

Subset enumeration over bitmasks: exact minimum solutions, full demand
cut families, and exact multicover optima. Size caps are hard errors so
a truncated search can never masquerade as an oracle answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .connectivity import CutCertificate, CutKind, make_demand_certificate
from .errors import BudgetExceeded, Infeasible
from .graph import Graph, closed_mask, gamma_mask, iter_bits, mask_connected, mask_of, set_of


@dataclass(frozen=True)
class OracleResult:
    optimum: Fraction | int
    witness: frozenset[int]
    explored: int


def _is_complete_mask(g: Graph, smask: int) -> bool:
    for v in iter_bits(smask):
        if (g.adj[v] & smask) != smask & ~(1 << v):
            return False
    return True


def mask_k_connected(g: Graph, smask: int, k: int) -> bool:
    """Exhaustive k-connectivity of the induced subgraph (small sets only)."""
    if k <= 0:
        return True
    ns = smask.bit_count()
    if ns <= k:
        return _is_complete_mask(g, smask)
    sub = [g.adj[v] & smask if (smask >> v) & 1 else 0 for v in range(g.n)]
    if not mask_connected(sub, smask):
        return False
    if k == 1:
        return True
    members = list(iter_bits(smask))
    for removal in itertools.combinations(members, k - 1):
        rem = smask & ~mask_of(removal)
        sub2 = [(sub[v] & rem) if (rem >> v) & 1 else 0 for v in range(g.n)]
        if not mask_connected(sub2, rem):
            return False
    return True


def mask_m_dominating(g: Graph, smask: int, m: int) -> bool:
    outside = g.all_mask & ~smask
    for v in iter_bits(outside):
        if (g.adj[v] & smask).bit_count() < m:
            return False
    return True


def is_feasible_kmcds(g: Graph, nodes, k: int, m: int) -> bool:
    smask = mask_of(nodes)
    return mask_m_dominating(g, smask, m) and mask_k_connected(g, smask, k)


def exact_min_kmcds(g: Graph, k: int, m: int, w=None, budget_nodes: int = 18) -> OracleResult:
    """Global minimum by subset enumeration.

    Unweighted search walks subsets in cardinality-lexicographic order so
    the first feasible hit is a minimum; the weighted search walks them
    in nondecreasing weight via a heap so the first hit is optimal.
    """
    n = g.n
    if n > budget_nodes:
        raise BudgetExceeded(f"{n} nodes exceeds the cap of {budget_nodes}")
    explored = 0
    if w is None:
        for size in range(1, n + 1):
            for comb in itertools.combinations(range(n), size):
                explored += 1
                smask = mask_of(comb)
                if mask_m_dominating(g, smask, m) and mask_k_connected(g, smask, k):
                    return OracleResult(optimum=size, witness=frozenset(comb), explored=explored)
        raise Infeasible("no feasible node set of any size")
    import heapq

    order = sorted(range(n), key=lambda v: (w[v], v))
    weights = [Fraction(w[v]) for v in range(n)]
    heap = []
    for i, v in enumerate(order):
        heapq.heappush(heap, (weights[v], (v,), i))
    while heap:
        total, nodes_tup, last = heapq.heappop(heap)
        explored += 1
        smask = mask_of(nodes_tup)
        if mask_m_dominating(g, smask, m) and mask_k_connected(g, smask, k):
            return OracleResult(optimum=total, witness=frozenset(nodes_tup), explored=explored)
        for j in range(last + 1, n):
            v = order[j]
            heapq.heappush(heap, (total + weights[v], nodes_tup + (v,), j))
    raise Infeasible("no feasible node set of any size")


def enumerate_demand_cuts(
    g: Graph,
    t_nodes,
    s_nodes,
    k: int,
    r: int | None = None,
    budget_nodes: int = 16,
) -> list[CutCertificate]:
    """Every demand cut of T, by full subset enumeration.

    Without a root: cuts are subsets of T whose T-boundary has exactly
    k-1 nodes; the covered flag records whether some T-path through S
    covers the cut. With a root r: cuts live on T+S, keep a T node,
    avoid the closed neighborhood of r, keep an S-free neighborhood,
    and have a (k-1)-node T-boundary.
    """
    tmask = mask_of(t_nodes)
    smask = mask_of(s_nodes)
    universe = tmask if r is None else (tmask | smask)
    nu = universe.bit_count()
    if nu > budget_nodes:
        raise BudgetExceeded(f"universe of {nu} nodes exceeds the cap of {budget_nodes}")
    members = list(iter_bits(universe))
    out: list[CutCertificate] = []
    shortcut = None
    if r is None:
        from .connectivity import shortcut_graph

        shortcut = shortcut_graph(g, set_of(tmask), set_of(smask))
    for bits in range(1, 1 << nu):
        xmask = 0
        b = bits
        while b:
            low = b & -b
            xmask |= 1 << members[low.bit_length() - 1]
            b ^= low
        gm = gamma_mask(g, xmask)
        if r is None:
            if tmask & ~(xmask | gm) == 0:
                continue
            if (gm & tmask).bit_count() != k - 1:
                continue
            covered = gamma_mask(shortcut, xmask, tmask) != gm & tmask
            out.append(make_demand_certificate(g, xmask, tmask, k, covered=covered))
        else:
            if not xmask & tmask:
                continue
            if (xmask | gm) & (1 << r):
                continue
            if gm & smask:
                continue
            if (gm & tmask).bit_count() != k - 1:
                continue
            if tmask & ~(xmask | gm) == 0:
                continue
            out.append(make_demand_certificate(g, xmask, tmask, k, root=r))
    out.sort(key=lambda c: (len(c.x), c.canon()))
    return out


def minimal_members(certs: list[CutCertificate]) -> list[CutCertificate]:
    masks = [mask_of(c.x) for c in certs]
    keep = []
    for i, c in enumerate(certs):
        if not any(j != i and masks[j] & masks[i] == masks[j] for j in range(len(certs))):
            keep.append(c)
    return keep


def exact_multicover(inst, cap_disks: int = 20) -> OracleResult:
    """Optimal multicover by subset enumeration over the disks."""
    nd = len(inst.disk_ids)
    if nd > cap_disks:
        raise BudgetExceeded(f"{nd} disks exceeds the cap of {cap_disks}")
    for p, dem in enumerate(inst.demands):
        if inst.point_cover_masks[p].bit_count() < dem:
            raise Infeasible("a point demands more disks than contain it")
    best = None
    best_mask = 0
    explored = 0
    for mask in range(1 << nd):
        explored += 1
        ok = all(
            (inst.point_cover_masks[p] & mask).bit_count() >= dem
            for p, dem in enumerate(inst.demands)
        )
        if not ok:
            continue
        total = sum(
            (inst.disk_weights[i] for i in iter_bits(mask)), start=Fraction(0)
        )
        key = (total, mask.bit_count(), sorted(iter_bits(mask)))
        if best is None or key < best:
            best = key
            best_mask = mask
    if best is None:
        raise Infeasible("no disk subset covers all demands")
    return OracleResult(
        optimum=best[0],
        witness=frozenset(inst.disk_ids[i] for i in iter_bits(best_mask)),
        explored=explored,
    )
