"""m-dominating set construction.

Three routes: the layered maximal-independent-set build with a
connector (unweighted pipeline), an LP-plus-rounding pipeline for
general weights, and a direct multicover reduction for m close to the
connectivity target. A greedy prune trims any connected dominating set
to an inclusion-minimal one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Infeasible, PreconditionViolation
from .graph import (
    Graph,
    closed_mask,
    gamma_mask,
    iter_bits,
    mask_components,
    mask_connected,
    mask_of,
    set_of,
)


def is_m_dominating(g: Graph, nodes, m: int) -> bool:
    smask = mask_of(nodes)
    for v in iter_bits(g.all_mask & ~smask):
        if (g.adj[v] & smask).bit_count() < m:
            return False
    return True


# ---------------------------------------------------------------------------
# layered maximal independent sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LayeredMis:
    layers: tuple[frozenset[int], ...]
    connector: frozenset[int]

    def backbone(self) -> frozenset[int]:
        out = set(self.connector)
        for layer in self.layers:
            out |= layer
        return frozenset(out)


def layered_mis(g: Graph, m: int) -> LayeredMis:
    """m maximal independent sets, each taken greedily by ascending index
    from the nodes not used by earlier layers. The union of the first i
    layers i-dominates the graph."""
    if m < 1:
        raise PreconditionViolation("need m >= 1")
    remaining = g.all_mask
    layers = []
    for _ in range(m):
        layer = 0
        for v in iter_bits(remaining):
            if not g.adj[v] & layer:
                layer |= 1 << v
        layers.append(set_of(layer))
        remaining &= ~layer
    return LayeredMis(layers=tuple(layers), connector=frozenset())


def connector(g: Graph, i1) -> frozenset[int]:
    """Nodes joining the components spanned by an independent set.

    Greedy merging: prefer one node adjacent to two or more current
    components (most components first, then lowest index), else a
    two-node bridge. At most 2(|I1|-1) nodes get added.
    """
    i1mask = mask_of(i1)
    if i1mask == 0:
        return frozenset()
    if not mask_connected(g.adj, g.all_mask):
        raise PreconditionViolation("graph must be connected")
    chosen = i1mask
    added = 0
    while True:
        sub = [g.adj[v] & chosen if (chosen >> v) & 1 else 0 for v in range(g.n)]
        comps = mask_components(sub, chosen)
        if len(comps) <= 1:
            break
        outside = g.all_mask & ~chosen
        best = None  # (-components touched, v)
        for v in iter_bits(outside):
            touched = sum(1 for c in comps if g.adj[v] & c)
            if touched >= 2 and (best is None or (-touched, v) < best):
                best = (-touched, v)
        if best is not None:
            chosen |= 1 << best[1]
            added += 1
            continue
        bridge = None
        for v1 in sorted(iter_bits(outside)):
            c1 = next((i for i, c in enumerate(comps) if g.adj[v1] & c), None)
            if c1 is None:
                continue
            for v2 in sorted(iter_bits(g.adj[v1] & outside)):
                if any(i != c1 and g.adj[v2] & c for i, c in enumerate(comps)):
                    bridge = (v1, v2)
                    break
            if bridge:
                break
        if bridge is None:
            raise PreconditionViolation("components cannot be merged; graph disconnected?")
        chosen |= mask_of(bridge)
        added += 2
    c = chosen & ~i1mask
    if added > 2 * (i1mask.bit_count() - 1):
        raise AssertionError("connector exceeded its size guarantee")
    return set_of(c)


def prune_minimal(g: Graph, t_nodes, m: int, w=None) -> frozenset[int]:
    """Inclusion-minimal connected m-dominating subset of T.

    Removal attempts run in descending weight then descending index,
    repeated until no single node can go.
    """
    tmask = mask_of(t_nodes)
    sub = [g.adj[v] & tmask if (tmask >> v) & 1 else 0 for v in range(g.n)]
    if not mask_connected(sub, tmask) or not is_m_dominating(g, set_of(tmask), m):
        raise PreconditionViolation("input is not a connected m-dominating set")

    def order(mask):
        nodes = sorted(iter_bits(mask))
        if w is None:
            return sorted(nodes, reverse=True)
        return sorted(nodes, key=lambda v: (w[v], v), reverse=True)

    changed = True
    while changed:
        changed = False
        for v in order(tmask):
            if not (tmask >> v) & 1:
                continue
            cand = tmask & ~(1 << v)
            if cand == 0:
                continue
            if (g.adj[v] & cand).bit_count() < m:
                continue
            ok = True
            for u in iter_bits(g.adj[v] & ~tmask):
                if (g.adj[u] & cand).bit_count() < m:
                    ok = False
                    break
            if not ok:
                continue
            sub2 = [g.adj[x] & cand if (cand >> x) & 1 else 0 for x in range(g.n)]
            if not mask_connected(sub2, cand):
                continue
            tmask = cand
            changed = True
    return set_of(tmask)


# ---------------------------------------------------------------------------
# multicover
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MulticoverInstance:
    """Points with demands, disks with weights, containment as disk masks."""

    point_ids: tuple[int, ...]
    demands: tuple[int, ...]
    disk_ids: tuple[int, ...]
    disk_weights: tuple[Fraction, ...]
    point_cover_masks: tuple[int, ...]  # over local disk indices

    def total_demand(self) -> int:
        return sum(self.demands)


def greedy_disk_multicover(inst: MulticoverInstance) -> frozenset[int]:
    """Feasible cover chosen by repeated best weight-per-new-unit ratio."""
    nd = len(inst.disk_ids)
    residual = list(inst.demands)
    for p, dem in enumerate(inst.demands):
        if inst.point_cover_masks[p].bit_count() < dem:
            raise Infeasible("a point demands more disks than contain it")
    disk_points: list[list[int]] = [[] for _ in range(nd)]
    for p, mask in enumerate(inst.point_cover_masks):
        for i in iter_bits(mask):
            disk_points[i].append(p)
    chosen = 0
    while any(residual):
        best = None  # (ratio, index)
        for i in range(nd):
            if (chosen >> i) & 1:
                continue
            units = sum(1 for p in disk_points[i] if residual[p] > 0)
            if units == 0:
                continue
            ratio = Fraction(inst.disk_weights[i]) / units
            if best is None or (ratio, i) < best:
                best = (ratio, i)
        if best is None:
            raise Infeasible("residual demand left with no usable disk")
        i = best[1]
        chosen |= 1 << i
        for p in disk_points[i]:
            if residual[p] > 0:
                residual[p] -= 1
    return frozenset(inst.disk_ids[i] for i in iter_bits(chosen))


def node_multicover_instance(g: Graph, w, demands: dict[int, int],
                             disks=None) -> MulticoverInstance:
    """Disks are (closed) radius neighborhoods of nodes: a disk contains a
    point iff they coincide or are adjacent."""
    disk_list = sorted(disks) if disks is not None else list(range(g.n))
    disk_pos = {v: i for i, v in enumerate(disk_list)}
    disk_mask_all = mask_of(disk_list)
    points = sorted(demands)
    cover = []
    for p in points:
        mask = 0
        avail = (g.adj[p] | (1 << p)) & disk_mask_all
        for v in iter_bits(avail):
            mask |= 1 << disk_pos[v]
        cover.append(mask)
    return MulticoverInstance(
        point_ids=tuple(points),
        demands=tuple(demands[p] for p in points),
        disk_ids=tuple(disk_list),
        disk_weights=tuple(Fraction(w[v]) for v in disk_list),
        point_cover_masks=tuple(cover),
    )


def mds_for_kcds_reduction(g: Graph, w, k: int, m: int) -> frozenset[int]:
    """Direct multicover route, valid when m is k or k+1: every node is a
    point of demand m and its own disk counts toward the cover."""
    if m not in (k, k + 1):
        raise PreconditionViolation("direct reduction needs m in {k, k+1}")
    inst = node_multicover_instance(g, w, {v: m for v in range(g.n)})
    return greedy_disk_multicover(inst)


# ---------------------------------------------------------------------------
# LP relaxation and rounding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FractionalSolution:
    x: tuple[float, ...]
    objective: float


_SEP_TOL = 1e-9


def _violated_constraint(g: Graph, m: int, x, v: int):
    """Most violated covering constraint at node v, if any.

    For each count m' of excluded high-value neighbors, the remaining
    neighbor mass must reach (m - m') (1 - x(v)).
    """
    nbrs = sorted(g.neighbors(v), key=lambda u: (x[u], u))
    prefix = [0.0]
    for u in nbrs:
        prefix.append(prefix[-1] + x[u])
    deg = len(nbrs)
    worst = None
    for mp in range(0, min(m, deg) + 1):
        lhs = prefix[deg - mp]
        rhs = (m - mp) * (1.0 - x[v])
        gap = rhs - lhs
        if gap > _SEP_TOL and (worst is None or gap > worst[0]):
            worst = (gap, mp)
    if worst is None:
        return None
    mp = worst[1]
    excluded = frozenset(nbrs[deg - mp:]) if mp else frozenset()
    return (v, excluded, m - mp)


def solve_lp_mds(g: Graph, w, m: int, max_rounds: int = 400) -> FractionalSolution:
    """Fractional relaxation of minimum-weight m-domination.

    Cutting-plane loop: start from the full-neighborhood constraints and
    add the most violated exclusion constraint per node until the
    sorted-neighbor separation finds none beyond tolerance.
    """
    from scipy.optimize import linprog

    n = g.n
    if m == 0:
        return FractionalSolution(x=tuple(0.0 for _ in range(n)), objective=0.0)
    c = [float(w[v]) for v in range(n)]
    rows: list[tuple[int, frozenset[int], int]] = [(v, frozenset(), m) for v in range(n)]
    seen = set(rows)
    for _ in range(max_rounds):
        a_ub = []
        b_ub = []
        for v, excluded, need in rows:
            coeff = [0.0] * n
            for u in g.neighbors(v):
                if u not in excluded:
                    coeff[u] = -1.0
            coeff[v] -= need
            a_ub.append(coeff)
            b_ub.append(-need)
        res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(0.0, 1.0)] * n, method="highs")
        if not res.success:
            raise Infeasible(f"LP solve failed: {res.message}")
        x = [min(1.0, max(0.0, xi)) for xi in res.x]
        new_rows = []
        for v in range(n):
            hit = _violated_constraint(g, m, x, v)
            if hit is not None and hit not in seen:
                new_rows.append(hit)
                seen.add(hit)
        if not new_rows:
            return FractionalSolution(x=tuple(x), objective=float(res.fun))
        rows.extend(new_rows)
    raise Infeasible("cutting-plane loop did not converge")


def round_mds(g: Graph, w, m: int, xstar: FractionalSolution) -> frozenset[int]:
    """Threshold rounding: keep every node above 1/2, multicover the rest."""
    x = xstar.x
    u_set = [v for v in range(g.n) if x[v] <= 0.5 + 1e-12]
    u_mask = mask_of(u_set)
    demands = {}
    for v in u_set:
        need = m - (g.adj[v] & ~u_mask).bit_count()
        if need > 0:
            demands[v] = need
    inst = node_multicover_instance(g, w, demands, disks=u_set)
    cover = greedy_disk_multicover(inst)
    out = frozenset(v for v in range(g.n) if v not in u_set) | cover
    if not is_m_dominating(g, out, m):
        raise AssertionError("rounded set fails the domination check")
    return out


def solve_weighted_mds(g: Graph, w, m: int) -> frozenset[int]:
    """LP + rounding pipeline for the weighted m-dominating set."""
    xstar = solve_lp_mds(g, w, m)
    return round_mds(g, w, m, xstar)
