"""Primal-dual covering machinery for the weighted problem.

Per root, the demand cuts avoiding that root get covered in rounds:
when the smallest T-intersection gamma is below the connectivity
target, the minimal cuts decompose into pairwise independent groups
whose core families are uncrossable, and each group is covered by a
grow-duals-then-reverse-delete pass; once gamma reaches the target the
whole residual family is uncrossable and one final pass covers it.
Duals are exact rationals so tightness and all certificate bounds are
checked with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .connectivity import CutCertificate, is_k_connected, make_demand_certificate, min_cores
from .dominating import is_m_dominating, mds_for_kcds_reduction, solve_weighted_mds
from .errors import InfeasibleInstance, PreconditionViolation, StallError
from .flows import NodeCutSolver
from .graph import Graph, closed_mask, gamma_mask, iter_bits, mask_of, set_of


# ---------------------------------------------------------------------------
# max-cores and the dependence decomposition
# ---------------------------------------------------------------------------

def _max_core_mask(solver: NodeCutSolver, g: Graph, tmask: int, smask: int,
                   k: int, r: int, zmask: int, other_masks) -> int:
    """Largest demand cut containing Z and no other minimal cut.

    The demand cuts containing a fixed superset of Z form a ring family
    whose least element is the minimal flow side, so a node belongs to
    the answer exactly when that least element over Z plus the node
    stays free of other minimal cuts.
    """
    rbit = 1 << r
    flow, capped, min_side, cut, max_side = solver.query(zmask, rbit, smask, cap=k)
    if capped or flow != k - 1:
        raise AssertionError("a minimal demand cut lost its boundary size")
    if min_side != zmask:
        raise AssertionError("minimal flow side disagrees with the minimal cut")
    result = zmask
    for v in iter_bits(max_side & ~zmask):
        fl2, capped2, side2, _, _ = solver.query(zmask | (1 << v), rbit, smask, cap=k)
        if capped2 or fl2 != k - 1:
            continue
        if any(om & side2 == om for om in other_masks):
            continue
        result |= 1 << v
    if any(om & result == om for om in other_masks):
        raise AssertionError("computed core contains a second minimal cut")
    return result


def max_core(g: Graph, t_nodes, s_nodes, k: int, r: int,
             z: CutCertificate, other_min_cores) -> CutCertificate:
    tmask = mask_of(t_nodes)
    smask = mask_of(s_nodes)
    solver = NodeCutSolver(g.adj, tmask | smask)
    others = [mask_of(c.x) for c in other_min_cores if frozenset(c.x) != frozenset(z.x)]
    mask = _max_core_mask(solver, g, tmask, smask, k, r, mask_of(z.x), others)
    return make_demand_certificate(g, mask, tmask, k, root=r)


def dependence_arcs(g: Graph, tmask: int, mincore_masks, maxcore_masks,
                    k: int, gamma: int) -> list[tuple[int, int]]:
    """Arc i -> j when min-core i's T-part sits on max-core j's boundary."""
    arcs = []
    n = len(mincore_masks)
    indeg = [0] * n
    for j in range(n):
        gmax = gamma_mask(g, maxcore_masks[j])
        for i in range(n):
            if i == j:
                continue
            ti = mincore_masks[i] & tmask
            if ti & gmax == ti:
                arcs.append((i, j))
                indeg[j] += 1
    limit = (k - 1) // gamma
    if any(d > limit for d in indeg):
        raise AssertionError("dependence in-degree exceeds (k-1)/gamma")
    return arcs


def decompose_independent(min_core_certs, max_core_certs, k: int, gamma: int,
                          g: Graph | None = None, tmask: int | None = None) -> list[list[int]]:
    """Split min-cores into groups with pairwise independent members.

    Greedy coloring in degeneracy order of the (undirected) dependence
    graph; the in-degree bound keeps the group count at most
    2 floor((k-1)/gamma) + 1.
    """
    if gamma > k - 1:
        raise PreconditionViolation("decomposition applies only when gamma <= k-1")
    n = len(min_core_certs)
    mincore_masks = [mask_of(c.x) for c in min_core_certs]
    maxcore_masks = [mask_of(c.x) for c in max_core_certs]
    arcs = dependence_arcs(g, tmask, mincore_masks, maxcore_masks, k, gamma)
    adj = [set() for _ in range(n)]
    for i, j in arcs:
        adj[i].add(j)
        adj[j].add(i)
    # degeneracy order: repeatedly drop a minimum-degree vertex
    remaining = set(range(n))
    deg = {v: len(adj[v]) for v in remaining}
    order = []
    work = {v: set(adj[v]) for v in remaining}
    while remaining:
        v = min(remaining, key=lambda u: (deg[u], u))
        order.append(v)
        remaining.discard(v)
        for u in work[v]:
            work[u].discard(v)
            deg[u] -= 1
    order.reverse()
    color = {}
    for v in order:
        used = {color[u] for u in adj[v] if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    n_colors = 1 + max(color.values(), default=0)
    if n_colors > 2 * ((k - 1) // gamma) + 1:
        raise AssertionError("coloring exceeded the guaranteed group count")
    groups = [[] for _ in range(n_colors)]
    for v in sorted(color):
        groups[color[v]].append(v)
    return [grp for grp in groups if grp]


# ---------------------------------------------------------------------------
# the covering pass
# ---------------------------------------------------------------------------

@dataclass
class DualEvent:
    alpha: Fraction
    min_cores: tuple[tuple[int, ...], ...]
    bought: int


@dataclass
class DualState:
    y: dict[tuple[int, ...], Fraction] = field(default_factory=dict)
    residual: dict[int, Fraction] = field(default_factory=dict)
    events: list[DualEvent] = field(default_factory=list)
    max_active_degree: int = 0

    def dual_total(self) -> Fraction:
        return sum(self.y.values(), start=Fraction(0))

    def log_lines(self):
        for i, ev in enumerate(self.events, 1):
            yield (
                f"event {i} alpha {ev.alpha} mincores {len(ev.min_cores)} "
                f"buy {ev.bought}"
            )

    def dual_lines(self):
        for canon in sorted(self.y):
            yield f"dual {','.join(str(v) for v in canon)} {self.y[canon]}"


class MinCoreFamily:
    """Fixed list of minimal demand cuts driving one covering pass.

    Coverage of the whole (implicit) family is equivalent to coverage
    of its minimal cuts: buying a node adjacent to a cut also covers
    every family member containing that cut, because members never
    contain nodes bought after the family was derived.
    """

    def __init__(self, g: Graph, certs):
        self.certs = list(certs)
        self.masks = [mask_of(c.x) for c in self.certs]
        self.gammas = [gamma_mask(g, m) for m in self.masks]
        self.closed = [self.masks[i] | self.gammas[i] for i in range(len(self.masks))]

    def active(self, bought_mask: int) -> list[int]:
        return [i for i, gm in enumerate(self.gammas) if not gm & bought_mask]

    def covers_all(self, bought_mask: int) -> bool:
        return all(gm & bought_mask for gm in self.gammas)


def cover_uncrossable(g: Graph, t_cur, wbar, family: MinCoreFamily,
                      *, strict_unit_disk: bool | None = None) -> tuple[frozenset[int], DualState]:
    """Grow duals on active minimal cuts, buy tight nodes, reverse-delete.

    Returns an inclusion-minimal cover of the family and a feasible dual
    whose value certifies the cover weight within the packing factor 15
    on unit disk inputs (asserted exactly there, recorded otherwise).
    """
    t_mask = mask_of(t_cur)
    strict = g.is_unit_disk if strict_unit_disk is None else strict_unit_disk
    dual = DualState()
    bought: list[int] = []
    bought_mask = 0
    candidates = g.all_mask & ~t_mask
    dual.residual = {v: Fraction(wbar[v]) for v in iter_bits(candidates)}
    while True:
        active = family.active(bought_mask)
        if not active:
            break
        # strong disjointness of active minimal cuts (uncrossable family)
        for ai in range(len(active)):
            i = active[ai]
            for j in active[ai + 1:]:
                if family.masks[i] & family.closed[j] or family.closed[i] & family.masks[j]:
                    raise AssertionError("active minimal cuts are not strongly disjoint")
        degree = {}
        for i in active:
            for v in iter_bits(family.gammas[i] & candidates & ~bought_mask):
                degree[v] = degree.get(v, 0) + 1
        if not degree:
            raise StallError("uncovered cuts remain but nothing can cover them")
        dmax = max(degree.values())
        dual.max_active_degree = max(dual.max_active_degree, dmax)
        if strict and dmax > 5:
            raise AssertionError("more than five active cuts at one candidate")
        alpha, buy = min(
            (dual.residual[v] / d, v) for v, d in degree.items()
        )
        canon_list = []
        for i in active:
            canon = family.certs[i].canon()
            canon_list.append(canon)
            dual.y[canon] = dual.y.get(canon, Fraction(0)) + alpha
        for v, d in degree.items():
            dual.residual[v] -= alpha * d
            if dual.residual[v] < 0:
                raise AssertionError("dual constraint overshot a weight")
        if dual.residual[buy] != 0:
            raise AssertionError("bought node is not tight")
        dual.events.append(DualEvent(alpha=alpha, min_cores=tuple(canon_list), bought=buy))
        bought.append(buy)
        bought_mask |= 1 << buy
    # reverse delete
    keep_mask = bought_mask
    for v in reversed(bought):
        trial = keep_mask & ~(1 << v)
        if family.covers_all(trial):
            keep_mask = trial
    s_tilde = set_of(keep_mask)
    _post_checks(g, family, dual, bought, keep_mask, wbar, strict)
    return s_tilde, dual


def _post_checks(g, family, dual, bought, keep_mask, wbar, strict):
    # every kept node has a witness cut covered by it alone
    prefix = 0
    for v in bought:
        prefix |= 1 << v
        if not (keep_mask >> v) & 1:
            continue
        probe = keep_mask | prefix
        if not any(
            gm & probe == (1 << v) and (gm >> v) & 1 for gm in family.gammas
        ):
            raise AssertionError("kept node lacks a witness cut")
    # per-event packing bound over the final cover, and the weight bound
    for ev in dual.events:
        masks = [mask_of(c) for c in ev.min_cores]
        gammas = [gamma_mask(g, m) for m in masks]
        total = sum(
            sum(1 for gm in gammas if (gm >> v) & 1) for v in iter_bits(keep_mask)
        )
        if strict and total > 15 * len(masks) - 5:
            raise AssertionError("cover degree sum exceeds the packing bound")
    weight = sum((Fraction(wbar[v]) for v in iter_bits(keep_mask)), start=Fraction(0))
    if strict and weight > 15 * dual.dual_total():
        raise AssertionError("cover weight exceeds 15x the dual value")


# ---------------------------------------------------------------------------
# augmentation driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverRecord:
    root: int
    gamma: int
    decomposed: bool
    added: frozenset[int]
    dual: DualState


@dataclass(frozen=True)
class PdAugmentation:
    added: frozenset[int]
    records: tuple[CoverRecord, ...]
    gamma_resets: int  # derivation rounds whose cuts include freshly bought nodes

    @property
    def events(self) -> int:
        return sum(len(r.dual.events) for r in self.records)


def augment_primal_dual_detailed(g: Graph, t_nodes, k: int, w,
                                 *, check: bool = True) -> PdAugmentation:
    """Raise the base set's connectivity to k by covering demand cuts for
    k roots in turn, re-deriving the residual family between rounds."""
    t_set = frozenset(t_nodes)
    tmask = mask_of(t_set)
    if check:
        if not is_k_connected(g, range(g.n), k):
            raise PreconditionViolation("graph is not k-connected")
        if not is_k_connected(g, t_set, k - 1):
            raise PreconditionViolation("base set is not (k-1)-connected")
    members = sorted(t_set)
    roots = members[: min(k, len(members))]
    s_total: set[int] = set()
    records: list[CoverRecord] = []
    gamma_resets = 0
    for r in roots:
        prev_gamma: int | None = None
        prev_round_bought = 0
        while True:
            allowed = tmask | mask_of(s_total)
            solver = NodeCutSolver(g.adj, allowed)
            certs = min_cores(g, t_set, s_total, k, r, solver=solver)
            if not certs:
                break
            masks = [mask_of(c.x) for c in certs]
            gamma = min((m & tmask).bit_count() for m in masks)
            fresh = any(m & prev_round_bought for m in masks)
            if prev_gamma is not None and not fresh and gamma < 2 * prev_gamma:
                raise AssertionError("gamma failed to double between rounds")
            if fresh:
                gamma_resets += 1
            round_bought = 0
            if gamma <= k - 1:
                smask = mask_of(s_total)
                maxcores = [
                    make_demand_certificate(
                        g,
                        _max_core_mask(solver, g, tmask, smask, k, r, masks[i],
                                       [m for j, m in enumerate(masks) if j != i]),
                        tmask, k, root=r,
                    )
                    for i in range(len(certs))
                ]
                groups = decompose_independent(certs, maxcores, k, gamma, g=g, tmask=tmask)
                for grp in groups:
                    live = [certs[i] for i in grp
                            if not gamma_mask(g, masks[i]) & round_bought]
                    if not live:
                        continue
                    family = MinCoreFamily(g, live)
                    s_new, dual = cover_uncrossable(
                        g, t_set | s_total, w, family
                    )
                    records.append(CoverRecord(
                        root=r, gamma=gamma, decomposed=True,
                        added=s_new, dual=dual,
                    ))
                    s_total |= s_new
                    round_bought |= mask_of(s_new)
                prev_gamma = gamma
            else:
                family = MinCoreFamily(g, certs)
                s_new, dual = cover_uncrossable(g, t_set | s_total, w, family)
                records.append(CoverRecord(
                    root=r, gamma=gamma, decomposed=False,
                    added=s_new, dual=dual,
                ))
                s_total |= s_new
                prev_gamma = None
            prev_round_bought = mask_of(s_total)
    if not is_k_connected(g, t_set | s_total, k):
        raise AssertionError("augmented set failed its connectivity check")
    return PdAugmentation(
        added=frozenset(s_total),
        records=tuple(records),
        gamma_resets=gamma_resets,
    )


def augment_primal_dual(g: Graph, t_nodes, k: int, w) -> frozenset[int]:
    return augment_primal_dual_detailed(g, t_nodes, k, w).added


# ---------------------------------------------------------------------------
# full weighted driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedRun:
    solution: frozenset[int]
    dominating: frozenset[int]
    stages: tuple[PdAugmentation, ...]

    @property
    def events(self) -> int:
        return sum(st.events for st in self.stages)


def run_weighted(g: Graph, k: int, m: int, w, *, check: bool = True,
                 base: frozenset[int] | None = None, start_k: int = 1) -> WeightedRun:
    """Weighted pipeline: a dominating set (direct multicover when m is
    k or k+1, LP rounding otherwise), then one augmentation per level."""
    if m < k:
        raise PreconditionViolation("need m >= k")
    if k < 1:
        raise PreconditionViolation("need k >= 1")
    if check and not is_k_connected(g, range(g.n), k):
        raise InfeasibleInstance("graph is not k-connected")
    if base is not None:
        t0 = base
    elif m in (k, k + 1):
        t0 = mds_for_kcds_reduction(g, w, k, m)
    else:
        t0 = solve_weighted_mds(g, w, m)
    if not is_m_dominating(g, t0, m):
        raise AssertionError("dominating stage output failed its check")
    t = frozenset(t0)
    stages = []
    for kp in range(start_k, k + 1):
        aug = augment_primal_dual_detailed(g, t, kp, w, check=False)
        stages.append(aug)
        t = t | aug.added
    if not is_m_dominating(g, t, m):
        raise AssertionError("final output failed the domination check")
    return WeightedRun(solution=t, dominating=frozenset(t0), stages=tuple(stages))


def solve_weighted_kmcds(g: Graph, k: int, m: int, w) -> frozenset[int]:
    return run_weighted(g, k, m, w).solution
