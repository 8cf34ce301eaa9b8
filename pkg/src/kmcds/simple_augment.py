"""Cut-covering augmentation for the unweighted problem.

Raise the connectivity of a base set one unit at a time: while the base
is short of the target, pick an inclusion-minimal uncovered demand cut
and buy the inner nodes of a shortest covering path. A laminar-family
counting argument caps the iterations at k(2|T|-3), which is asserted
on every run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .connectivity import (
    CutCertificate,
    DemandCutScanner,
    find_covering_path,
    is_k_connected,
)
from .dominating import connector, is_m_dominating, layered_mis, prune_minimal
from .errors import InfeasibleInstance, PreconditionViolation
from .graph import Graph, closed_mask, iter_bits, mask_of, set_of


@dataclass
class AugmentationTrace:
    chosen_cuts: list[CutCertificate] = field(default_factory=list)
    added_paths: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.chosen_cuts)

    def log_lines(self):
        for i, (cut, path) in enumerate(zip(self.chosen_cuts, self.added_paths), 1):
            cset = ",".join(str(v) for v in sorted(cut.x))
            pset = ",".join(str(v) for v in path)
            yield f"iter {i} cut {cset} path {pset}"


def iteration_bound(k: int, t_size: int) -> int:
    return k * (2 * t_size - 3)


def _per_root_accounting(g: Graph, t_sorted, k: int, trace: AugmentationTrace) -> None:
    """Counting and laminarity checks on the chosen-cut family."""
    roots = t_sorted[: min(k, len(t_sorted))]
    bound = 2 * len(t_sorted) - 3
    tmask = mask_of(t_sorted)
    for r in roots:
        mine = [c for c in trace.chosen_cuts if r not in c.boundary_in_t]
        if len(mine) > bound:
            raise AssertionError("per-root chosen-cut count exceeds 2|T|-3")
        if len(t_sorted) <= 60:
            transformed = []
            for c in mine:
                xmask = mask_of(c.x)
                if (xmask >> r) & 1:
                    transformed.append(tmask & ~closed_mask(g, xmask))
                else:
                    transformed.append(xmask)
            for i, a in enumerate(transformed):
                for b in transformed[i + 1:]:
                    inter = a & b
                    if inter and inter != a and inter != b:
                        raise AssertionError("transformed cut family is not laminar")


def augment_simple(g: Graph, t_nodes, k: int, m: int,
                   *, check: bool = True) -> tuple[frozenset[int], AugmentationTrace]:
    """Buy nodes outside T until T plus the purchases is k-connected.

    T must be an m-dominating set inducing a (k-1)-connected subgraph
    with m >= k; every covering path then has at most two inner nodes.
    """
    t_set = frozenset(t_nodes)
    if m < k:
        raise PreconditionViolation("need m >= k")
    if check:
        if not is_k_connected(g, range(g.n), k):
            raise PreconditionViolation("graph is not k-connected")
        if not is_m_dominating(g, t_set, m):
            raise PreconditionViolation("base set is not m-dominating")
        if not is_k_connected(g, t_set, k - 1):
            raise PreconditionViolation("base set is not (k-1)-connected")
    scanner = DemandCutScanner(g, t_set, k)
    trace = AugmentationTrace()
    s: set[int] = set()
    bound = iteration_bound(k, len(t_set))
    while True:
        cert = scanner.find_uncovered(s)
        if cert is None:
            break
        path = find_covering_path(g, t_set, s, cert)
        inner = tuple(path[1:-1])
        trace.chosen_cuts.append(cert)
        trace.added_paths.append(tuple(path))
        s.update(inner)
        if trace.iterations > bound:
            raise AssertionError("iteration count exceeded k(2|T|-3)")
        if len(inner) > 2:
            raise AssertionError("covering path has more than two inner nodes")
    _per_root_accounting(g, sorted(t_set), k, trace)
    return frozenset(s), trace


@dataclass(frozen=True)
class UnweightedRun:
    solution: frozenset[int]
    backbone_pre_prune: frozenset[int]
    backbone_post_prune: frozenset[int]
    stage_traces: tuple[AugmentationTrace, ...]

    @property
    def iterations(self) -> int:
        return sum(t.iterations for t in self.stage_traces)


def run_unweighted(g: Graph, k: int, m: int, *, check: bool = True,
                   weights=None) -> UnweightedRun:
    """Full unweighted pipeline: layered independent sets plus connector,
    prune to a minimal connected m-dominating set, then raise the
    connectivity one level per stage."""
    if m < k:
        raise PreconditionViolation("need m >= k")
    if k < 1:
        raise PreconditionViolation("need k >= 1")
    if check and not is_k_connected(g, range(g.n), k):
        raise InfeasibleInstance("graph is not k-connected")
    lm = layered_mis(g, m)
    conn = connector(g, lm.layers[0])
    pre = frozenset(set().union(*lm.layers, conn))
    post = prune_minimal(g, pre, m, w=weights)
    t = post
    traces = []
    for kp in range(2, k + 1):
        s, trace = augment_simple(g, t, kp, m, check=False)
        traces.append(trace)
        t = t | s
        if not is_k_connected(g, t, kp):
            raise AssertionError("stage output failed its connectivity check")
    if not is_m_dominating(g, t, m):
        raise AssertionError("final output failed the domination check")
    return UnweightedRun(
        solution=t,
        backbone_pre_prune=pre,
        backbone_post_prune=post,
        stage_traces=tuple(traces),
    )


def solve_unweighted_kmcds(g: Graph, k: int, m: int) -> frozenset[int]:
    return run_unweighted(g, k, m).solution
