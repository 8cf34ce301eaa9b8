"""Vertex connectivity tests and demand-cut oracles.

A demand cut of a (k-1)-connected node set T is a cut whose T-boundary
has exactly k-1 nodes: the obstruction that keeps T below connectivity
k. Both solvers consume these cuts only through the query surface here
(find one violated, list the minimal ones, test coverage); the families
themselves are exponential and stay implicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import NoPathError, PreconditionViolation
from .flows import NodeCutSolver
from .graph import (
    Graph,
    closed_mask,
    from_edges,
    gamma_mask,
    iter_bits,
    mask_components,
    mask_connected,
    mask_of,
    set_of,
)


class CutKind(Enum):
    T_CUT = "t-cut"
    STEINER_T_CUT = "steiner-t-cut"
    T_ROOT_CUT = "t-root-cut"
    DEMAND_CUT = "demand-cut"


@dataclass(frozen=True)
class CutCertificate:
    """A node set X with its boundary data and classification."""

    x: frozenset[int]
    boundary: frozenset[int]        # neighbors of X in the full graph
    boundary_in_t: frozenset[int]   # neighbors of X inside T
    kind: CutKind
    root: int | None = None
    covered: bool = False

    def canon(self) -> tuple[int, ...]:
        return tuple(sorted(self.x))


def make_demand_certificate(g: Graph, xmask: int, tmask: int, k: int,
                            root: int | None = None, covered: bool = False) -> CutCertificate:
    gm = gamma_mask(g, xmask)
    bt = gm & tmask
    if xmask == 0:
        raise AssertionError("empty cut")
    if bt.bit_count() != k - 1:
        raise AssertionError("demand cut boundary size mismatch")
    if root is not None and (closed_mask(g, xmask) >> root) & 1:
        raise AssertionError("root inside closed neighborhood of cut")
    if tmask & ~closed_mask(g, xmask) == 0:
        raise AssertionError("cut swallows all of T")
    return CutCertificate(
        x=set_of(xmask),
        boundary=set_of(gm),
        boundary_in_t=set_of(bt),
        kind=CutKind.DEMAND_CUT,
        root=root,
        covered=covered,
    )


# ---------------------------------------------------------------------------
# connectivity tests
# ---------------------------------------------------------------------------

def _is_complete(g: Graph, smask: int) -> bool:
    for v in iter_bits(smask):
        if (g.adj[v] & smask) != smask & ~(1 << v):
            return False
    return True


def is_k_connected(g: Graph, nodes, k: int) -> bool:
    """k-connectivity of the induced subgraph.

    Complete graphs on at most k nodes count as k-connected; otherwise
    every non-adjacent pair must need at least k removed nodes to
    separate, verified by flows from k fixed roots.
    """
    smask = mask_of(nodes)
    return _is_k_connected_mask(g, smask, k)


def _is_k_connected_mask(g: Graph, smask: int, k: int) -> bool:
    ns = smask.bit_count()
    if k <= 0:
        return True
    if ns <= k:
        return _is_complete(g, smask)
    sub_adj = [g.adj[v] & smask if (smask >> v) & 1 else 0 for v in range(g.n)]
    if not mask_connected(sub_adj, smask):
        return False
    if k == 1:
        return True
    members = sorted(iter_bits(smask))
    if min(sub_adj[v].bit_count() for v in members) < k:
        return False
    solver = NodeCutSolver(g.adj, smask)
    roots = members[:k]
    for r in roots:
        rbit = 1 << r
        excluded = sub_adj[r] | rbit
        for t in members:
            if (excluded >> t) & 1:
                continue
            if t in roots and t < r:
                continue
            flow, capped, *_ = solver.query(1 << t, rbit, 0, cap=k)
            if flow < k:
                return False
    return True


def connectivity_level(g: Graph, nodes, up_to: int) -> int:
    """Largest j <= up_to with the induced subgraph j-connected (0 if none)."""
    level = 0
    for j in range(1, up_to + 1):
        if is_k_connected(g, nodes, j):
            level = j
        else:
            break
    return level


# ---------------------------------------------------------------------------
# shortcut graph
# ---------------------------------------------------------------------------

def shortcut_graph(g: Graph, t_nodes, s_nodes) -> Graph:
    """Graph on T joining u, v when a T-path through S connects them.

    Nodes outside T are kept as isolated indices so node ids are stable.
    """
    tmask = mask_of(t_nodes)
    smask = mask_of(s_nodes)
    if tmask & smask:
        raise PreconditionViolation("T and S must be disjoint")
    adj = [g.adj[v] & tmask if (tmask >> v) & 1 else 0 for v in range(g.n)]
    sub_s = [g.adj[v] & smask for v in range(g.n)]
    for comp in mask_components(sub_s, smask):
        touched = gamma_mask(g, comp, tmask)
        for v in iter_bits(touched):
            adj[v] |= touched & ~(1 << v)
    return Graph(n=g.n, adj=tuple(adj), is_unit_disk=False)


# ---------------------------------------------------------------------------
# violated demand cuts for the augmentation loop
# ---------------------------------------------------------------------------

class DemandCutScanner:
    """Incremental search for uncovered demand cuts of T as S grows.

    Pair (root, t) verifications stay valid once established because the
    shortcut graph only gains edges; a fresh scanner per (g, T, k) keeps
    a worklist and re-checks a pair until its connectivity reaches k.
    """

    def __init__(self, g: Graph, t_nodes, k: int):
        self.g = g
        self.tmask = mask_of(t_nodes)
        self.k = k
        members = sorted(iter_bits(self.tmask))
        self.members = members
        self.roots = members[: min(k, len(members))]
        self._s_version: frozenset[int] | None = None
        self._solver: NodeCutSolver | None = None
        self._shortcut: Graph | None = None
        self._pending = [
            (r, t)
            for r in self.roots
            for t in members
            if t != r and not (t in self.roots and t < r)
        ]
        self._verified: set[tuple[int, int]] = set()

    def _sync(self, s_nodes) -> None:
        s = frozenset(s_nodes)
        if s != self._s_version:
            self._s_version = s
            self._shortcut = shortcut_graph(self.g, set_of(self.tmask), s)
            self._solver = NodeCutSolver(self._shortcut.adj, self.tmask)

    def find_uncovered(self, s_nodes) -> CutCertificate | None:
        """Lex-least globally minimal uncovered demand cut, or None."""
        self._sync(s_nodes)
        gp = self._shortcut
        k = self.k
        remaining = []
        found = None
        for idx, (r, t) in enumerate(self._pending):
            if (gp.adj[r] >> t) & 1:
                self._verified.add((r, t))
                continue
            flow, capped, min_side, cut, max_side = self._solver.query(
                1 << t, 1 << r, 0, cap=k
            )
            if flow >= k:
                self._verified.add((r, t))
                continue
            if flow != k - 1:
                raise PreconditionViolation(
                    f"base set is not {k - 1}-connected (found a {flow}-cut)"
                )
            # the reverse query yields the minimal r-side, also a demand cut
            _, _, r_side, _, _ = self._solver.query(1 << r, 1 << t, 0, cap=k)
            cand_a = self._shrink(min_side)
            cand_b = self._shrink(r_side)
            pick = min(cand_a, cand_b, key=lambda m: sorted(iter_bits(m)))
            found = make_demand_certificate(self.g, pick, self.tmask, k)
            remaining = self._pending[idx:]
            break
        if found is None:
            self._pending = []
            return None
        self._pending = remaining
        return found

    def _shrink(self, xmask: int) -> int:
        """Inclusion-minimal demand cut inside xmask.

        One probe per node of X against a single fixed node beyond X's
        closed neighborhood is complete: a strictly smaller demand cut
        inside X still separates each of its nodes from that same node,
        and the minimal flow side of the probe is contained in it.
        """
        gp = self._shortcut
        k = self.k
        improved = True
        while improved and xmask.bit_count() > 1:
            improved = False
            outside = self.tmask & ~closed_mask(gp, xmask)
            r = (outside & -outside).bit_length() - 1
            for t in sorted(iter_bits(xmask)):
                flow, capped, min_side, *_ = self._solver.query(
                    1 << t, 1 << r, 0, cap=k
                )
                if flow == k - 1 and min_side != xmask and not (min_side & ~xmask):
                    xmask = min_side
                    improved = True
                    break
        return xmask


def find_min_violated_demand_cut(g: Graph, t_nodes, s_nodes, k: int,
                                 *, check: bool = True) -> CutCertificate | None:
    """One inclusion-minimal demand cut of T uncovered by any T-path in
    G[T+S], or None when G[T+S] restricted to T-paths is k-connected."""
    if check and not is_k_connected(g, t_nodes, k - 1):
        raise PreconditionViolation("base set must be (k-1)-connected")
    scanner = DemandCutScanner(g, t_nodes, k)
    return scanner.find_uncovered(s_nodes)


# ---------------------------------------------------------------------------
# covering paths
# ---------------------------------------------------------------------------

def find_covering_path(g: Graph, t_nodes, s_nodes, cert: CutCertificate) -> list[int]:
    """Minimum-inner-length path from the cut to the far side of T.

    Inner nodes avoid T; one or two of them always suffice for feasible
    inputs, so only those lengths are searched. Ties break on the inner
    node sequence, then on the end nodes.
    """
    tmask = mask_of(t_nodes)
    xmask = mask_of(cert.x)
    far = tmask & ~closed_mask(g, xmask)
    outer = ~tmask & g.all_mask
    for v in sorted(iter_bits(outer)):
        av = g.adj[v]
        if av & xmask and av & far:
            end1 = min(iter_bits(av & xmask))
            end2 = min(iter_bits(av & far))
            return [end1, v, end2]
    best = None
    for v1 in sorted(iter_bits(outer)):
        if not g.adj[v1] & xmask:
            continue
        for v2 in sorted(iter_bits(g.adj[v1] & outer)):
            if g.adj[v2] & far:
                end1 = min(iter_bits(g.adj[v1] & xmask))
                end2 = min(iter_bits(g.adj[v2] & far))
                cand = [end1, v1, v2, end2]
                if best is None or (cand[1], cand[2]) < (best[1], best[2]):
                    best = cand
        if best is not None and best[1] == v1:
            break
    if best is None:
        raise NoPathError("no short covering path; input violates feasibility")
    return best


# ---------------------------------------------------------------------------
# minimal demand cuts for the primal-dual machinery
# ---------------------------------------------------------------------------

def min_cores(g: Graph, t_nodes, s_nodes, k: int, r: int,
              *, solver: NodeCutSolver | None = None) -> list[CutCertificate]:
    """Inclusion-minimal demand cuts avoiding root r, after buying S.

    The family lives on T+S: bought nodes are protected in the flow so a
    returned cut's boundary stays inside T, which encodes exactly the
    cuts no bought node covers. Distinct results are pairwise strongly
    disjoint and are returned in canonical order.
    """
    tmask = mask_of(t_nodes)
    smask = mask_of(s_nodes)
    if (tmask >> r) & 1 == 0:
        raise PreconditionViolation("root must lie in T")
    allowed = tmask | smask
    if solver is None:
        solver = NodeCutSolver(g.adj, allowed)
    rbit = 1 << r
    excluded = g.adj[r] | rbit
    sides: list[int] = []
    for t in sorted(iter_bits(tmask & ~excluded)):
        flow, capped, min_side, cut, _ = solver.query(1 << t, rbit, smask, cap=k)
        if flow <= k - 2:
            raise PreconditionViolation(
                f"base set is not {k - 1}-connected (found a {flow}-cut)"
            )
        if flow == k - 1:
            sides.append(min_side)
    minimal: list[int] = []
    for cand in sorted(set(sides), key=lambda m: (m.bit_count(), sorted(iter_bits(m)))):
        if not any(prev & cand == prev for prev in minimal):
            minimal.append(cand)
    certs = [
        make_demand_certificate(g, m, tmask, k, root=r)
        for m in sorted(minimal, key=lambda m: sorted(iter_bits(m)))
    ]
    # distinct minimal cuts can share closed neighborhoods, but never T-nodes
    for i, a in enumerate(certs):
        am = mask_of(a.x) & tmask
        for b in certs[i + 1:]:
            if am & mask_of(b.x):
                raise AssertionError("minimal demand cuts share a T node")
    return certs
