"""Minimum vertex cuts via unit-capacity node-split maximum flow.

Each node v splits into an entry state and an exit state joined by a
capacity-1 arc (unbounded for protected nodes); graph edges become
unbounded arcs between exit and entry states, so a maximum flow counts
internally node-disjoint paths and the final residual reachability
yields the extreme minimum separators on both sides.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfiniteCut
from .graph import Graph, iter_bits, mask_of, set_of


@dataclass(frozen=True)
class MinCutResult:
    size: int
    reached_cap: bool
    cut: frozenset[int]
    min_side: frozenset[int]
    max_side: frozenset[int]
    cut_mask: int = 0
    min_side_mask: int = 0
    max_side_mask: int = 0


class NodeCutSolver:
    """Reusable flow solver over a fixed (sub)graph.

    Adjacency is restricted to `allowed` once at construction; every
    query starts from zero flow.
    """

    def __init__(self, adj, allowed: int):
        self.allowed = allowed
        self.adj = [adj[v] & allowed if (allowed >> v) & 1 else 0 for v in range(len(adj))]

    # -- residual state (per query) ------------------------------------
    def _reset(self):
        self._sat = 0            # unprotected nodes whose node arc is saturated
        self._pflow = {}         # protected node -> units through its node arc
        self._pmask = 0
        self._eflow = {}         # (u, v) -> units on exit(u) -> entry(v)
        self._rev_by_head = {}   # v -> mask of u with eflow[(u, v)] > 0
        self._rev_by_tail = {}   # u -> mask of v with eflow[(u, v)] > 0
        self._head_mask = 0
        self._tail_mask = 0

    def _edge_flow_add(self, u: int, v: int, delta: int):
        key = (u, v)
        val = self._eflow.get(key, 0) + delta
        if val:
            self._eflow[key] = val
            self._rev_by_head[v] = self._rev_by_head.get(v, 0) | (1 << u)
            self._rev_by_tail[u] = self._rev_by_tail.get(u, 0) | (1 << v)
            self._head_mask |= 1 << v
            self._tail_mask |= 1 << u
        else:
            del self._eflow[key]
            m = self._rev_by_head[v] & ~(1 << u)
            self._rev_by_head[v] = m
            if not m:
                self._head_mask &= ~(1 << v)
            m = self._rev_by_tail[u] & ~(1 << v)
            self._rev_by_tail[u] = m
            if not m:
                self._tail_mask &= ~(1 << u)

    def _node_flow_add(self, v: int, prot: int, delta: int):
        bit = 1 << v
        if prot & bit:
            val = self._pflow.get(v, 0) + delta
            if val:
                self._pflow[v] = val
                self._pmask |= bit
            else:
                del self._pflow[v]
                self._pmask &= ~bit
        else:
            self._sat = (self._sat | bit) if delta > 0 else (self._sat & ~bit)

    # -- search ---------------------------------------------------------
    def _bfs(self, src: int, snk: int, prot: int):
        """One residual BFS. Returns (sink_node, pin, pout) or (None, vin, vout)."""
        adj = self.adj
        vin = src
        vout = 0
        pin = {}
        pout = {}
        frontier_in = src
        while frontier_in:
            # entry -> exit: node arcs (open) and reverse edge arcs
            open_nodes = (frontier_in & prot) | (frontier_in & ~prot & ~self._sat)
            new_out = open_nodes & ~vout
            for v in iter_bits(new_out):
                pout[v] = -1  # forward node arc
            rev_cand = frontier_in & self._head_mask
            for v in iter_bits(rev_cand):
                for u in iter_bits(self._rev_by_head[v] & ~vout & ~new_out):
                    pout[u] = v  # reverse of edge arc exit(u) -> entry(v)
                    new_out |= 1 << u
            vout |= new_out
            if not new_out:
                return None, vin, vout
            # exit -> entry: forward edge arcs and reverse node arcs
            union = 0
            for u in iter_bits(new_out):
                union |= adj[u]
            new_in = union & ~vin
            for v in iter_bits(new_in):
                u = (adj[v] & new_out)
                pin[v] = (u & -u).bit_length() - 1  # lowest-index exit parent
            back = new_out & (self._sat | self._pmask) & ~vin & ~new_in
            for v in iter_bits(back):
                pin[v] = -1  # reverse node arc from own exit state
                new_in |= 1 << v
            vin |= new_in
            hit = new_in & snk
            if hit:
                return (hit & -hit).bit_length() - 1, pin, pout
            frontier_in = new_in
        return None, vin, vout

    def _augment(self, t: int, pin, pout, src: int, prot: int):
        v = t
        at_entry = True
        while True:
            if at_entry:
                if (src >> v) & 1 and v not in pin:
                    return
                p = pin[v]
                if p == -1:
                    self._node_flow_add(v, prot, -1)
                    at_entry = False  # continue from exit(v)
                else:
                    self._edge_flow_add(p, v, +1)
                    v = p
                    at_entry = False
            else:
                p = pout[v]
                if p == -1:
                    self._node_flow_add(v, prot, +1)
                    at_entry = True  # continue from entry(v)
                else:
                    self._edge_flow_add(v, p, -1)
                    v = p
                    at_entry = True

    def _reverse_reach(self, snk: int, prot: int):
        """States that can reach a sink entry state in the residual graph."""
        adj = self.adj
        rvin = snk
        rvout = 0
        frontier_in = snk
        while frontier_in:
            # predecessors of entry states: adjacent exit states (forward
            # edge arcs always live) and own exit state when carrying flow
            union = 0
            for v in iter_bits(frontier_in):
                union |= adj[v]
            new_out = (union | (frontier_in & (self._sat | self._pmask))) & ~rvout
            rvout |= new_out
            if not new_out:
                break
            # predecessors of exit states: own entry state when the node
            # arc is open, plus entry states holding reverse edge flow
            open_nodes = (new_out & prot) | (new_out & ~prot & ~self._sat)
            new_in = open_nodes
            for v in iter_bits(new_out & self._tail_mask):
                new_in |= self._rev_by_tail[v]
            new_in &= ~rvin
            rvin |= new_in
            frontier_in = new_in
        return rvin, rvout

    def _protected_path_exists(self, src: int, snk: int, prot: int) -> bool:
        """True iff sources reach sinks using only protected inner nodes."""
        inner = (prot | src) & self.allowed
        reach = src
        frontier = src
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            if nxt & snk:
                return True
            nxt &= inner & ~reach
            reach |= nxt
            frontier = nxt
        return False

    def query(self, src: int, snk: int, prot: int = 0, cap: int | None = None):
        """Max number of internally node-disjoint src-snk paths, capped.

        Returns (flow, reached_cap, min_side_mask, cut_mask, max_side_mask);
        side masks are None when the cap was reached.
        """
        if src & snk:
            raise ValueError("sources and sinks must be disjoint")
        prot = (prot | src | snk) & self.allowed
        if self._protected_path_exists(src, snk, prot):
            if cap is None:
                raise InfiniteCut("sources reach sinks through protected nodes")
            return cap, True, None, None, None
        self._reset()
        flow = 0
        while cap is None or flow < cap:
            t, a, b = self._bfs(src, snk, prot)
            if t is None:
                vin, vout = a, b
                min_side = vout
                cut = vin & ~vout
                rvin, rvout = self._reverse_reach(snk, prot)
                max_side = self.allowed & ~rvout & ~snk
                cut2 = rvout & ~rvin & ~snk
                if cut.bit_count() != flow or cut2.bit_count() != flow:
                    raise AssertionError("residual cut size mismatch")
                if min_side & ~max_side:
                    raise AssertionError("extreme cut sides not nested")
                return flow, False, min_side, cut, max_side
            self._augment(t, a, b, src, prot)
            flow += 1
        return flow, True, None, None, None


def min_vertex_cut(
    g: Graph,
    sources,
    sinks,
    protected=(),
    *,
    allowed=None,
    cap: int | None = None,
) -> MinCutResult:
    """Minimum set of removable nodes separating sources from sinks.

    Direct source-sink edges are disregarded: the separator only has to
    intercept routes with at least one inner node. min_side / max_side
    are the inclusion-minimal and inclusion-maximal source sides over
    all minimum cuts; protected nodes never appear in the cut. Raises
    InfiniteCut when a path through protected inner nodes makes
    separation impossible and no cap was given.
    """
    src = mask_of(sources)
    snk = mask_of(sinks)
    prot = mask_of(protected)
    allowed_mask = g.all_mask if allowed is None else mask_of(allowed)
    adj = list(g.adj)
    for v in iter_bits(src):
        adj[v] &= ~snk
    for v in iter_bits(snk):
        adj[v] &= ~src
    solver = NodeCutSolver(adj, allowed_mask)
    flow, capped, min_side, cut, max_side = solver.query(src, snk, prot, cap)
    if capped:
        return MinCutResult(
            size=flow, reached_cap=True, cut=frozenset(),
            min_side=frozenset(), max_side=frozenset(),
        )
    return MinCutResult(
        size=flow,
        reached_cap=False,
        cut=set_of(cut),
        min_side=set_of(min_side),
        max_side=set_of(max_side),
        cut_mask=cut,
        min_side_mask=min_side,
        max_side_mask=max_side,
    )
