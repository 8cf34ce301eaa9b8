"""Graph representation and neighborhood set algebra.

Node sets travel through the public API as frozensets of indices; the
hot paths work on integer bitmasks (bit v set <=> node v in the set).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .instances import UnitDiskInstance


def mask_of(nodes) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def set_of(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph over nodes 0..n-1 (no self-loops)."""

    n: int
    adj: tuple[int, ...]  # adj[v] = bitmask of neighbors of v
    is_unit_disk: bool = False
    _adj_sets: tuple[frozenset[int], ...] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for v in range(self.n):
            if self.adj[v] >> self.n:
                raise ValueError("neighbor index out of range")
            if self.adj[v] & (1 << v):
                raise ValueError("self-loop")
        for v in range(self.n):
            for u in iter_bits(self.adj[v]):
                if not self.adj[u] & (1 << v):
                    raise ValueError("adjacency not symmetric")
        object.__setattr__(
            self, "_adj_sets", tuple(set_of(m) for m in self.adj)
        )

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj_sets[v]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def edges(self):
        for v in range(self.n):
            for u in iter_bits(self.adj[v] >> (v + 1) << (v + 1)):
                yield (v, u)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))


def from_edges(n: int, edges, *, is_unit_disk: bool = False) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError("self-loop")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n=n, adj=tuple(adj), is_unit_disk=is_unit_disk)


def build_unit_disk(inst: UnitDiskInstance) -> Graph:
    """Edge between two points iff their distance is at most the radius.

    Squared integer comparison on the micro grid: ties at exactly the
    radius are edges and never flip under re-derivation.
    """
    n = inst.n
    r2 = inst.radius * inst.radius
    pts = inst.coords
    adj = [0] * n
    # coarse grid bucketing keeps construction near-linear for large n
    cell = max(inst.radius, 1)
    buckets: dict[tuple[int, int], list[int]] = {}
    for i, (x, y) in enumerate(pts):
        buckets.setdefault((x // cell, y // cell), []).append(i)
    for (cx, cy), members in buckets.items():
        neigh_cells = [
            buckets.get((cx + dx, cy + dy))
            for dx in (-1, 0, 1)
            for dy in (-1, 0, 1)
        ]
        for i in members:
            xi, yi = pts[i]
            for cellmates in neigh_cells:
                if not cellmates:
                    continue
                for j in cellmates:
                    if j <= i:
                        continue
                    dx = xi - pts[j][0]
                    dy = yi - pts[j][1]
                    if dx * dx + dy * dy <= r2:
                        adj[i] |= 1 << j
                        adj[j] |= 1 << i
    return Graph(n=n, adj=tuple(adj), is_unit_disk=True)


# ---------------------------------------------------------------------------
# neighborhood algebra
# ---------------------------------------------------------------------------

def gamma_mask(g: Graph, xmask: int, tmask: int | None = None) -> int:
    """Open neighborhood of the node set, optionally intersected with T."""
    out = 0
    for v in iter_bits(xmask):
        out |= g.adj[v]
    out &= ~xmask
    if tmask is not None:
        out &= tmask
    return out


def closed_mask(g: Graph, xmask: int) -> int:
    """X together with its open neighborhood."""
    return xmask | gamma_mask(g, xmask)


def gamma(g: Graph, x, t=None) -> frozenset[int]:
    tmask = None if t is None else mask_of(t)
    return set_of(gamma_mask(g, mask_of(x), tmask))


def mask_components(adj: tuple[int, ...] | list[int], mask: int) -> list[int]:
    """Connected components (as masks) of the subgraph induced by mask."""
    comps = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def mask_connected(adj, mask: int) -> bool:
    if mask == 0:
        return True
    seed = mask & -mask
    comp = seed
    frontier = seed
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= mask & ~comp
        comp |= nxt
        frontier = nxt
    return comp == mask


# ---------------------------------------------------------------------------
# block-cut decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockCutTree:
    """2-connected components (blocks), cut nodes, and their incidence."""

    blocks: tuple[frozenset[int], ...]
    cut_nodes: frozenset[int]
    tree_edges: tuple[tuple[int, int], ...]  # (block index, cut node)

    def block_count(self) -> int:
        return len(self.blocks)


def block_cut_tree(g: Graph, within: int | None = None) -> BlockCutTree:
    """Biconnected decomposition of g (optionally of an induced subgraph).

    Iterative lowpoint computation; every edge lands in exactly one block,
    isolated nodes land in none.
    """
    allowed = g.all_mask if within is None else within
    disc = {}
    low = {}
    parent = {}
    blocks: list[frozenset[int]] = []
    cut_nodes: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    timer = 0

    for root in iter_bits(allowed):
        if root in disc:
            continue
        root_children = 0
        stack = [(root, iter(list(iter_bits(g.adj[root] & allowed))))]
        disc[root] = low[root] = timer
        timer += 1
        parent[root] = None
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if u not in disc:
                    parent[u] = v
                    edge_stack.append((v, u))
                    disc[u] = low[u] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((u, iter(list(iter_bits(g.adj[u] & allowed)))))
                    advanced = True
                    break
                elif u != parent[v] and disc[u] < disc[v]:
                    edge_stack.append((v, u))
                    if disc[u] < low[v]:
                        low[v] = disc[u]
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if (p != root and low[v] >= disc[p]) or (p == root):
                    # pop one block ending with edge (p, v)
                    members: set[int] = set()
                    while edge_stack:
                        a, b = edge_stack.pop()
                        members.add(a)
                        members.add(b)
                        if (a, b) == (p, v):
                            break
                    if members:
                        if p != root and low[v] >= disc[p]:
                            cut_nodes.add(p)
                        blocks.append(frozenset(members))
        if root_children >= 2:
            cut_nodes.add(root)

    order = sorted(range(len(blocks)), key=lambda i: sorted(blocks[i]))
    blocks_sorted = tuple(blocks[i] for i in order)
    tree_edges = tuple(
        (bi, c)
        for bi, blk in enumerate(blocks_sorted)
        for c in sorted(blk & cut_nodes)
    )
    return BlockCutTree(
        blocks=blocks_sorted,
        cut_nodes=frozenset(cut_nodes),
        tree_edges=tree_edges,
    )


# ---------------------------------------------------------------------------
# unit-disk sanity
# ---------------------------------------------------------------------------

def _has_independent(g: Graph, cand_mask: int, need: int) -> bool:
    if need == 0:
        return True
    if cand_mask.bit_count() < need:
        return False
    v = (cand_mask & -cand_mask).bit_length() - 1
    rest = cand_mask & ~(1 << v)
    if _has_independent(g, rest & ~g.adj[v], need - 1):
        return True
    return _has_independent(g, rest, need)


def verify_kissing(g: Graph) -> bool:
    """True iff no node has six pairwise non-adjacent neighbors.

    Holds for every graph realizable as a unit disk graph; used as a
    generator sanity check.
    """
    for v in range(g.n):
        if g.degree(v) < 6:
            continue
        if _has_independent(g, g.adj[v], 6):
            return False
    return True
