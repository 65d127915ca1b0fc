"""Degeneracy, d-cores, connectivity and the block-cut tree."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import PreconditionError
from .graph import Graph


@dataclass(frozen=True)
class CoreDecomposition:
    core: tuple[int, ...]
    order: tuple[int, ...]
    degeneracy: int


def core_decomposition(g: Graph) -> CoreDecomposition:
    """Core numbers by bucket peeling (Batagelj-Zaversnik), O(n + m).

    Vertices of equal current degree are removed in bucket order; the
    initial buckets are filled by increasing vertex id.
    """
    n = g.n
    adj = g.adj
    deg = [len(a) for a in adj]
    maxdeg = max(deg, default=0)
    bins = [0] * (maxdeg + 2)
    for d in deg:
        bins[d] += 1
    start = 0
    for d in range(maxdeg + 1):
        bins[d], start = start, start + bins[d]
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(maxdeg, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for u in adj[v]:
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bins[du] = pw + 1
                deg[u] = du - 1
    return CoreDecomposition(tuple(deg), tuple(vert), max(deg, default=0))


def degeneracy(g: Graph) -> int:
    return core_decomposition(g).degeneracy


def components(g: Graph, allowed: set[int] | None = None) -> list[list[int]]:
    """Connected components (sorted vertex lists) of ``g`` or ``g[allowed]``."""
    verts = range(g.n) if allowed is None else sorted(allowed)
    seen: set[int] = set()
    out = []
    for s in verts:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u not in seen and (allowed is None or u in allowed):
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        out.append(sorted(comp))
    return out


def d_core(g: Graph, d: int, cores: CoreDecomposition | None = None) -> frozenset[int] | None:
    """A d-core of ``g`` as a vertex set, or None when dg(g) < d.

    Components of the peeling residue are exactly the d-cores; the
    largest is returned, ties going to the one with the smallest vertex.
    """
    if cores is None:
        cores = core_decomposition(g)
    residue = {v for v in range(g.n) if cores.core[v] >= d}
    if not residue:
        return None
    comps = components(g, residue)
    best = min(comps, key=lambda c: (-len(c), c[0]))
    return frozenset(best)


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(components(g)) == 1


@dataclass(frozen=True)
class BlockTree:
    """Blocks and cut vertices of a connected graph.

    ``blocks`` are sorted by their sorted member tuples; ``root`` indexes
    the block holding the lowest vertex id.
    """

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    root: int = 0
    blocks_of: dict[int, tuple[int, ...]] = field(default_factory=dict, compare=False)

    def tree_edges(self) -> list[tuple[int, int]]:
        """Incidences (block index, cut vertex)."""
        return [(b, c) for c in sorted(self.cut_vertices) for b in self.blocks_of[c]]


def blocks_and_cuts(g: Graph) -> BlockTree:
    """Biconnected components via one iterative DFS with low-points."""
    if g.n == 0 or not is_connected(g):
        raise PreconditionError("graph is not connected")
    if g.n == 1:
        return BlockTree((frozenset({0}),), frozenset(), 0, {})
    adj = g.adj
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    timer = 0
    root = 0
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for u in it:
            if disc[u] == -1:
                edge_stack.append((v, u))
                disc[u] = low[u] = timer
                timer += 1
                if v == root:
                    root_children += 1
                stack.append((u, v, iter(adj[u])))
                advanced = True
                break
            if u != parent and disc[u] < disc[v]:
                edge_stack.append((v, u))
                low[v] = min(low[v], disc[u])
        if advanced:
            continue
        stack.pop()
        if parent == -1:
            continue
        low[parent] = min(low[parent], low[v])
        if low[v] >= disc[parent]:
            if parent != root:
                cuts.add(parent)
            comp: set[int] = set()
            while True:
                a, b = edge_stack.pop()
                comp.add(a)
                comp.add(b)
                if (a, b) == (parent, v):
                    break
            blocks.append(frozenset(comp))
    if root_children > 1:
        cuts.add(root)
    blocks.sort(key=lambda b: tuple(sorted(b)))
    blocks_of = {c: tuple(i for i, b in enumerate(blocks) if c in b) for c in cuts}
    return BlockTree(tuple(blocks), frozenset(cuts), 0, blocks_of)


def is_two_connected(g: Graph) -> bool:
    """At least three vertices, connected, and no cut vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    bt = blocks_and_cuts(g)
    return len(bt.blocks) == 1 and not bt.cut_vertices


def block_tree_distance(bt: BlockTree, c: int) -> int:
    """Number of block-tree edges between the root block and cut vertex ``c``."""
    if c not in bt.cut_vertices:
        raise PreconditionError(f"vertex {c} is not a cut vertex")
    # nodes: ('B', i) for blocks, ('C', v) for cut vertices
    start = ("B", bt.root)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == ("C", c):
            return dist[node]
        kind, x = node
        if kind == "B":
            nxt = [("C", v) for v in bt.blocks[x] if v in bt.cut_vertices]
        else:
            nxt = [("B", i) for i in bt.blocks_of[x]]
        for y in nxt:
            if y not in dist:
                dist[y] = dist[node] + 1
                queue.append(y)
    raise PreconditionError(f"cut vertex {c} unreachable from the root block")
