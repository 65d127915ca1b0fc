"""Exact brute-force baselines and instance generators."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .decompose import core_decomposition, is_connected, is_two_connected
from .errors import InternalError, PreconditionError
from .graph import CYCLE, PATH, Graph, Witness, complete_graph
from .segments import SegmentSystem, validate_system

BRUTE_THRESHOLD = 18


def _check_size(g: Graph, threshold: int) -> None:
    if g.n > threshold:
        raise PreconditionError(f"n={g.n} exceeds brute-force threshold {threshold}")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def brute_longest_path(g: Graph, threshold: int = BRUTE_THRESHOLD) -> Witness:
    """A maximum path by DP over (vertex subset, endpoint)."""
    _check_size(g, threshold)
    if g.n == 0:
        raise PreconditionError("empty graph")
    bits = g.bits
    size = 1 << g.n
    ends = [0] * size
    for v in range(g.n):
        ends[1 << v] = 1 << v
    best = 1
    for mask in range(1, size):
        e = ends[mask]
        if not e:
            continue
        best = mask if mask.bit_count() > best.bit_count() else best
        reach = 0
        for v in _bits(e):
            reach |= bits[v]
        for u in _bits(reach & ~mask):
            ends[mask | (1 << u)] |= 1 << u
    # backtrack
    mask = best
    v = (ends[mask] & -ends[mask]).bit_length() - 1
    out = [v]
    while mask & (mask - 1):
        mask ^= 1 << v
        cand = ends[mask] & bits[v]
        v = (cand & -cand).bit_length() - 1
        out.append(v)
    return Witness(PATH, tuple(out[::-1]))


def brute_longest_cycle(g: Graph, threshold: int = BRUTE_THRESHOLD) -> Witness | None:
    """A maximum cycle, or None for a forest.

    Paths are anchored at the smallest vertex of their vertex set.
    """
    _check_size(g, threshold)
    bits = g.bits
    size = 1 << g.n
    ends = [0] * size
    for v in range(g.n):
        ends[1 << v] = 1 << v
    best = 0
    for mask in range(1, size):
        e = ends[mask]
        if not e:
            continue
        low = mask & -mask
        s = low.bit_length() - 1
        if mask.bit_count() >= 3 and e & bits[s] and mask.bit_count() > best.bit_count():
            best = mask
        above = ~((low << 1) - 1)
        reach = 0
        for v in _bits(e):
            reach |= bits[v]
        for u in _bits(reach & ~mask & above):
            ends[mask | (1 << u)] |= 1 << u
    if not best:
        return None
    s = (best & -best).bit_length() - 1
    mask = best
    cand = ends[mask] & bits[s]
    v = (cand & -cand).bit_length() - 1
    out = [v]
    while mask & (mask - 1):
        mask ^= 1 << v
        cand = ends[mask] & bits[v]
        v = (cand & -cand).bit_length() - 1
        out.append(v)
    return Witness(CYCLE, tuple(out[::-1]))


# -- segment systems -----------------------------------------------------------


def _all_segments(g: Graph, T: frozenset[int], p: int, extended: bool) -> list[tuple[int, ...]]:
    """Every T-segment with at most ``p`` outside vertices, one orientation each."""
    found: set[tuple[int, ...]] = set()

    def canon(path: list[int]) -> tuple[int, ...]:
        t = tuple(path)
        return min(t, t[::-1])

    for s in sorted(T):
        stack = [[s]]
        while stack:
            path = stack.pop()
            for u in g.adj[path[-1]]:
                if u in path:
                    continue
                if u in T:
                    if len(path) >= 2:
                        found.add(canon(path + [u]))
                    continue
                ext = path + [u]
                if len(ext) - 1 > p:
                    continue
                if extended:
                    found.add(canon(ext))
                stack.append(ext)
    return sorted(found, key=lambda t: (len(t), t))


def brute_segments(
    g: Graph, T, p: int, r: int, extended: bool = False, max_outside: int = 10
) -> SegmentSystem | None:
    """Exhaustive search for an (extended) system of ``r`` segments with ``p`` outside vertices."""
    T = frozenset(T)
    if g.n - len(T) > max_outside:
        raise PreconditionError(f"{g.n - len(T)} outside vertices exceed the limit {max_outside}")
    if p < 1 or r < 1 or r > p:
        return None
    segs = _all_segments(g, T, p, extended)
    outs = [frozenset(v for v in s if v not in T) for s in segs]
    order = sorted(range(len(segs)), key=lambda i: segs[i])

    chosen: list[int] = []

    def search(start: int, used: frozenset[int]) -> SegmentSystem | None:
        if len(chosen) == r:
            if len(used) != p:
                return None
            sys = SegmentSystem(tuple(segs[i] for i in chosen), T, extended)
            return sys if validate_system(g, T, sys) else None
        for idx in range(start, len(order)):
            i = order[idx]
            if outs[i] & used or len(used) + len(outs[i]) + (r - len(chosen) - 1) > p:
                continue
            chosen.append(i)
            res = search(idx + 1, used | outs[i])
            chosen.pop()
            if res is not None:
                return res
        return None

    return search(0, frozenset())


# -- generators ----------------------------------------------------------------


@dataclass(frozen=True)
class GenSpec:
    name: str
    n: int = 0
    d: int = 0
    p_edge: float = 0.0
    eps: float = 0.5
    seed: int = 0


def _is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def _check_identity(cond: bool, what: str) -> None:
    if not cond:
        raise InternalError(f"generator postcondition failed: {what}")


def gen_hardness_path(g: Graph) -> Graph:
    """``g`` plus a disjoint ``K_{n-1}`` (vertices ``n .. 2n-2``)."""
    n = g.n
    if n < 3:
        raise PreconditionError("base graph needs at least 3 vertices")
    if _is_complete(g):
        raise PreconditionError("base graph must not be complete")
    edges = g.edges() + [(n + a, n + b) for a, b in complete_graph(n - 1).edges()]
    out = Graph.from_edges(2 * n - 1, edges)
    _check_identity(core_decomposition(out).degeneracy == n - 2, "dg(G') = n - 2")
    return out


def gen_hardness_cycle(g: Graph) -> Graph:
    """``g`` and ``K_{n-1}`` glued at vertex 0 (new clique vertices ``n .. 2n-3``)."""
    n = g.n
    if n < 3:
        raise PreconditionError("base graph needs at least 3 vertices")
    if _is_complete(g):
        raise PreconditionError("base graph must not be complete")
    if not is_connected(g):
        raise PreconditionError("base graph must be connected")
    clique = [0] + list(range(n, 2 * n - 2))
    edges = g.edges() + list(combinations(clique, 2))
    out = Graph.from_edges(2 * n - 2, edges)
    _check_identity(core_decomposition(out).degeneracy == n - 2, "dg(G') = n - 2")
    return out


def _as_fraction(eps) -> Fraction:
    if isinstance(eps, float):
        return Fraction(repr(eps))
    return Fraction(eps)


def tight_sizes(n: int, eps) -> tuple[int, int]:
    """Clique size ``2*ceil(n/eps)`` and tail length ``ceil((1+eps)(p-1) - (n+p))``."""
    e = _as_fraction(eps)
    if not 0 < e < 1:
        raise PreconditionError("eps must lie strictly between 0 and 1")
    p = 2 * math.ceil(n / e)
    q = math.ceil((1 + e) * (p - 1) - (n + p))
    return p, q


def _tight(g: Graph, eps, cycle: bool) -> Graph:
    n = g.n
    if n < 2:
        raise PreconditionError("base graph needs at least 2 vertices")
    p, q = tight_sizes(n, eps)
    u = list(range(n, n + p))
    w = list(range(n + p, n + p + q))
    edges = g.edges() + list(combinations(u, 2))
    if cycle:
        edges += [(v, u[0]) for v in range(n)] + [(v, u[1]) for v in range(n)]
        chain = [u[1]] + w + [u[2]]
    else:
        edges += [(v, u[0]) for v in range(n)]
        chain = [u[0]] + w + [u[1]]
    edges += list(zip(chain, chain[1:]))
    out = Graph.from_edges(n + p + q, edges)
    dg = core_decomposition(out).degeneracy
    e = _as_fraction(eps)
    _check_identity(q >= 1, "tail length >= 1")
    _check_identity(dg == p - 1, "dg(G') = p - 1")
    _check_identity(out.n == math.ceil((1 + e) * dg), "|V(G')| = ceil((1+eps) dg(G'))")
    return out


def gen_tight_path(g: Graph, eps) -> Graph:
    return _tight(g, eps, cycle=False)


def gen_tight_cycle(g: Graph, eps) -> Graph:
    return _tight(g, eps, cycle=True)


def gen_random_with_degeneracy(n: int, d: int, seed: int = 0) -> Graph:
    """Connected graph with degeneracy exactly ``d``.

    Starts from ``K_{d+1}`` and joins every further vertex to ``d``
    random earlier vertices; ``d <= n - 2`` is required.
    """
    if not 1 <= d <= n - 2:
        raise PreconditionError(f"need 1 <= d <= n - 2, got n={n}, d={d}")
    rng = random.Random(seed)
    for _ in range(100):
        edges = list(combinations(range(d + 1), 2))
        for v in range(d + 1, n):
            edges += [(u, v) for u in rng.sample(range(v), d)]
        g = Graph.from_edges(n, edges)
        if core_decomposition(g).degeneracy == d and is_connected(g):
            return g
    raise InternalError("could not hit the requested degeneracy")


def gen_random_connected(n: int, p_edge: float, seed: int = 0) -> Graph:
    """G(n, p) plus a random spanning tree, so always connected."""
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[i], perm[rng.randrange(i)]))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p_edge:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def gen_random_two_connected(n: int, p_edge: float, seed: int = 0) -> Graph:
    """G(n, p) plus a random Hamiltonian cycle, so always 2-connected (n >= 3)."""
    if n < 3:
        raise PreconditionError("2-connected graphs have at least 3 vertices")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[i], perm[(i + 1) % n]))) for i in range(n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p_edge:
                edges.add((u, v))
    out = Graph.from_edges(n, sorted(edges))
    assert is_two_connected(out)
    return out
