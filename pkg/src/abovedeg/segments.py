"""Systems of T-segments and their color-coding solvers.

A two-terminal T-segment is a path on at least three vertices whose two
ends lie in ``T`` and whose interior avoids ``T``; a one-terminal
segment has at least two vertices and exactly one end in ``T``.

The DP works on a vertex coloring ``c`` with ``q`` colors:

``beta[(Y, i)]``
    maps ``v`` (outside ``T``) to a predecessor, for every path that
    starts at a terminal of color ``i`` and whose remaining vertices lie
    outside ``T`` and carry the distinct colors ``Y``.
``alpha[X][(i, j)]``
    a two-terminal segment with end colors ``i``, ``j`` and color set
    ``X`` (``|X| >= 3``).
``gamma``
    chains ``P_1 .. P_i`` of segments, keyed by ``(X, l, j)`` = colors
    used, vertices outside ``T``, color of the last end. ``gamma0`` starts
    with a two-terminal segment, ``gamma1`` with a one-terminal segment
    whose terminal end is ``t_1``.

Consecutive segments either share the color of ``t_{i-1}``/``s_i`` or
use disjoint color sets; those are the two disjuncts of the recurrence.
Tables are filled forward and keep one back-pointer per true entry so a
system can be reconstructed.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .colorpath import Coloring, TrialBudget, TrialLog, default_trials, identity_coloring, random_coloring, trial_rng
from .errors import InternalError, PreconditionError
from .graph import Graph


@dataclass(frozen=True)
class SegmentSystem:
    paths: tuple[tuple[int, ...], ...]
    terminals: frozenset[int]
    extended: bool = False

    @property
    def ends(self) -> list[tuple[int, int]]:
        return [(p[0], p[-1]) for p in self.paths]

    def outside_vertices(self) -> set[int]:
        return {v for p in self.paths for v in p if v not in self.terminals}

    def to_dict(self) -> dict:
        return {
            "extended": self.extended,
            "paths": [list(p) for p in self.paths],
            "outside": len(self.outside_vertices()),
        }


# -- validation ---------------------------------------------------------------


def _is_path(g: Graph, p: Sequence[int]) -> bool:
    return (
        len(p) >= 1
        and len(set(p)) == len(p)
        and all(0 <= v < g.n for v in p)
        and all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
    )


def _is_two_terminal(p: Sequence[int], T: frozenset[int]) -> bool:
    return len(p) >= 3 and p[0] in T and p[-1] in T and not any(v in T for v in p[1:-1])


def _is_one_terminal(p: Sequence[int], T: frozenset[int]) -> bool:
    if len(p) < 2:
        return False
    inside = [v in T for v in p]
    return sum(inside) == 1 and (inside[0] or inside[-1])


def _union_components(paths: Sequence[Sequence[int]]) -> tuple[bool, dict[int, int]]:
    """Is the union of the paths a linear forest?  Also returns a component id per vertex."""
    edges = {(min(a, b), max(a, b)) for p in paths for a, b in zip(p, p[1:])}
    nbrs: dict[int, set[int]] = defaultdict(set)
    verts = {v for p in paths for v in p}
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    if any(len(nbrs[v]) > 2 for v in verts):
        return False, {}
    comp: dict[int, int] = {}
    cid = -1
    for s in sorted(verts):
        if s in comp:
            continue
        cid += 1
        comp[s] = cid
        stack = [s]
        count_v, count_e2 = 0, 0
        while stack:
            v = stack.pop()
            count_v += 1
            count_e2 += len(nbrs[v])
            for u in nbrs[v]:
                if u not in comp:
                    comp[u] = cid
                    stack.append(u)
        if count_e2 // 2 != count_v - 1:
            return False, {}
    return True, comp


def validate_system(g: Graph, T: Iterable[int], sys: SegmentSystem) -> bool:
    """Check every defining condition of a (plain or extended) system."""
    T = frozenset(T)
    paths = [tuple(p) for p in sys.paths]
    if not paths or not all(_is_path(g, p) for p in paths):
        return False
    if sys.extended:
        one = [i for i, p in enumerate(paths) if _is_one_terminal(p, T)]
        if not 1 <= len(one) <= 2:
            return False
        if any(not _is_two_terminal(p, T) for i, p in enumerate(paths) if i not in one):
            return False
    elif not all(_is_two_terminal(p, T) for p in paths):
        return False
    # internally vertex-disjoint: an interior vertex occurs in no other path
    for i, p in enumerate(paths):
        for v in p[1:-1]:
            if any(v in q for j, q in enumerate(paths) if j != i):
                return False
    if sys.extended:
        for i in one:
            p = paths[i]
            free = p[0] if p[0] not in T else p[-1]
            if any(free in q for j, q in enumerate(paths) if j != i):
                return False
    ok, comp = _union_components(paths)
    if not ok:
        return False
    if sys.extended and len(one) == 2:
        if comp[paths[one[0]][0]] == comp[paths[one[1]][0]]:
            return False
    return True


# -- DP tables ----------------------------------------------------------------


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass
class DPTables:
    """Colorful-segment tables for one coloring (colors are 0-based bits)."""

    g: Graph
    terminals: frozenset[int]
    coloring: Coloring
    beta: dict[tuple[int, int], dict[int, int]] = field(default_factory=dict)
    alpha: dict[int, dict[tuple[int, int], tuple[int, int, int]]] = field(default_factory=dict)

    def beta_true(self, Y: int, i: int, v: int) -> bool:
        return v in self.beta.get((Y, i), ())

    def alpha_true(self, X: int, i: int, j: int) -> bool:
        if _popcount(X) < 3:
            return False
        return (i, j) in self.alpha.get(X, ())

    def beta_path(self, Y: int, i: int, v: int) -> list[int]:
        """Terminal-first path realising ``beta(Y, i, v)``."""
        col = self.coloring.color
        out = [v]
        while True:
            pred = self.beta[(Y, i)][v]
            Y ^= 1 << col[v]
            out.append(pred)
            if not Y:
                return out[::-1]
            v = pred

    def alpha_path(self, X: int, i: int, j: int) -> list[int]:
        Y, v, t = self.alpha[X][(i, j)]
        return self.beta_path(Y, i, v) + [t]


def assemble_dp_tables(g: Graph, T: Iterable[int], coloring: Coloring, max_outside: int | None = None) -> DPTables:
    """Compute beta then alpha for ``coloring``.

    ``max_outside`` bounds ``|Y|`` (no segment of a size-``p`` system has
    more than ``p`` outside vertices); None means no bound.
    """
    T = frozenset(T)
    col = coloring.color
    adj = g.adj
    tables = DPTables(g, T, coloring)
    limit = g.n if max_outside is None else max_outside
    layer: dict[tuple[int, int], dict[int, int]] = {}
    for s in sorted(T):
        i = col[s]
        for v in adj[s]:
            if v in T or col[v] == i:
                continue
            layer.setdefault((1 << col[v], i), {}).setdefault(v, s)
    size = 1
    while layer:
        tables.beta.update(layer)
        if size >= limit:
            break
        nxt: dict[tuple[int, int], dict[int, int]] = {}
        for (Y, i), ends in layer.items():
            for w in ends:
                for v in adj[w]:
                    c = col[v]
                    if v in T or c == i or (Y >> c) & 1:
                        continue
                    nxt.setdefault((Y | (1 << c), i), {}).setdefault(v, w)
        layer = nxt
        size += 1
    for (Y, i), ends in tables.beta.items():
        for v in ends:
            for t in adj[v]:
                if t not in T:
                    continue
                j = col[t]
                if j == i or (Y >> j) & 1:
                    continue
                X = Y | (1 << i) | (1 << j)
                tables.alpha.setdefault(X, {}).setdefault((i, j), (Y, v, t))
    return tables


# gamma entries: key (X, l, j) -> back pointer
#   ("alpha", X, h, j)              first segment two-terminal
#   ("beta", Y, j, v)               first segment one-terminal, t_1 colored j
#   ("shared"|"distinct", prev_key, Y, h, j)


def _gamma_layers(tables: DPTables, first: dict, p: int, levels: int) -> list[dict]:
    alpha_items = [(Y, _popcount(Y), pairs) for Y, pairs in tables.alpha.items()]
    layers = [first]
    for depth in range(2, levels + 1):
        remaining = levels - depth  # segments still to come after this one
        nxt: dict = {}
        for key in layers[-1]:
            Xp, lp, hp = key
            hbit = 1 << hp
            for Y, size, pairs in alpha_items:
                l = lp + size - 2
                if l + remaining > p:
                    continue
                overlap = Y & Xp
                if overlap == 0:
                    for (h, j) in pairs:
                        nxt.setdefault((Xp | Y, l, j), ("distinct", key, Y, h, j))
                elif overlap == hbit:
                    for (h, j) in pairs:
                        if h == hp:
                            nxt.setdefault((Xp | Y, l, j), ("shared", key, Y, h, j))
        layers.append(nxt)
        if not nxt:
            break
    return layers


def _gamma0_first(tables: DPTables, p: int, levels: int) -> dict:
    first = {}
    for X, pairs in tables.alpha.items():
        l = _popcount(X) - 2
        if l + levels - 1 > p:
            continue
        for (h, j) in pairs:
            first.setdefault((X, l, j), ("alpha", X, h, j))
    return first


def _gamma1_first(tables: DPTables, p: int, levels: int) -> dict:
    first = {}
    for (Y, j), ends in tables.beta.items():
        l = _popcount(Y)
        if l + levels - 1 > p:
            continue
        for v in ends:
            first.setdefault((Y | (1 << j), l, j), ("beta", Y, j, v))
    return first


def _unwind(tables: DPTables, layers: list[dict], key) -> list[list[int]]:
    """Segments P_1..P_i (oriented s -> t) for a gamma entry at depth i."""
    out: list[list[int]] = []
    depth = len(layers)
    while True:
        back = layers[depth - 1][key]
        kind = back[0]
        if kind == "alpha":
            _, X, h, j = back
            out.append(tables.alpha_path(X, h, j))
            break
        if kind == "beta":
            _, Y, j, v = back
            out.append(tables.beta_path(Y, j, v)[::-1])
            break
        _, prev, Y, h, j = back
        out.append(tables.alpha_path(Y, h, j))
        key = prev
        depth -= 1
    return out[::-1]


def _colorful_plain(tables: DPTables, p: int, r: int) -> list[list[int]] | None:
    layers = _gamma_layers(tables, _gamma0_first(tables, p, r), p, r)
    if len(layers) < r:
        return None
    for key in layers[r - 1]:
        if key[1] == p:
            return _unwind(tables, layers[:r], key)
    return None


def _colorful_extended(tables: DPTables, p: int, r: int) -> list[list[int]] | None:
    layers = _gamma_layers(tables, _gamma1_first(tables, p, r), p, r)
    if len(layers) >= r:
        for key in layers[r - 1]:
            if key[1] == p:
                return _unwind(tables, layers[:r], key)
    if r < 2:
        return None
    # two one-terminal segments: two colour-disjoint partial chains
    layers = _gamma_layers(tables, _gamma1_first(tables, p, r - 1), p, r - 1)
    for m1 in range(1, r):
        m2 = r - m1
        if len(layers) < max(m1, m2):
            continue
        by_l: dict[int, list] = defaultdict(list)
        for key in layers[m2 - 1]:
            by_l[key[1]].append(key)
        for key in layers[m1 - 1]:
            X, l, _ = key
            for key2 in by_l.get(p - l, ()):
                if X & key2[0] == 0:
                    head = _unwind(tables, layers[:m1], key)
                    tail = _unwind(tables, layers[:m2], key2)
                    return head + [seg[::-1] for seg in reversed(tail)]
    return None


def _check_instance(g: Graph, T: frozenset[int], p: int, r: int) -> None:
    if p < 1 or r < 1:
        raise PreconditionError("p and r must be positive")
    if not T or len(T) >= g.n:
        raise PreconditionError("terminal set must be a non-empty proper subset of V(G)")
    if any(not 0 <= v < g.n for v in T):
        raise PreconditionError("terminal outside the vertex range")


def _finish(g: Graph, T: frozenset[int], paths: list[list[int]], extended: bool, p: int) -> SegmentSystem:
    sys = SegmentSystem(tuple(tuple(x) for x in paths), T, extended)
    if not validate_system(g, T, sys) or len(sys.outside_vertices()) != p:
        raise InternalError(f"segment DP produced an invalid system {sys}")
    return sys


def segments_trials(p: int) -> int:
    return default_trials(3 * p)


def solve_segments(
    g: Graph, T: Iterable[int], p: int, r: int, budget: TrialBudget = TrialBudget(), log: TrialLog | None = None
) -> SegmentSystem | None:
    """A system of ``r`` T-segments with exactly ``p`` interior vertices, or None."""
    T = frozenset(T)
    _check_instance(g, T, p, r)
    used = 0
    found = None
    if r <= p:
        q = p + 2 * r
        for t in range(budget.resolve(segments_trials(p))):
            used += 1
            col = identity_coloring(g.n) if budget.exhaustive else random_coloring(g.n, q, budget.seed, t)
            tables = assemble_dp_tables(g, T, col, max_outside=p - r + 1)
            paths = _colorful_plain(tables, p, r)
            if paths is not None:
                found = _finish(g, T, paths, False, p)
                break
    if log is not None:
        log.record("segments", used, found is not None, p=p, r=r)
    return found


def solve_extended_segments(
    g: Graph, T: Iterable[int], p: int, r: int, budget: TrialBudget = TrialBudget(), log: TrialLog | None = None
) -> SegmentSystem | None:
    """An extended system of ``r`` T-segments with ``p`` outside vertices, or None.

    Each trial draws one coloring per guess ``q`` of the number of
    distinct vertices, ``q`` in ``p + r .. p + 2r - 1``.
    """
    T = frozenset(T)
    _check_instance(g, T, p, r)
    used = 0
    found = None
    if r <= p:
        for t in range(budget.resolve(segments_trials(p))):
            used += 1
            if budget.exhaustive:
                cols = [identity_coloring(g.n)]
            else:
                rng = trial_rng(budget.seed, t)
                cols = [random_coloring(g.n, q, budget.seed, t, rng) for q in range(p + r, p + 2 * r)]
            for col in cols:
                tables = assemble_dp_tables(g, T, col, max_outside=p - r + 1)
                paths = _colorful_extended(tables, p, r)
                if paths is not None:
                    found = _finish(g, T, paths, True, p)
                    break
            if found is not None:
                break
    if log is not None:
        log.record("extended_segments", used, found is not None, p=p, r=r)
    return found


def miss_probability(p: int, trials: int, exhaustive: bool = False) -> float:
    if exhaustive:
        return 0.0
    return (1.0 - math.exp(-3 * p)) ** trials
