"""Disjoint terminal paths covering every vertex of a dense graph.

If ``delta(H) >= max(5k - 3, n - k)`` then any admissible list of at
most ``k`` terminal pairs can be linked by vertex-disjoint paths that
together cover ``V(H)``. The construction first links every pair with a
path on at most three vertices, then repeatedly replaces a path edge
``uv`` by ``u w v`` for an uncovered ``w`` adjacent to both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InternalError, PreconditionError
from .graph import PATH, Graph, Witness


@dataclass(frozen=True)
class TerminalPairs:
    """Ordered pairs ``(s_i, t_i)``; ``s_i == t_i`` asks for a one-vertex path.

    Pairs must use pairwise distinct vertices across pairs. This is
    stricter than only requiring ``s_i`` to avoid the other pairs, and is
    what every caller in this package produces.
    """

    pairs: tuple[tuple[int, int], ...]
    k: int

    def check(self, n: int) -> None:
        if self.k < 1:
            raise PreconditionError("k must be positive")
        if not self.pairs:
            raise PreconditionError("no terminal pairs")
        if len(self.pairs) > self.k:
            raise PreconditionError(f"r={len(self.pairs)} pairs exceeds k={self.k}")
        owner: dict[int, int] = {}
        for i, (s, t) in enumerate(self.pairs):
            for v in {s, t}:
                if not 0 <= v < n:
                    raise PreconditionError(f"terminal {v} is not a vertex")
                if v in owner:
                    raise PreconditionError(f"vertex {v} used by pairs {owner[v]} and {i}")
                owner[v] = i
        if all(s == t for s, t in self.pairs):
            raise PreconditionError("at least one pair must have s != t")


def check_degree_condition(h: Graph, k: int) -> None:
    need = max(5 * k - 3, h.n - k)
    delta = h.min_degree()
    if delta < need:
        raise PreconditionError(
            f"minimum degree {delta} < max(5k-3, n-k) = max({5 * k - 3}, {h.n - k})"
        )


def _common_neighbor(h: Graph, a: int, b: int, pool: Sequence[int]) -> int | None:
    na, nb = h.nbrset[a], h.nbrset[b]
    for w in pool:
        if w in na and w in nb:
            return w
    return None


def cover_paths(h: Graph, tp: TerminalPairs) -> list[Witness]:
    """Vertex-disjoint ``(s_i, t_i)``-paths whose union is ``V(h)``."""
    tp.check(h.n)
    check_degree_condition(h, tp.k)
    k = tp.k
    terminals = {v for st in tp.pairs for v in st}
    spare = [v for v in range(h.n) if v not in terminals]
    used: set[int] = set(terminals)

    paths: list[list[int]] = []
    for s, t in tp.pairs:
        if s == t:
            paths.append([s])
        elif h.has_edge(s, t):
            paths.append([s, t])
        else:
            w = _common_neighbor(h, s, t, [v for v in spare if v not in used])
            if w is None:
                raise InternalError(f"no common neighbour for pair ({s}, {t})")
            used.add(w)
            paths.append([s, w, t])

    while len(used) < h.n:
        uncovered = [v for v in range(h.n) if v not in used]
        if len(used) <= 3 * k - 1:
            edges = [(pi, e) for pi, p in enumerate(paths) for e in range(len(p) - 1)]
        else:
            # every other edge along each path: a matching of size >= k
            edges = [(pi, e) for pi, p in enumerate(paths) for e in range(0, len(p) - 1, 2)][:k]
        placed = False
        for w in uncovered:
            nw = h.nbrset[w]
            for pi, e in edges:
                p = paths[pi]
                if p[e] in nw and p[e + 1] in nw:
                    p.insert(e + 1, w)
                    used.add(w)
                    placed = True
                    break
            if placed:
                break
        if not placed:
            raise InternalError("no augmenting vertex found although the degree condition holds")

    return [Witness(PATH, tuple(p)) for p in paths]
