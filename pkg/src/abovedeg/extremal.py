"""Constructive long paths and cycles from minimum-degree bounds.

``erdos_gallai_path`` returns a path on at least ``min(2*delta + 1, n)``
vertices of a connected graph and ``dirac_cycle`` a cycle on at least
``min(2*delta, n)`` vertices of a 2-connected graph.
"""

from __future__ import annotations

from .decompose import is_two_connected
from .errors import InternalError, PreconditionError
from .graph import CYCLE, PATH, Graph, Witness, verify_witness


def _extend(g: Graph, path: list[int], on: set[int]) -> None:
    """Grow both ends greedily until every end neighbour lies on the path."""
    for _ in range(2):
        while True:
            end = path[-1]
            nxt = next((u for u in g.adj[end] if u not in on), None)
            if nxt is None:
                break
            path.append(nxt)
            on.add(nxt)
        path.reverse()


def _crossing_cycle(g: Graph, path: list[int]) -> list[int] | None:
    """Cycle through all of ``path`` if its ends close it or cross."""
    u, v = path[0], path[-1]
    if len(path) >= 3 and g.has_edge(u, v):
        return list(path)
    nu, nv = g.nbrset[u], g.nbrset[v]
    for i in range(len(path) - 1):
        if path[i + 1] in nu and path[i] in nv:
            if len(path) < 3:
                return None
            return path[: i + 1] + path[i + 1 :][::-1]
    return None


def _open_at_outside_neighbor(g: Graph, cycle: list[int], on: set[int]) -> list[int] | None:
    for j, y in enumerate(cycle):
        for x in g.adj[y]:
            if x not in on:
                return [x] + cycle[j:] + cycle[:j]
    return None


def erdos_gallai_path(g: Graph) -> Witness:
    """Path with at least ``min(2*delta(g) + 1, n)`` vertices (g connected).

    Extend a path while an end has an off-path neighbour. When both ends
    are saturated and the path is still short, the ends' neighbourhoods
    must cross, closing the path into a cycle; an off-cycle neighbour
    then opens it into a longer path.
    """
    if g.n == 0:
        raise PreconditionError("empty graph")
    goal = min(2 * g.min_degree() + 1, g.n)
    path = [0]
    on = {0}
    while True:
        _extend(g, path, on)
        if len(path) >= goal:
            return Witness(PATH, tuple(path))
        cyc = _crossing_cycle(g, path)
        if cyc is None:
            raise InternalError("saturated short path without a crossing pair")
        longer = _open_at_outside_neighbor(g, cyc, on)
        if longer is None:
            raise PreconditionError("graph is not connected")
        path = longer
        on.add(path[0])


# -- cycles -------------------------------------------------------------------


def _outside_components(g: Graph, on: set[int]) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for s in range(g.n):
        if s in on or s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u not in on and u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def _long_ear(g: Graph, a: int, b: int, region: set[int], want: int, budget: int) -> list[int] | None:
    """An ``a``-``b`` path with more than ``want`` interior vertices, all in ``region``."""
    best: list[int] | None = None
    steps = 0
    stack = [(a, [a], {a})]
    while stack:
        v, path, seen = stack.pop()
        steps += 1
        if steps > budget:
            break
        for u in g.adj[v]:
            if u == b and len(path) - 1 > want and v != a:
                return path + [b]
            if u in region and u not in seen:
                stack.append((u, path + [u], seen | {u}))
    return best


def _improve_by_ear(g: Graph, cycle: list[int], budget: int) -> list[int] | None:
    on = set(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    L = len(cycle)
    for comp in _outside_components(g, on):
        attach = sorted({u for v in comp for u in g.adj[v] if u in on}, key=pos.get)
        for x in range(len(attach)):
            for y in range(x + 1, len(attach)):
                a, b = attach[x], attach[y]
                ia, ib = pos[a], pos[b]
                inner = ib - ia - 1  # interior of the arc a -> b going forward
                outer = L - inner - 2
                drop = min(inner, outer)
                ear = _long_ear(g, a, b, comp, drop, budget)
                if ear is None:
                    continue
                if inner <= outer:
                    # keep b .. a (forward from b), replace a -> b arc by the ear
                    keep = cycle[ib:] + cycle[: ia + 1]
                    return keep + ear[1:-1]
                keep = cycle[ia : ib + 1]
                return keep + ear[::-1][1:-1]
    return None


def _improve_by_rotation(g: Graph, cycle: list[int], limit: int) -> list[int] | None:
    """Open the cycle at an outside neighbour, extend, and re-close by Posa rotations."""
    on = set(cycle)
    L = len(cycle)
    for j, y in enumerate(cycle):
        for x in g.adj[y]:
            if x in on:
                continue
            path = [x] + cycle[j:] + cycle[:j]
            used = set(path)
            _extend(g, path, used)
            # rotate the far end; the near end stays fixed
            frontier = [path]
            seen_ends = {path[-1]}
            while frontier and len(seen_ends) <= limit:
                cur = frontier.pop()
                cyc = _crossing_cycle(g, cur)
                if cyc is not None and len(cyc) > L:
                    return cyc
                end = cur[-1]
                idx = {v: i for i, v in enumerate(cur)}
                for w in g.adj[end]:
                    i = idx.get(w)
                    if i is None or i >= len(cur) - 2:
                        continue
                    rot = cur[: i + 1] + cur[i + 1 :][::-1]
                    if rot[-1] in seen_ends:
                        continue
                    seen_ends.add(rot[-1])
                    ext = list(rot)
                    ext_used = set(ext)
                    _extend_tail(g, ext, ext_used)
                    frontier.append(ext)
    return None


def _extend_tail(g: Graph, path: list[int], on: set[int]) -> None:
    while True:
        nxt = next((u for u in g.adj[path[-1]] if u not in on), None)
        if nxt is None:
            return
        path.append(nxt)
        on.add(nxt)


def _exact_cycle_at_least(g: Graph, goal: int) -> list[int] | None:
    """Depth-first search for a cycle with at least ``goal`` vertices."""
    for s in range(g.n):
        allowed = set(range(s, g.n))

        def reach_bound(path_set: set[int], end: int) -> int:
            seen = {end}
            stack = [end]
            while stack:
                v = stack.pop()
                for u in g.adj[v]:
                    if u in allowed and u not in seen and (u not in path_set or u == s):
                        seen.add(u)
                        stack.append(u)
            return len(seen - {end, s})

        path = [s]
        on = {s}
        iters = [iter(g.adj[s])]
        while iters:
            advanced = False
            for u in iters[-1]:
                if u < s or u in on:
                    continue
                path.append(u)
                on.add(u)
                if len(path) >= goal and g.has_edge(u, s):
                    return list(path)
                if len(path) + reach_bound(on, u) >= goal:
                    iters.append(iter(g.adj[u]))
                    advanced = True
                    break
                path.pop()
                on.discard(u)
            if not advanced:
                iters.pop()
                v = path.pop()
                on.discard(v)
    return None


def dirac_cycle(g: Graph, at_least: int | None = None) -> Witness:
    """Cycle with at least ``min(2*delta(g), n)`` vertices (g 2-connected).

    The first cycle comes from a saturated long path. It is then improved
    by ears through outside components and by rotation-extension; if no
    move applies before the bound is met an exhaustive search finishes
    the job. ``at_least`` lowers the goal when a shorter cycle suffices.
    """
    if not is_two_connected(g):
        raise PreconditionError("graph is not 2-connected")
    goal = min(2 * g.min_degree(), g.n)
    if at_least is not None:
        goal = min(goal, at_least)
    goal = max(goal, 3)

    path = list(erdos_gallai_path(g).vertices)
    _extend(g, path, set(path))
    cycle = _crossing_cycle(g, path)
    if cycle is None:
        cycle = _best_chord_cycle(g, path)
    while len(cycle) < goal:
        nxt = _improve_by_ear(g, cycle, budget=20000)
        if nxt is None:
            nxt = _improve_by_rotation(g, cycle, limit=4 * g.n)
        if nxt is None or len(nxt) <= len(cycle):
            nxt = _exact_cycle_at_least(g, goal)
            if nxt is None:
                raise InternalError("no cycle meets the minimum-degree bound")
        cycle = nxt
    w = Witness(CYCLE, tuple(cycle))
    if not verify_witness(g, w):
        raise InternalError(f"constructed an invalid cycle {cycle}")
    return w


def _best_chord_cycle(g: Graph, path: list[int]) -> list[int]:
    """Longest cycle formed by path segments and chords at the two ends."""
    L = len(path)
    u, v = path[0], path[-1]
    best: list[int] = []
    a = max((i for i in range(2, L) if path[i] in g.nbrset[u]), default=None)
    if a is not None:
        best = path[: a + 1]
    b = min((i for i in range(0, L - 2) if path[i] in g.nbrset[v]), default=None)
    if b is not None and L - b > len(best):
        best = path[b:]
    nu = [i for i in range(L) if path[i] in g.nbrset[u]]
    nv = [j for j in range(L) if path[j] in g.nbrset[v]]
    for i in nu:
        for j in nv:
            if j < i - 1:
                size = (j + 1) + (L - i)
                if size > len(best):
                    best = path[: j + 1] + path[i:][::-1]
    if len(best) < 3:
        raise InternalError("saturated path has no chord")
    return best
