"""Long paths and cycles with at least ``dg(G) + k`` vertices.

Both solvers pick one of three strategies from ``d = dg(G)`` and the
d-core ``H`` (terminal set ``T = V(H)``):

``small_d``
    ``d <= 5k - 4``: color-coding for ``d + k`` vertices directly.
``big_core``
    ``|H| >= d + k``: a minimum-degree construction inside ``H`` is long
    enough on its own.
``segments`` / ``st_path``
    otherwise a solution exists iff a short system of T-segments with
    ``p = d + k - |T|`` outside vertices exists; the system is completed
    into a path or cycle by rerouting through ``H``.

Every yes-answer carries a verified witness. A no-answer from a
Monte-Carlo branch carries an estimate of the residual miss probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import colorpath, segments
from .colorpath import TrialBudget, TrialLog
from .decompose import (
    block_tree_distance,
    blocks_and_cuts,
    components,
    core_decomposition,
    d_core,
    is_connected,
    is_two_connected,
)
from .errors import InternalError, PreconditionError
from .extremal import dirac_cycle, erdos_gallai_path
from .graph import CYCLE, PATH, Graph, Witness, contract, lift_cycle, verify_witness
from .reroute import TerminalPairs, cover_paths

__all__ = ["SolverReport", "lpad", "lcad", "erdos_gallai_path", "dirac_cycle", "EXACT_UP_TO"]

# graphs this small are solved with injective colorings (exact answers)
EXACT_UP_TO = 12


@dataclass
class SolverReport:
    answer: bool
    witness: Witness | None
    branch: str
    d: int
    k: int
    p: int | None = None
    terminals: int | None = None
    core: tuple[int, ...] = ()
    exact: bool = True
    miss_probability: float = 0.0
    monte_carlo: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "answer": "yes" if self.answer else "no",
            "witness": self.witness.to_dict() if self.witness else None,
            "branch": self.branch,
            "d": self.d,
            "k": self.k,
            "p": self.p,
            "terminals": self.terminals,
            "core": list(self.core),
            "exact": self.exact,
            "miss_probability": self.miss_probability,
            "monte_carlo": self.monte_carlo,
            "trials_used": sum(c["trials"] for c in self.monte_carlo),
        }


def _budget_for(g: Graph, budget: TrialBudget, exact_up_to: int) -> TrialBudget:
    if g.n <= exact_up_to and not budget.exhaustive:
        return TrialBudget(budget.trials, budget.seed, exhaustive=True)
    return budget


def _miss(calls: list[dict], exhaustive: bool) -> float:
    """Largest per-subcall miss probability; the witness could hide behind any one."""
    if exhaustive:
        return 0.0
    worst = 0.0
    for c in calls:
        if c["trials"] == 0:
            continue
        if c["call"] in ("segments", "extended_segments"):
            pr = segments.miss_probability(c["p"], c["trials"])
        else:
            pr = colorpath.miss_probability(c["q"], c["trials"])
        worst = max(worst, pr)
    return worst


def _finish(report: SolverReport, g: Graph, need: int) -> SolverReport:
    w = report.witness
    if report.answer:
        if w is None or not verify_witness(g, w) or len(w) < need:
            raise InternalError(f"branch {report.branch} produced a bad certificate {w}")
    return report


# -- segment chains -----------------------------------------------------------


def _orient(seg: tuple[int, ...], start: int | None = None, end: int | None = None) -> list[int]:
    s = list(seg)
    if (start is not None and s[0] != start) or (end is not None and s[-1] != end):
        s.reverse()
    return s


def _chain_order(system: segments.SegmentSystem) -> list[list[int]]:
    """Segments ordered and oriented so consecutive ones share an end only
    when they touch; one-terminal segments come first (free end leading)
    and last (free end trailing)."""
    T = system.terminals
    paths = list(system.paths)
    touch: dict[int, list[int]] = {}
    for i, p in enumerate(paths):
        for v in {p[0], p[-1]}:
            if v in T:
                touch.setdefault(v, []).append(i)
    nbr: list[list[int]] = [[] for _ in paths]
    for idx in touch.values():
        if len(idx) == 2:
            a, b = idx
            nbr[a].append(b)
            nbr[b].append(a)
    one = [i for i, p in enumerate(paths) if (p[0] in T) != (p[-1] in T)]

    def walk(first: int) -> list[int]:
        order, prev, cur = [first], None, first
        while True:
            nxt = [j for j in nbr[cur] if j != prev]
            if not nxt:
                return order
            prev, cur = cur, nxt[0]
            order.append(cur)

    seen: set[int] = set()
    chains: list[list[int]] = []
    starts = [one[0]] if one else []
    starts += [i for i in range(len(paths)) if len(nbr[i]) <= 1 and i not in one]
    if len(one) == 2:
        starts.append(one[1])
    for i in starts:
        if i not in seen:
            chain = walk(i)
            seen.update(chain)
            chains.append(chain)
    if len(one) == 2 and chains[-1][0] == one[1]:
        chains[-1].reverse()
    if len(seen) != len(paths):
        raise InternalError("segment union is not a linear forest")

    out: list[list[int]] = []
    for chain in chains:
        for pos, i in enumerate(chain):
            seg = paths[i]
            if pos == 0:
                if len(chain) > 1:
                    nxt = paths[chain[1]]
                    shared = ({seg[0], seg[-1]} & {nxt[0], nxt[-1]}).pop()
                    oriented = _orient(seg, end=shared)
                elif i in one and i == one[0]:
                    oriented = _orient(seg, end=seg[0] if seg[0] in T else seg[-1])
                elif i in one:
                    oriented = _orient(seg, start=seg[0] if seg[0] in T else seg[-1])
                else:
                    oriented = list(seg)
            else:
                oriented = _orient(seg, start=out[-1][-1])
            out.append(oriented)
    return out


def _concat(pieces: Sequence[Sequence[int]]) -> list[int]:
    """Join pieces whose consecutive ends coincide."""
    out = list(pieces[0])
    for piece in pieces[1:]:
        if piece[0] != out[-1]:
            raise InternalError("pieces do not chain")
        out.extend(piece[1:])
    return out


def _reroute(g: Graph, core: Sequence[int], pairs: list[tuple[int, int]], k: int) -> list[list[int]]:
    """Disjoint paths in ``G[core]`` joining ``pairs`` and covering the core."""
    h, orig = g.induced(core)
    index = {v: i for i, v in enumerate(orig)}
    local = tuple((index[s], index[t]) for s, t in pairs)
    return [[orig[v] for v in w.vertices] for w in cover_paths(h, TerminalPairs(local, k))]


def assemble_path(g: Graph, core: Sequence[int], system: segments.SegmentSystem, k: int) -> Witness:
    """Complete an extended system into a path covering the core."""
    segs = _chain_order(system)
    T = system.terminals
    two_open = segs[-1][-1] not in T
    pairs = [(segs[i][-1], segs[i + 1][0]) for i in range(len(segs) - 1)]
    if not two_open:
        touched = {v for s in segs for v in s}
        fresh = min(v for v in core if v not in touched)
        pairs.append((segs[-1][-1], fresh))
    links = _reroute(g, core, pairs, k)
    pieces: list[list[int]] = []
    for i, seg in enumerate(segs):
        pieces.append(seg)
        if i < len(links):
            pieces.append(links[i])
    return Witness(PATH, tuple(_concat(pieces)))


def assemble_cycle(g: Graph, core: Sequence[int], segs: list[list[int]], k: int) -> Witness:
    """Close chained two-terminal segments into a cycle covering the core."""
    r = len(segs)
    pairs = [(segs[i][-1], segs[(i + 1) % r][0]) for i in range(r)]
    links = _reroute(g, core, pairs, k)
    pieces: list[list[int]] = []
    for seg, link in zip(segs, links):
        pieces += [seg, link]
    cyc = _concat(pieces)
    if cyc[-1] != cyc[0]:
        raise InternalError("cycle did not close")
    return Witness(CYCLE, tuple(cyc[:-1]))


# -- paths --------------------------------------------------------------------


def lpad(g: Graph, k: int, budget: TrialBudget = TrialBudget(), exact_up_to: int = EXACT_UP_TO) -> SolverReport:
    """Decide whether ``g`` (connected) has a path on at least ``dg(g) + k`` vertices."""
    if k < 1:
        raise PreconditionError("k must be positive")
    if g.n == 0 or not is_connected(g):
        raise PreconditionError("graph is not connected")
    budget = _budget_for(g, budget, exact_up_to)
    cores = core_decomposition(g)
    d = cores.degeneracy
    need = d + k
    log = TrialLog()

    if d <= 5 * k - 4:
        w = colorpath.longest_path_at_least(g, need, budget, log) if need <= g.n else None
        rep = SolverReport(w is not None, w, "small_d", d, k, exact=budget.exhaustive or need > g.n)
        rep.monte_carlo = log.calls
        rep.miss_probability = 0.0 if w or rep.exact else _miss(log.calls, False)
        return _finish(rep, g, need)

    core = sorted(d_core(g, d, cores))
    T = len(core)
    if T >= need:
        h, orig = g.induced(core)
        w = Witness(PATH, tuple(orig[v] for v in erdos_gallai_path(h).vertices))
        return _finish(SolverReport(True, w, "big_core", d, k, None, T, tuple(core)), g, need)

    p = need - T
    rep = SolverReport(False, None, "segments", d, k, p, T, tuple(core), exact=budget.exhaustive)
    if need <= g.n:
        for r in range(1, p + 1):
            sys = segments.solve_extended_segments(g, core, p, r, budget, log)
            if sys is not None:
                rep.answer = True
                rep.witness = assemble_path(g, core, sys, k)
                break
    else:
        rep.exact = True
    rep.monte_carlo = log.calls
    rep.miss_probability = 0.0 if rep.answer or rep.exact else _miss(log.calls, False)
    return _finish(rep, g, need)


# -- cycles -------------------------------------------------------------------


def _contraction_groups(g: Graph, core: list[int]) -> list[set[int]]:
    """Components outside the core, each glued to one core vertex.

    The attachment is a non-cut vertex of ``G[core]`` when one is
    adjacent, otherwise the adjacent cut vertex farthest from the root
    block. Groups sharing an attachment are merged.
    """
    h, orig = g.induced(core)
    index = {v: i for i, v in enumerate(orig)}
    bt = blocks_and_cuts(h)
    in_core = set(core)
    outside = set(range(g.n)) - in_core
    by_anchor: dict[int, set[int]] = {}
    for comp in components(g, outside):
        attach = sorted({u for v in comp for u in g.adj[v] if u in in_core})
        plain = [v for v in attach if index[v] not in bt.cut_vertices]
        if plain:
            anchor = plain[0]
        else:
            anchor = max(attach, key=lambda v: (block_tree_distance(bt, index[v]), -v))
        by_anchor.setdefault(anchor, {anchor}).update(comp)
    return [by_anchor[a] for a in sorted(by_anchor)]


def _big_core_cycle(g: Graph, core: list[int], d: int, need: int) -> Witness:
    h, orig = g.induced(core)
    if is_two_connected(h):
        w = dirac_cycle(h, at_least=need)
        return Witness(CYCLE, tuple(orig[v] for v in w.vertices))
    quotient, cmap = contract(g, _contraction_groups(g, core))
    if not is_two_connected(quotient):
        raise InternalError("contracted graph is not 2-connected")
    if quotient.min_degree() < d:
        raise InternalError("contracted graph has minimum degree below d")
    w = dirac_cycle(quotient, at_least=need)
    return lift_cycle(g, cmap, w.vertices)


def _st_route(g: Graph, core: list[int], p: int, k: int, budget: TrialBudget, log: TrialLog) -> Witness | None:
    """A long detour between two core vertices, closed through the core."""
    in_core = set(core)
    core_edges = [(u, v) for u in core for v in g.adj[u] if u < v and v in in_core]
    for i, s in enumerate(core):
        for t in core[i + 1 :]:
            gst = g.without(in_core - {s, t}, core_edges)
            w = colorpath.st_path_at_least(gst, s, t, p + 2, budget, log)
            if w is None:
                continue
            link = _reroute(g, core, [(s, t)], k)[0]
            return Witness(CYCLE, tuple(list(w.vertices) + link[::-1][1:-1]))
    return None


def _trim(segs: list[list[int]], T: frozenset[int], p: int) -> list[list[int]]:
    """Shortest prefix holding at least ``p`` outside vertices."""
    total = 0
    for i, s in enumerate(segs):
        total += sum(v not in T for v in s)
        if total >= p:
            return segs[: i + 1]
    raise InternalError("segment system has fewer than p outside vertices")


def lcad(g: Graph, k: int, budget: TrialBudget = TrialBudget(), exact_up_to: int = EXACT_UP_TO) -> SolverReport:
    """Decide whether ``g`` (2-connected) has a cycle on at least ``dg(g) + k`` vertices."""
    if k < 1:
        raise PreconditionError("k must be positive")
    if not is_two_connected(g):
        raise PreconditionError("graph is not 2-connected")
    budget = _budget_for(g, budget, exact_up_to)
    cores = core_decomposition(g)
    d = cores.degeneracy
    need = d + k
    log = TrialLog()

    if d <= 5 * k - 4:
        w = colorpath.longest_cycle_at_least(g, max(need, 3), budget, log) if need <= g.n else None
        rep = SolverReport(w is not None, w, "small_d", d, k, exact=budget.exhaustive or need > g.n)
        rep.monte_carlo = log.calls
        rep.miss_probability = 0.0 if w or rep.exact else _miss(log.calls, False)
        return _finish(rep, g, need)

    core = sorted(d_core(g, d, cores))
    T = len(core)
    if T >= need:
        w = _big_core_cycle(g, core, d, need)
        return _finish(SolverReport(True, w, "big_core", d, k, None, T, tuple(core)), g, need)

    p = need - T
    rep = SolverReport(False, None, "st_path", d, k, p, T, tuple(core), exact=budget.exhaustive)
    if need > g.n:
        rep.exact = True
        return _finish(rep, g, need)
    w = _st_route(g, core, p, k, budget, log)
    if w is None:
        rep.branch = "segments"
        tset = frozenset(core)
        for total in range(p, 2 * p - 1):
            for r in range(1, total + 1):
                sys = segments.solve_segments(g, core, total, r, budget, log)
                if sys is not None:
                    w = assemble_cycle(g, core, _trim(_chain_order(sys), tset, p), k)
                    break
            if w is not None:
                break
    rep.answer = w is not None
    rep.witness = w
    rep.monte_carlo = log.calls
    rep.miss_probability = 0.0 if rep.answer or rep.exact else _miss(log.calls, False)
    return _finish(rep, g, need)
