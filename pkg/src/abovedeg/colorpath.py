"""Color-coding searches for long paths, long cycles and long (s,t)-paths.

Every search returns a verified :class:`~abovedeg.graph.Witness` or None.
None means "nothing found within the budget"; yes-answers are always
certificates.

Paths of at least ``q`` vertices are found as colorful paths on exactly
``q`` vertices. For cycles and (s,t)-paths the witness may be much
longer than ``q``, so the DP finds a colorful ``q``-vertex prefix and the
remainder is closed by a breadth-first search that avoids the prefix.
With an exhaustive budget every vertex gets its own color, the DP state
is then exactly the prefix vertex set and the closing test is exact.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .errors import InternalError, PreconditionError
from .graph import CYCLE, PATH, Graph, Witness, verify_witness

MASK64 = (1 << 64) - 1
TRIAL_CAP = 10**6


@dataclass(frozen=True)
class TrialBudget:
    """How many random colorings to try.

    ``trials=None`` selects the caller's default formula. ``exhaustive``
    replaces random colorings by a single injective coloring, which
    makes every search exact (and exponential in ``n``).
    """

    trials: int | None = None
    seed: int = 0
    exhaustive: bool = False

    def __post_init__(self) -> None:
        if self.trials is not None and self.trials < 1:
            raise PreconditionError("trials must be >= 1")

    def resolve(self, default: int) -> int:
        if self.exhaustive:
            return 1
        return self.trials if self.trials is not None else default


def default_trials(exponent: float) -> int:
    """``ceil(e**exponent)`` capped at one million."""
    if exponent >= math.log(TRIAL_CAP):
        return TRIAL_CAP
    return min(TRIAL_CAP, math.ceil(math.exp(exponent)))


@dataclass(frozen=True)
class Coloring:
    q: int
    color: tuple[int, ...]  # 0-based internally; color c is reported as c + 1
    seed: int | None = None
    trial: int | None = None


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent counter-based stream for one trial (key = seed xor trial)."""
    return np.random.Generator(np.random.Philox(key=(seed ^ trial) & MASK64))


def random_coloring(n: int, q: int, seed: int, trial: int, rng: np.random.Generator | None = None) -> Coloring:
    if rng is None:
        rng = trial_rng(seed, trial)
    col = rng.integers(0, q, size=n)
    return Coloring(q, tuple(col.tolist()), seed, trial)


def identity_coloring(n: int) -> Coloring:
    return Coloring(n, tuple(range(n)))


def colorings(n: int, q: int, budget: TrialBudget, default: int) -> Iterator[Coloring]:
    if budget.exhaustive:
        yield identity_coloring(n)
        return
    for t in range(budget.resolve(default)):
        yield random_coloring(n, q, budget.seed, t)


@dataclass
class TrialLog:
    """Accumulates per-subcall trial counts for reports."""

    calls: list[dict] = field(default_factory=list)

    def record(self, name: str, trials: int, found: bool, **params) -> None:
        self.calls.append({"call": name, "trials": trials, "found": found, **params})

    @property
    def total(self) -> int:
        return sum(c["trials"] for c in self.calls)


# -- colorful path DP ---------------------------------------------------------


def _iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _ColorfulPaths:
    """Layered table: ``layers[L][mask]`` = bitset of endpoints of colorful
    paths on ``L + 1`` vertices whose color set is ``mask``."""

    def __init__(self, g: Graph, col: Coloring, allowed: int, starts: int):
        self.g = g
        self.col = col.color
        self.allowed = allowed
        class_bits = [0] * col.q
        for v in _iter_bits(allowed):
            class_bits[self.col[v]] |= 1 << v
        self.class_bits = class_bits
        first: dict[int, int] = {}
        for v in _iter_bits(starts & allowed):
            key = 1 << self.col[v]
            first[key] = first.get(key, 0) | (1 << v)
        self.layers = [first]

    def _uncolored(self, mask: int) -> int:
        used = 0
        for c in _iter_bits(mask):
            used |= self.class_bits[c]
        return self.allowed & ~used

    def grow(self, forbid_until_last: int = 0, last: bool = False) -> bool:
        bits = self.g.bits
        nxt: dict[int, int] = {}
        for mask, ends in self.layers[-1].items():
            reach = 0
            for v in _iter_bits(ends):
                reach |= bits[v]
            cand = reach & self._uncolored(mask)
            if not last:
                cand &= ~forbid_until_last
            for u in _iter_bits(cand):
                key = mask | (1 << self.col[u])
                nxt[key] = nxt.get(key, 0) | (1 << u)
        self.layers.append(nxt)
        return bool(nxt)

    def path_to(self, mask: int, end: int) -> list[int]:
        """Backtrack one colorful path with color set ``mask`` ending at ``end``."""
        bits = self.g.bits
        path = [end]
        v = end
        for level in range(len(self.layers) - 1, 0, -1):
            mask ^= 1 << self.col[v]
            cand = self.layers[level - 1][mask] & bits[v]
            v = (cand & -cand).bit_length() - 1
            path.append(v)
        return path[::-1]


def _bfs_avoiding(g: Graph, src: int, dst: int, blocked: set[int], allowed: int) -> list[int] | None:
    prev = {src: src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            out = [dst]
            while out[-1] != src:
                out.append(prev[out[-1]])
            return out[::-1]
        for u in g.adj[v]:
            if u not in prev and u not in blocked and (allowed >> u) & 1:
                prev[u] = v
                queue.append(u)
    return None


def _checked(g: Graph, w: Witness) -> Witness:
    if not verify_witness(g, w):
        raise InternalError(f"color-coding produced an invalid witness {w}")
    return w


def _run(
    name: str,
    budget: TrialBudget,
    q: int,
    n: int,
    attempt: Callable[[Coloring], Witness | None],
    log: TrialLog | None,
    **params,
) -> Witness | None:
    used = 0
    found = None
    for col in colorings(n, q, budget, default_trials(q)):
        used += 1
        found = attempt(col)
        if found is not None:
            break
    if log is not None:
        log.record(name, used, found is not None, q=q, **params)
    return found


def longest_path_at_least(g: Graph, q: int, budget: TrialBudget = TrialBudget(), log: TrialLog | None = None) -> Witness | None:
    """A path with at least ``q`` vertices, or None."""
    if q < 1:
        raise PreconditionError("q must be >= 1")
    if q > g.n:
        if log is not None:
            log.record("longest_path", 0, False, q=q)
        return None
    full = (1 << g.n) - 1

    def attempt(col: Coloring) -> Witness | None:
        dp = _ColorfulPaths(g, col, full, full)
        for _ in range(q - 1):
            if not dp.grow():
                return None
        mask, ends = next(iter(dp.layers[-1].items()))
        end = (ends & -ends).bit_length() - 1
        return _checked(g, Witness(PATH, tuple(dp.path_to(mask, end))))

    return _run("longest_path", budget, q, g.n, attempt, log)


def st_path_at_least(
    g: Graph, s: int, t: int, q: int, budget: TrialBudget = TrialBudget(), log: TrialLog | None = None
) -> Witness | None:
    """An (s,t)-path with at least ``q`` vertices, or None."""
    if s == t:
        raise PreconditionError("s and t must differ")
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise PreconditionError("s or t is not a vertex")
    if q > g.n:
        if log is not None:
            log.record("st_path", 0, False, q=q, s=s, t=t)
        return None
    q = max(q, 1)
    full = (1 << g.n) - 1
    tbit = 1 << t

    def attempt(col: Coloring) -> Witness | None:
        dp = _ColorfulPaths(g, col, full, 1 << s)
        for level in range(1, q):
            if not dp.grow(forbid_until_last=tbit, last=level == q - 1):
                return None
        for mask, ends in dp.layers[-1].items():
            if ends & tbit:
                return _checked(g, Witness(PATH, tuple(dp.path_to(mask, t))))
            for w in _iter_bits(ends):
                prefix = dp.path_to(mask, w)
                rest = _bfs_avoiding(g, w, t, set(prefix[:-1]), full)
                if rest is not None:
                    return _checked(g, Witness(PATH, tuple(prefix + rest[1:])))
        return None

    return _run("st_path", budget, q, g.n, attempt, log, s=s, t=t)


def longest_cycle_at_least(g: Graph, q: int, budget: TrialBudget = TrialBudget(), log: TrialLog | None = None) -> Witness | None:
    """A cycle with at least ``q`` vertices, or None.

    Each start vertex ``s`` anchors cycles whose smallest vertex is
    ``s``; a colorful ``q``-vertex path from ``s`` to ``w`` is closed by
    any ``w``-``s`` path through vertices above ``s`` that avoids the
    path's interior (the closing edge ``ws`` being the shortest case).
    """
    if q < 3:
        raise PreconditionError("a cycle has at least 3 vertices")
    if q > g.n:
        if log is not None:
            log.record("longest_cycle", 0, False, q=q)
        return None
    full = (1 << g.n) - 1

    def attempt(col: Coloring) -> Witness | None:
        for s in range(g.n - q + 1):
            allowed = full & ~((1 << s) - 1)
            dp = _ColorfulPaths(g, col, allowed, 1 << s)
            ok = True
            for _ in range(q - 1):
                if not dp.grow(forbid_until_last=0):
                    ok = False
                    break
            if not ok:
                continue
            for mask, ends in dp.layers[-1].items():
                for w in _iter_bits(ends):
                    prefix = dp.path_to(mask, w)
                    rest = _bfs_avoiding(g, w, s, set(prefix[1:-1]), allowed)
                    if rest is not None:
                        return _checked(g, Witness(CYCLE, tuple(prefix + rest[1:-1])))
        return None

    return _run("longest_cycle", budget, q, g.n, attempt, log)


def miss_probability(q: int, trials: int, exhaustive: bool = False) -> float:
    """Bound on missing a fixed colorful witness over ``trials`` colorings."""
    if exhaustive:
        return 0.0
    return (1.0 - math.exp(-q)) ** trials
