"""Simple undirected graphs, edge-list I/O, witnesses and contractions."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import FormatError, PreconditionError

PATH = "path"
CYCLE = "cycle"


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph on the vertices ``0..n-1``.

    ``adj[v]`` is the strictly increasing tuple of neighbours of ``v``.
    Use :meth:`from_edges` rather than the constructor; it enforces
    the simple-graph invariants.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    m: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise PreconditionError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), m)

    @classmethod
    def from_edge_array(cls, n: int, edges: np.ndarray) -> "Graph":
        """Vectorised construction for large inputs; same checks as ``from_edges``."""
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise PreconditionError("edge endpoint out of range")
        if np.any(edges[:, 0] == edges[:, 1]):
            raise PreconditionError("self-loop in edge array")
        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            raise PreconditionError("duplicate edge in edge array")
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        counts = np.bincount(src, minlength=n)
        splits = np.split(dst, np.cumsum(counts)[:-1])
        adj = tuple(tuple(a.tolist()) for a in splits)
        return cls(n, adj, int(edges.shape[0]))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @cached_property
    def nbrset(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def bits(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks (for subset DPs on small graphs)."""
        out = []
        for a in self.adj:
            b = 0
            for u in a:
                b |= 1 << u
            out.append(b)
        return tuple(out)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrset[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled densely.

        Returns the subgraph and ``orig`` with ``orig[i]`` the original id
        of new vertex ``i`` (ids keep their relative order).
        """
        orig = sorted(set(vertices))
        index = {v: i for i, v in enumerate(orig)}
        edges = [
            (index[u], index[v])
            for u in orig
            for v in self.adj[u]
            if u < v and v in index
        ]
        return Graph.from_edges(len(orig), edges), orig

    def without(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        """Same vertex ids, with the given vertices isolated and edges removed."""
        dead = set(vertices)
        gone = {(min(u, v), max(u, v)) for u, v in edges}
        keep = [
            (u, v)
            for u, v in self.edges()
            if u not in dead and v not in dead and (u, v) not in gone
        ]
        return Graph.from_edges(self.n, keep)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


# -- edge-list text format ---------------------------------------------------


def _int_token(tok: str, lineno: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer token {tok!r}") from None
    if val < 0:
        raise FormatError(f"line {lineno}: negative vertex id {val}")
    return val


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format.

    Blank lines and lines starting with ``#`` are ignored. An optional
    header ``p <n> <m>`` fixes the vertex and edge counts; otherwise the
    vertex set is ``0..max id seen``.
    """
    header_n = header_m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if header_n is not None:
                raise FormatError(f"line {lineno}: second header")
            if edges:
                raise FormatError(f"line {lineno}: header after edges")
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: header must be 'p <n> <m>'")
            header_n = _int_token(toks[1], lineno)
            header_m = _int_token(toks[2], lineno)
            continue
        if len(toks) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = _int_token(toks[0], lineno), _int_token(toks[1], lineno)
        if u == v:
            raise FormatError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u, v))
    n = max((max(e) for e in edges), default=-1) + 1
    if header_n is not None:
        if n > header_n:
            raise FormatError(f"vertex id {n - 1} exceeds header n={header_n}")
        if header_m != len(edges):
            raise FormatError(f"header declares {header_m} edges, found {len(edges)}")
        n = header_n
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


# -- witnesses ---------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A simple path or cycle, given as its vertex sequence."""

    kind: str
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in (PATH, CYCLE):
            raise ValueError(f"unknown witness kind {self.kind!r}")
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "Witness":
        try:
            return cls(doc["kind"], tuple(doc["vertices"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad witness document: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "Witness":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad witness JSON: {exc}") from None
        return cls.from_dict(doc)


def verify_witness(g: Graph, w: Witness) -> bool:
    vs = w.vertices
    if not vs or len(set(vs)) != len(vs):
        return False
    if any(not (0 <= v < g.n) for v in vs):
        return False
    if any(not g.has_edge(a, b) for a, b in zip(vs, vs[1:])):
        return False
    if w.kind == CYCLE:
        return len(vs) >= 3 and g.has_edge(vs[-1], vs[0])
    return True


# -- contraction -------------------------------------------------------------


@dataclass(frozen=True)
class ContractionMap:
    blob_of: tuple[int, ...]
    blobs: tuple[tuple[int, ...], ...]


def _connected_within(g: Graph, members: set[int]) -> bool:
    start = next(iter(members))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if u in members and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(members)


def contract(g: Graph, groups: Sequence[Iterable[int]]) -> tuple[Graph, ContractionMap]:
    """Contract each group (a connected vertex set) to a single vertex.

    Vertices outside every group stay as singleton blobs. Blob ids are
    assigned in order of their smallest member.
    """
    owner: dict[int, int] = {}
    sets: list[set[int]] = []
    for gi, grp in enumerate(groups):
        s = set(grp)
        if not s:
            raise PreconditionError("empty contraction group")
        for v in s:
            if not 0 <= v < g.n:
                raise PreconditionError(f"vertex {v} out of range")
            if v in owner:
                raise PreconditionError(f"vertex {v} appears in two groups")
            owner[v] = gi
        if not _connected_within(g, s):
            raise PreconditionError(f"group {sorted(s)} does not induce a connected subgraph")
        sets.append(s)
    sets.extend({v} for v in range(g.n) if v not in owner)
    blobs = sorted((tuple(sorted(s)) for s in sets), key=lambda b: b[0])
    blob_of = [0] * g.n
    for bi, b in enumerate(blobs):
        for v in b:
            blob_of[v] = bi
    edges = {
        (min(blob_of[u], blob_of[v]), max(blob_of[u], blob_of[v]))
        for u, v in g.edges()
        if blob_of[u] != blob_of[v]
    }
    quotient = Graph.from_edges(len(blobs), sorted(edges))
    return quotient, ContractionMap(tuple(blob_of), tuple(blobs))


def _path_inside(g: Graph, members: set[int], src: int, dst: int) -> list[int]:
    prev = {src: src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        for u in g.adj[v]:
            if u in members and u not in prev:
                prev[u] = v
                queue.append(u)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def lift_cycle(g: Graph, cmap: ContractionMap, cycle: Sequence[int]) -> Witness:
    """Turn a cycle of the quotient graph into a cycle of ``g``.

    Consecutive blobs are joined by their lexicographically smallest
    cross edge; inside a blob the entry and exit vertices are joined by a
    shortest path through the blob.
    """
    r = len(cycle)
    links = []
    for i in range(r):
        a, b = cycle[i], cycle[(i + 1) % r]
        mb = set(cmap.blobs[b])
        links.append(min((x, y) for x in cmap.blobs[a] for y in g.adj[x] if y in mb))
    out: list[int] = []
    for i in range(r):
        entry = links[i - 1][1]
        exit_ = links[i][0]
        out.extend(_path_inside(g, set(cmap.blobs[cycle[i]]), entry, exit_))
    return Witness(CYCLE, tuple(out))
