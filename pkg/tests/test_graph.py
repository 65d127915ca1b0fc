import pytest
from hypothesis import given
from hypothesis import strategies as st

from abovedeg.errors import FormatError, PreconditionError
from abovedeg.graph import (
    CYCLE,
    PATH,
    Graph,
    Witness,
    complete_graph,
    contract,
    cycle_graph,
    lift_cycle,
    parse_graph,
    path_graph,
    serialize_graph,
    verify_witness,
)


class TestParse:
    def test_path_on_three(self):
        g = parse_graph("0 1\n1 2")
        assert (g.n, g.m) == (3, 2)
        assert g == path_graph(3)

    def test_self_loop(self):
        with pytest.raises(FormatError, match="self-loop"):
            parse_graph("0 0")

    def test_duplicate(self):
        with pytest.raises(FormatError, match="duplicate"):
            parse_graph("0 1\n1 0")

    def test_non_integer(self):
        with pytest.raises(FormatError):
            parse_graph("0 a")

    def test_header_and_comments(self):
        g = parse_graph("# a comment\np 5 1\n\n3 4\n")
        assert (g.n, g.m) == (5, 1)

    def test_header_edge_count_mismatch(self):
        with pytest.raises(FormatError):
            parse_graph("p 3 2\n0 1\n")

    def test_header_too_small(self):
        with pytest.raises(FormatError):
            parse_graph("p 2 1\n0 5\n")

    def test_empty(self):
        assert parse_graph("").n == 0


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@given(graphs())
def test_serialize_roundtrip(g):
    assert parse_graph(serialize_graph(g)) == g


@given(graphs())
def test_adjacency_invariants(g):
    for v in range(g.n):
        assert v not in g.adj[v]
        assert list(g.adj[v]) == sorted(set(g.adj[v]))
        for u in g.adj[v]:
            assert v in g.adj[u]
    assert g.m == sum(len(a) for a in g.adj) // 2


def test_from_edges_rejects_loops_and_repeats():
    with pytest.raises(PreconditionError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(PreconditionError):
        Graph.from_edges(2, [(0, 1), (1, 0)])


class TestVerifyWitness:
    c4 = cycle_graph(4)

    def test_path_ok(self):
        assert verify_witness(self.c4, Witness(PATH, (0, 1, 2, 3)))

    def test_cycle_with_non_edge(self):
        assert not verify_witness(self.c4, Witness(CYCLE, (0, 1, 3, 2)))

    def test_repeat(self):
        assert not verify_witness(self.c4, Witness(PATH, (0, 1, 0)))

    def test_cycle_ok(self):
        assert verify_witness(self.c4, Witness(CYCLE, (0, 1, 2, 3)))

    def test_short_cycle(self):
        assert not verify_witness(self.c4, Witness(CYCLE, (0, 1)))

    def test_json_roundtrip(self):
        w = Witness(CYCLE, (3, 2, 1, 0))
        assert Witness.from_json(w.to_json()) == w


class TestContract:
    def test_p4_middle(self):
        q, cmap = contract(path_graph(4), [{1, 2}])
        assert q == path_graph(3)
        assert cmap.blobs == ((0,), (1, 2), (3,))

    def test_k4_halves(self):
        q, _ = contract(complete_graph(4), [{0, 1}, {2, 3}])
        assert q == complete_graph(2)

    def test_disconnected_group(self):
        with pytest.raises(PreconditionError):
            contract(cycle_graph(6), [{0, 3}])

    def test_overlapping_groups(self):
        with pytest.raises(PreconditionError):
            contract(cycle_graph(6), [{0, 1}, {1, 2}])


class TestLiftCycle:
    def test_singletons_identity(self):
        g = cycle_graph(4)
        q, cmap = contract(g, [])
        assert lift_cycle(g, cmap, [0, 1, 2, 3]) == Witness(CYCLE, (0, 1, 2, 3))

    def test_p4_blob_in_triangle(self):
        # path 0-1-2-3 plus apex 4 joined to both ends; blob {1, 2}
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 4), (3, 4), (0, 2)])
        q, cmap = contract(g, [{0, 1, 2}])
        assert q.m == 3
        w = lift_cycle(g, cmap, [0, 1, 2])
        assert verify_witness(g, w) and len(w) >= 3

    def test_blob_of_three_gains(self):
        # cycle 0-1-2-3-4-5 with blob {1, 2, 3}: entry 1, exit 3
        g = cycle_graph(6)
        q, cmap = contract(g, [{1, 2, 3}])
        assert q == cycle_graph(4)
        w = lift_cycle(g, cmap, [0, 1, 2, 3])
        assert verify_witness(g, w)
        assert len(w) == 6 > 4
