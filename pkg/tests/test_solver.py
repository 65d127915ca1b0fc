import itertools
import random

import pytest

from abovedeg.colorpath import TrialBudget
from abovedeg.decompose import degeneracy, is_two_connected
from abovedeg.errors import PreconditionError
from abovedeg.graph import CYCLE, PATH, Graph, complete_graph, cycle_graph, path_graph, petersen_graph, verify_witness
from abovedeg.oracle import brute_longest_cycle, brute_longest_path, gen_random_connected, gen_random_two_connected
from abovedeg.segments import SegmentSystem
from abovedeg.solver import _chain_order, assemble_path, lcad, lpad


def sound(g, rep, kind):
    if rep.answer:
        assert rep.witness.kind == kind
        assert verify_witness(g, rep.witness)
        assert len(rep.witness) >= rep.d + rep.k
    else:
        assert rep.witness is None


def clique_with_tail(d, extra, seed, ears=False):
    """``K_{d+1}`` on 0..d with ``extra`` outside vertices hung on it."""
    rng = random.Random(seed)
    n = d + 1 + extra
    edges = list(itertools.combinations(range(d + 1), 2))
    for v in range(d + 1, n):
        if ears:
            edges += [(u, v) for u in rng.sample(range(d + 1), 2)]
        else:
            edges += [(u, v) for u in rng.sample(range(v), rng.choice([1, 1, 2]))]
    return Graph.from_edges(n, edges)


class TestLpadExamples:
    def test_c6_k4(self):
        rep = lpad(cycle_graph(6), 4)
        assert rep.answer and len(rep.witness) == 6 and rep.branch == "small_d"

    def test_c6_k5(self):
        rep = lpad(cycle_graph(6), 5)
        assert not rep.answer and rep.exact

    def test_petersen_k7(self):
        rep = lpad(petersen_graph(), 7, TrialBudget(seed=4), exact_up_to=0)
        assert rep.answer and len(rep.witness) == 10

    def test_disconnected(self):
        with pytest.raises(PreconditionError):
            lpad(Graph.from_edges(4, [(0, 1), (2, 3)]), 1)

    def test_k_positive(self):
        with pytest.raises(PreconditionError):
            lpad(cycle_graph(6), 0)


class TestLcadExamples:
    def test_petersen_k6(self):
        rep = lcad(petersen_graph(), 6)
        assert rep.answer and len(rep.witness) == 9

    def test_petersen_k7(self):
        assert not lcad(petersen_graph(), 7).answer

    def test_k5_k2(self):
        assert not lcad(complete_graph(5), 2).answer

    def test_not_two_connected(self):
        with pytest.raises(PreconditionError, match="not 2-connected"):
            lcad(path_graph(4), 2)


class TestBranches:
    def test_big_core_path(self):
        g = clique_with_tail(8, 3, 0)
        rep = lpad(g, 1)
        assert rep.branch == "big_core" and rep.answer
        sound(g, rep, PATH)

    def test_big_core_cycle(self):
        g = clique_with_tail(8, 3, 0, ears=True)
        rep = lcad(g, 1)
        assert rep.branch == "big_core" and rep.answer
        sound(g, rep, CYCLE)

    def test_segments_path_assembly_size(self):
        g = clique_with_tail(7, 4, 1)
        rep = lpad(g, 2)
        assert rep.branch == "segments" and rep.p == 1 and rep.terminals == 8
        sound(g, rep, PATH)
        if rep.answer:
            # all of the core plus exactly p outside vertices
            assert set(rep.core) <= set(rep.witness.vertices)
            assert len(rep.witness) == rep.d + rep.k

    def test_st_path_cycle(self):
        g = clique_with_tail(7, 3, 2, ears=True)
        rep = lcad(g, 2)
        assert rep.branch == "st_path" and rep.answer
        assert set(rep.core) <= set(rep.witness.vertices)
        sound(g, rep, CYCLE)

    def test_segments_cycle(self):
        # single-vertex ears only, so no detour has 2 interior vertices
        g = clique_with_tail(12, 3, 5, ears=True)
        rep = lcad(g, 3)
        assert rep.branch == "segments" and rep.p == 2 and rep.answer
        assert set(rep.core) <= set(rep.witness.vertices)
        sound(g, rep, CYCLE)

    def test_contracted_core(self):
        # two K8 blocks sharing vertex 7, joined again by an outside path
        edges = list(itertools.combinations(range(8), 2))
        edges += list(itertools.combinations(range(7, 15), 2))
        edges += [(0, 15), (15, 16), (16, 14)]
        g = Graph.from_edges(17, edges)
        assert is_two_connected(g)
        rep = lcad(g, 2)
        assert rep.branch == "big_core" and rep.answer
        sound(g, rep, CYCLE)

    def test_monte_carlo_no_reports_miss(self):
        g = clique_with_tail(7, 1, 3)
        rep = lpad(g, 2, TrialBudget(trials=2, seed=0), exact_up_to=0)
        if not rep.answer:
            assert rep.miss_probability > 0 and not rep.exact


def test_chain_order_normalises():
    T = frozenset(range(4))
    sys = SegmentSystem(((2, 11, 3), (10, 1), (1, 12, 2)), T, extended=True)
    segs = _chain_order(sys)
    assert segs == [[10, 1], [1, 12, 2], [2, 11, 3]]


def test_assemble_two_open_ends():
    d = 8
    core = list(range(d + 1))
    edges = list(itertools.combinations(core, 2)) + [(9, 0), (10, 5)]
    g = Graph.from_edges(11, edges)
    sys = SegmentSystem(((9, 0), (5, 10)), frozenset(core), extended=True)
    w = assemble_path(g, core, sys, 2)
    assert verify_witness(g, w) and len(w) == 11
    assert {w.vertices[0], w.vertices[-1]} == {9, 10}


@pytest.mark.parametrize("seed", range(40))
def test_matches_brute(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 11)
    g = gen_random_connected(n, rng.choice([0.15, 0.4, 0.8]), seed)
    L = len(brute_longest_path(g))
    d = degeneracy(g)
    h = gen_random_two_connected(n, rng.choice([0.15, 0.4, 0.8]), seed)
    C = len(brute_longest_cycle(h))
    dh = degeneracy(h)
    for k in range(1, n + 1):
        rep = lpad(g, k)
        sound(g, rep, PATH)
        assert rep.answer == (L >= d + k)
        rep = lcad(h, k)
        sound(h, rep, CYCLE)
        assert rep.answer == (C >= dh + k)


@pytest.mark.parametrize("seed", range(12))
def test_segment_branches_match_brute(seed):
    rng = random.Random(seed)
    g = clique_with_tail(7, rng.randint(1, 5), seed)
    if degeneracy(g) == 7:
        rep = lpad(g, 2)
        assert rep.answer == (len(brute_longest_path(g)) >= 9)
        sound(g, rep, PATH)
    h = clique_with_tail(12, rng.randint(1, 4), seed, ears=True)
    rep = lcad(h, 3)
    assert rep.answer == (len(brute_longest_cycle(h)) >= 15)
    sound(h, rep, CYCLE)


def test_report_dict_is_json_ready():
    import json

    doc = lpad(cycle_graph(6), 4).to_dict()
    assert json.loads(json.dumps(doc))["answer"] == "yes"
    assert doc["trials_used"] == 1
