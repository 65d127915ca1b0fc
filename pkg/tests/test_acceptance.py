"""Acceptance gate: ten criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are echoed in
the terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from abovedeg.colorpath import TrialBudget
from abovedeg.decompose import core_decomposition, degeneracy, is_connected
from abovedeg.extremal import dirac_cycle, erdos_gallai_path
from abovedeg.graph import CYCLE, PATH, Graph, cycle_graph, path_graph, verify_witness
from abovedeg.oracle import (
    brute_longest_cycle,
    brute_longest_path,
    brute_segments,
    gen_hardness_path,
    gen_random_connected,
    gen_random_two_connected,
    gen_tight_cycle,
    gen_tight_path,
    tight_sizes,
)
from abovedeg.reroute import check_degree_condition, cover_paths
from abovedeg.segments import solve_extended_segments, solve_segments, validate_system
from abovedeg.solver import lcad, lpad

from conftest import random_graph
from test_reroute import check_cover, dense_instance

RESULTS: dict[int, tuple[bool, str]] = {}
DENSITIES = (0.15, 0.3, 0.5, 0.75)


def report(num: int, ok: bool, detail: str) -> None:
    RESULTS[num] = (ok, detail)
    print(f"ACCEPTANCE {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


class _Certificates:
    checked = 0
    bad = 0

    @classmethod
    def add(cls, g, rep, kind):
        if rep.answer:
            cls.checked += 1
            w = rep.witness
            if w is None or w.kind != kind or not verify_witness(g, w) or len(w) < rep.d + rep.k:
                cls.bad += 1


def _decision_sweep(count, two_connected):
    mismatches = 0
    instances = 0
    start = time.perf_counter()
    for seed in range(count):
        rng = random.Random(10_000 * two_connected + seed)
        n = rng.randint(3, 12)
        dens = DENSITIES[seed % len(DENSITIES)]
        if two_connected:
            g = gen_random_two_connected(n, dens, seed)
            c = brute_longest_cycle(g)
            best = len(c) if c else 0
        else:
            g = gen_random_connected(n, dens, seed)
            best = len(brute_longest_path(g))
        d = degeneracy(g)
        for k in range(1, n + 1):
            rep = lcad(g, k) if two_connected else lpad(g, k)
            _Certificates.add(g, rep, CYCLE if two_connected else PATH)
            instances += 1
            if rep.answer != (best >= d + k):
                mismatches += 1
    return mismatches, instances, time.perf_counter() - start


def test_criterion_1_paths():
    mism, inst, secs = _decision_sweep(500, False)
    ok = mism == 0 and secs < 900
    report(1, ok, f"lpad vs brute: 500 graphs, {inst} (G,k) pairs, {mism} mismatches, {secs:.1f}s")
    assert ok


def test_criterion_2_cycles():
    mism, inst, secs = _decision_sweep(500, True)
    ok = mism == 0 and secs < 900
    report(2, ok, f"lcad vs brute: 500 2-connected graphs, {inst} (G,k) pairs, {mism} mismatches, {secs:.1f}s")
    assert ok


def test_criterion_3_certificates():
    # Monte-Carlo runs on top of the exact sweeps above
    for seed in range(60):
        rng = random.Random(seed)
        n = rng.randint(6, 16)
        g = gen_random_connected(n, rng.choice(DENSITIES), seed)
        h = gen_random_two_connected(n, rng.choice(DENSITIES), seed)
        for k in (1, 2, 3):
            budget = TrialBudget(trials=30, seed=seed)
            _Certificates.add(g, lpad(g, k, budget, exact_up_to=0), PATH)
            _Certificates.add(h, lcad(h, k, budget, exact_up_to=0), CYCLE)
    ok = _Certificates.bad == 0 and _Certificates.checked > 0
    report(3, ok, f"{_Certificates.checked} yes-answers checked, {_Certificates.bad} invalid")
    assert ok


def test_criterion_4_extremal_bounds():
    path_bad = 0
    for seed in range(500):
        rng = random.Random(seed)
        g = gen_random_connected(rng.randint(1, 60), rng.choice((0.02, 0.05, 0.1, 0.3, 0.6)), seed)
        w = erdos_gallai_path(g)
        if not verify_witness(g, w) or len(w) < min(2 * g.min_degree() + 1, g.n):
            path_bad += 1
    cycle_bad = 0
    for seed in range(300):
        rng = random.Random(seed)
        g = gen_random_two_connected(rng.randint(3, 60), rng.choice((0.02, 0.05, 0.1, 0.3, 0.6)), seed)
        w = dirac_cycle(g)
        if not verify_witness(g, w) or len(w) < min(2 * g.min_degree(), g.n):
            cycle_bad += 1
    ok = path_bad == 0 and cycle_bad == 0
    report(4, ok, f"path bound violations {path_bad}/500, cycle bound violations {cycle_bad}/300")
    assert ok


def test_criterion_5_cycle_floor():
    checked = bad = 0
    for seed in range(400):
        rng = random.Random(seed)
        g = random_graph(rng.randint(3, 10), rng.choice((0.2, 0.35, 0.5, 0.7, 0.9)), seed)
        if not is_connected(g):
            continue
        d = degeneracy(g)
        if d < 2:
            continue
        checked += 1
        c = brute_longest_cycle(g)
        if c is None or len(c) < d + 1:
            bad += 1
    ok = bad == 0 and checked > 0
    report(5, ok, f"{checked} connected graphs with degeneracy >= 2, {bad} below degeneracy + 1")
    assert ok


def test_criterion_6_segments_vs_brute():
    exact = TrialBudget(exhaustive=True)
    cases = bad = 0
    for seed in range(250):
        rng = random.Random(seed)
        n = rng.randint(4, 9)
        outside = rng.randint(1, min(6, n - 1))
        g = random_graph(n, rng.choice((0.25, 0.4, 0.6)), 7 * seed + 1)
        T = frozenset(rng.sample(range(n), n - outside))
        for p in range(1, 5):
            for r in range(1, p + 1):
                for extended in (False, True):
                    fn = solve_extended_segments if extended else solve_segments
                    got = fn(g, T, p, r, exact)
                    want = brute_segments(g, T, p, r, extended)
                    cases += 1
                    if (got is None) != (want is None):
                        bad += 1
                    elif got is not None and (
                        not validate_system(g, T, got) or len(got.outside_vertices()) != p
                    ):
                        bad += 1
    ok = bad == 0
    report(6, ok, f"{cases} (G,T,p,r,kind) cases, {bad} disagreements")
    assert ok


def test_criterion_7_rerouting():
    rng = random.Random(7)
    bad = slow = 0
    worst = 0.0
    for _ in range(500):
        h, tp = dense_instance(rng)
        check_degree_condition(h, tp.k)
        start = time.perf_counter()
        paths = cover_paths(h, tp)
        took = time.perf_counter() - start
        worst = max(worst, took)
        slow += took >= 0.1
        try:
            check_cover(h, tp, paths)
        except AssertionError:
            bad += 1
    ok = bad == 0 and slow == 0
    report(7, ok, f"500 instances, {bad} invalid covers, {slow} over 100 ms (worst {1000 * worst:.1f} ms)")
    assert ok


def _recall_instances():
    """Twenty fixed yes-instances with p <= 3, found by scanning seeds."""
    specs = [(p, r, e) for p in (1, 2, 3) for r in range(1, p + 1) for e in (False, True)]
    out = []
    seed = 0
    while len(out) < 20:
        p, r, extended = specs[len(out) % len(specs)]
        rng = random.Random(seed)
        n = rng.randint(7, 10)
        g = random_graph(n, 0.2 if len(out) % 2 else 0.35, seed)
        T = frozenset(rng.sample(range(n), rng.randint(3, n - 3)))
        seed += 1
        if brute_segments(g, T, p, r, extended) is not None:
            out.append((g, T, p, r, extended))
    return out


def test_criterion_8_recall():
    worst = 50
    for g, T, p, r, extended in _recall_instances():
        fn = solve_extended_segments if extended else solve_segments
        hits = sum(fn(g, T, p, r, TrialBudget(seed=s)) is not None for s in range(50))
        worst = min(worst, hits)
    ok = worst >= 25
    report(8, ok, f"20 instances x 50 seeded runs, fewest successes {worst}/50 (need 25)")
    assert ok


def test_criterion_9_generators():
    bad = 0
    count = 0
    for i in range(100):
        eps = Fraction(1 + i % 9, 10)
        rng = random.Random(i)
        n = rng.randint(2, 6)
        base = random_graph(n, 0.5, i)
        p, _ = tight_sizes(n, eps)
        g = (gen_tight_path if i % 2 else gen_tight_cycle)(base, eps)
        d = core_decomposition(g).degeneracy
        count += 1
        if d != p - 1 or g.n != math.ceil((1 + eps) * d):
            bad += 1
        hb = path_graph(n + 1) if i % 3 else cycle_graph(n + 2)
        if degeneracy(gen_hardness_path(hb)) != hb.n - 2:
            bad += 1
    ok = bad == 0
    report(9, ok, f"{count} tight gadgets + {count} hardness gadgets, {bad} identity failures")
    assert ok


def _timed_peeling(n, m, seed):
    rng = np.random.default_rng(seed)
    # sample a little extra, drop loops and repeats, keep the first m
    raw = rng.integers(0, n, size=(int(m * 1.05) + 1000, 2))
    raw = raw[raw[:, 0] != raw[:, 1]]
    raw.sort(axis=1)
    _, first = np.unique(raw[:, 0] * n + raw[:, 1], return_index=True)
    edges = raw[np.sort(first)][:m]
    g = Graph.from_edge_array(n, edges)
    best = math.inf
    for _ in range(3):
        start = time.perf_counter()
        core_decomposition(g)
        best = min(best, time.perf_counter() - start)
    return g.m, best


def test_criterion_10_peeling_speed():
    n = 100_000
    runs = [_timed_peeling(n, m, 1) for m in (100_000, 300_000, 1_000_000)]
    (m1, t1), (m2, t2), (m3, t3) = runs
    raw = [t2 / t1, t3 / t2]
    # per-edge cost growth between steps; linear time keeps this near 1
    per_edge = [(t2 / m2) / (t1 / m1), (t3 / m3) / (t2 / m2)]
    ok = t3 < 2.0 and max(per_edge) <= 1.5
    report(
        10,
        ok,
        f"m=1e6 in {t3:.2f}s; time ratios {raw[0]:.2f}, {raw[1]:.2f}; "
        f"per-edge ratios {per_edge[0]:.2f}, {per_edge[1]:.2f} (<= 1.5)",
    )
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
