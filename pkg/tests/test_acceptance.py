"""Acceptance criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py -v -s`` for per-instance detail; the
terminal summary lists one PASS/FAIL line per criterion either way.
"""

from __future__ import annotations

import random
import time
from math import comb
from pathlib import Path

import pytest

from mdl.families import (
    doubly_basis_j2_construction,
    johnson,
    johnson_distance,
    kneser,
    kneser_distance,
    kneser_strong_resolving_construction,
    stahl_bounds_hold,
    subset_orbits,
    vertex_ids,
)
from mdl.graph import all_pairs_distances, complement, complete_graph, cycle_graph, path_graph, petersen_graph
from mdl.ilp import build_doubly_ilp, build_strong_ilp, read_lp, solve_exhaustive, write_lp
from mdl.independent import max_independent_set, min_vertex_cover
from mdl.resolving import (
    doubly_metric_dimension_exact,
    is_doubly_resolving_set,
    is_strong_resolving_set,
    metric_dimension_exact,
)
from mdl.strong import strong_metric_dimension_exact, strong_resolving_graph

from oracles import (
    brute_independence,
    is_connected,
    naive_beta,
    naive_beta_s,
    naive_psi,
    named_small_graphs,
    nx_distances,
    random_connected_graph,
    random_corpus,
)

FIXTURES = Path(__file__).parent / "fixtures"


def ceil_two_thirds(n: int) -> int:
    return -(-2 * n // 3)


def test_criterion_1_strong_dimension_of_johnson_graphs():
    start = time.perf_counter()
    for n in range(2, 9):
        for k in range(1, n // 2 + 1):
            res = strong_metric_dimension_exact(johnson(n, k))
            print(f"J({n},{k}): beta_S = {res.value}, C(n-1,k) = {comb(n - 1, k)}")
            assert res.optimal
            assert res.value == comb(n - 1, k)
    assert time.perf_counter() - start < 60


def test_criterion_2_table_row_kneser_7_3():
    start = time.perf_counter()
    g = kneser(7, 3)
    assert (g.n_vertices, g.n_edges) == (35, 70)
    res = strong_metric_dimension_exact(g)
    print(f"K(7,3): beta_S = {res.value} ({res.status}, {res.elapsed:.2f}s)")
    assert res.optimal and res.value == 30
    assert time.perf_counter() - start < 60


@pytest.mark.slow
@pytest.mark.parametrize("n,k,expected", [(9, 4, 115), (10, 4, 182), (11, 5, 425), (12, 5, 756)])
def test_table_rows_beyond_gate(n, k, expected):
    res = strong_metric_dimension_exact(kneser(n, k))
    print(f"K({n},{k}): beta_S = {res.value} ({res.status}, {res.elapsed:.2f}s)")
    assert res.optimal and res.value == expected


def test_criterion_3_kneser_strong_dimension_formula():
    start = time.perf_counter()
    for k in (2, 3):
        for n in range(3 * k - 1, 10):
            if n <= 2 * k:
                # K(2k,k) is disconnected; only K(5,2) onwards for k = 2
                continue
            g = kneser(n, k)
            want = comb(n, k) - n // k
            res = strong_metric_dimension_exact(g)
            s = vertex_ids(g, kneser_strong_resolving_construction(n, k))
            valid = is_strong_resolving_set(all_pairs_distances(g), s)
            print(f"K({n},{k}): beta_S = {res.value}, formula = {want}, construction |S| = {len(s)} valid = {valid}")
            assert res.optimal and res.value == want
            assert valid and len(s) == want
    assert time.perf_counter() - start < 600


def test_criterion_4_doubly_dimension_values():
    start = time.perf_counter()
    cases = [("J", n) for n in range(4, 9)] + [("K", n) for n in range(5, 9)]
    for fam, n in cases:
        g = johnson(n, 2) if fam == "J" else kneser(n, 2)
        res = doubly_metric_dimension_exact(g, vertex_transitive=True, orbits=subset_orbits(g))
        want = 3 if (fam, n) == ("K", 5) else ceil_two_thirds(n)
        ok = is_doubly_resolving_set(all_pairs_distances(g), res.certificate)
        print(f"psi({fam}({n},2)) = {res.value} ({res.status}), expected {want}")
        assert res.optimal and res.value == want and ok

    # larger n: explicit construction gives psi <= ceil(2n/3), and
    # beta = ceil(2n/3) gives psi >= beta, pinning psi exactly
    for fam in ("J", "K"):
        for n in range(9, 15):
            g = johnson(n, 2) if fam == "J" else kneser(n, 2)
            dm = all_pairs_distances(g)
            s = vertex_ids(g, doubly_basis_j2_construction(n))
            assert len(s) == ceil_two_thirds(n)
            assert is_doubly_resolving_set(dm, s)
            beta = metric_dimension_exact(g, vertex_transitive=True, orbits=subset_orbits(g), dm=dm)
            print(f"{fam}({n},2): |construction| = {len(s)} doubly resolving, beta = {beta.value} ({beta.status})")
            assert beta.optimal, f"{fam}({n},2): beta search hit the node budget"
            assert beta.value == ceil_two_thirds(n)
    assert time.perf_counter() - start < 1200


def test_criterion_5_distance_formulas_against_bfs():
    start = time.perf_counter()
    bad = 0
    pairs = 0
    for k in range(1, 6):
        for n in range(2 * k + 1, 13):
            g = kneser(n, k)
            d = nx_distances(g)
            labels = g.labels
            for v in range(g.n_vertices):
                for u in range(v):
                    pairs += 1
                    dist = d[u][v]
                    if kneser_distance(labels[u], labels[v], n, k) != dist:
                        bad += 1
                    if not stahl_bounds_hold(labels[u].intersection_size(labels[v]), dist, n, k):
                        bad += 1
    for k in range(1, 6):
        for n in range(2 * k, 11):
            g = johnson(n, k)
            d = nx_distances(g)
            labels = g.labels
            for v in range(g.n_vertices):
                for u in range(v):
                    pairs += 1
                    if johnson_distance(labels[u], labels[v], k) != d[u][v]:
                        bad += 1
    print(f"{pairs} vertex pairs checked, {bad} mismatches")
    assert bad == 0
    assert time.perf_counter() - start < 300


def _labelled_edges(g):
    return {frozenset((g.labels[u], g.labels[v])) for u, v in g.edges}


def test_criterion_6_strong_resolving_graph_identities():
    mismatches = 0
    count = 0
    for k in range(1, 6):
        n = 2 * k
        while comb(n, k) <= 252:
            sr = strong_resolving_graph(johnson(n, k)).sr
            count += 1
            if _labelled_edges(sr) != _labelled_edges(kneser(n, k)):
                mismatches += 1
                print(f"J({n},{k})_SR differs from K({n},{k})")
            n += 1
    for k in range(2, 6):
        n = max(3 * k - 1, 2 * k + 1)
        while comb(n, k) <= 252:
            g = kneser(n, k)
            sr = strong_resolving_graph(g).sr
            count += 1
            if _labelled_edges(sr) != _labelled_edges(complement(g)):
                mismatches += 1
                print(f"K({n},{k})_SR differs from the complement of K({n},{k})")
            n += 1
    # k = 1: K(n,1) is complete, so its strong resolving graph is complete too
    for n in range(3, 12):
        assert strong_resolving_graph(kneser(n, 1)).sr.n_edges == comb(n, 2)
    print(f"{count} labelled identities checked, {mismatches} mismatches")
    assert mismatches == 0


def test_criterion_7_cover_independence_identity_and_kneser_independence():
    rng = random.Random(7)
    for i in range(200):
        n = rng.randint(2, 14)
        g = random_connected_graph(rng, n, rng.choice((0.1, 0.25, 0.4, 0.6)))
        alpha = brute_independence(g)
        mis = max_independent_set(g)
        vc = min_vertex_cover(g)
        assert mis.optimal and mis.value == alpha, f"graph {i}: ind {mis.value} != {alpha}"
        assert vc.optimal and vc.value == n - alpha, f"graph {i}: vc {vc.value} != {n - alpha}"
    for n in range(2, 10):
        for k in range(1, n // 2 + 1):
            res = max_independent_set(kneser(n, k))
            print(f"ind(K({n},{k})) = {res.value}, C(n-1,k-1) = {comb(n - 1, k - 1)}")
            assert res.optimal and res.value == comb(n - 1, k - 1)


def _ilp_corpus():
    graphs = [g for g in named_small_graphs(8).values() if g.n_vertices >= 2]
    graphs += [g for g in random_corpus() if g.n_vertices >= 2 and is_connected(g)]
    return graphs


def test_criterion_8_ilp_models_match_dimensions():
    graphs = _ilp_corpus()
    for g in graphs:
        dm = all_pairs_distances(g)
        d = dm.rows()
        strong = build_strong_ilp(dm)
        doubly = build_doubly_ilp(dm)
        for model in (strong, doubly):
            assert read_lp(write_lp(model)) == model
        assert solve_exhaustive(strong)[0] == naive_beta_s(d), g.edges
        assert solve_exhaustive(doubly)[0] == naive_psi(d), g.edges
    print(f"{len(graphs)} corpus graphs: ILP optima equal beta_S and psi")

    golden = {
        "path3_strong.lp": (path_graph(3), build_strong_ilp),
        "path3_doubly.lp": (path_graph(3), build_doubly_ilp),
        "triangle_strong.lp": (complete_graph(3), build_strong_ilp),
        "c4_doubly.lp": (cycle_graph(4), build_doubly_ilp),
        "j42_strong.lp": (johnson(4, 2), build_strong_ilp),
        "petersen_strong.lp": (petersen_graph(), build_strong_ilp),
        "path12_doubly.lp": (path_graph(12), build_doubly_ilp),
    }
    for name, (g, build) in golden.items():
        expected = (FIXTURES / name).read_bytes()
        model = build(all_pairs_distances(g))
        assert write_lp(model).encode() == expected, name
        assert read_lp(expected.decode()) == model, name


def test_criterion_9_solvers_against_subset_enumeration():
    start = time.perf_counter()
    graphs = list(named_small_graphs(10).values())
    graphs += [g for g in random_corpus() if is_connected(g)]
    for g in graphs:
        d = nx_distances(g)
        assert metric_dimension_exact(g).value == naive_beta(d), g.edges
        assert strong_metric_dimension_exact(g).value == naive_beta_s(d), g.edges
        if g.n_vertices >= 2:
            assert doubly_metric_dimension_exact(g).value == naive_psi(d), g.edges
    print(f"{len(graphs)} graphs: beta, beta_S, psi equal subset enumeration")
    assert time.perf_counter() - start < 600


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
