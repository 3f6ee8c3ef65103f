import random

import pytest
from hypothesis import given, settings

from mdl.families import kneser
from mdl.graph import Graph, complete_graph, cycle_graph, empty_graph, petersen_graph
from mdl.independent import (
    clique_cover_bound,
    components,
    greedy_independent_set,
    improve_independent_set,
    max_independent_set,
    min_vertex_cover,
    spectral_bound,
    theta_bound,
)
from mdl.search import Status

from oracles import brute_independence, random_graph
from strategies import graphs


def is_independent(g, s):
    return all(not g.has_edge(u, v) for u in s for v in s if u < v)


def covers(g, s):
    return all(u in s or v in s for u, v in g.edges)


@given(graphs(max_vertices=12))
def test_max_independent_set_matches_brute_force(g):
    res = max_independent_set(g)
    assert res.optimal and res.value == brute_independence(g)
    assert is_independent(g, res.certificate) and len(res.certificate) == res.value


@given(graphs(max_vertices=12))
def test_cover_plus_independence_is_vertex_count(g):
    core = [v for v in range(g.n_vertices) if g.degree(v)]
    h = g.induced(core)
    vc = min_vertex_cover(h)
    assert vc.value == h.n_vertices - brute_independence(h)
    assert covers(h, vc.certificate)


@given(graphs(max_vertices=12))
def test_vertex_cover_ignores_isolated_vertices(g):
    vc = min_vertex_cover(g)
    assert covers(g, vc.certificate)
    assert all(g.degree(v) for v in vc.certificate)


@given(graphs(max_vertices=11))
def test_heuristics_and_bounds_bracket_the_optimum(g):
    alpha = brute_independence(g)
    s = greedy_independent_set(list(g.adj))
    t = improve_independent_set(list(g.adj), s, rounds=20)
    assert is_independent(g, s) and is_independent(g, t) and len(s) <= len(t) <= alpha
    assert clique_cover_bound(list(g.adj)) >= alpha
    assert spectral_bound(list(g.adj)) >= alpha


@settings(max_examples=10)
@given(graphs(min_vertices=4, max_vertices=10))
def test_theta_bound_is_valid(g):
    bound = theta_bound(list(g.adj))
    assert bound is None or bound >= brute_independence(g)


@pytest.mark.parametrize("n,k,expected", [(7, 3, 15), (8, 3, 21), (9, 4, 56), (10, 4, 84)])
def test_spectral_bound_closes_kneser_graphs(n, k, expected):
    g = kneser(n, k)
    assert spectral_bound(list(g.adj)) == expected
    res = max_independent_set(g)
    assert res.optimal and res.value == expected and res.nodes_explored == 0


def test_theta_on_the_petersen_graph():
    assert theta_bound(list(petersen_graph().adj)) == 4


def test_components():
    g = Graph.from_edges(5, [(0, 1), (3, 4)])
    assert components(list(g.adj)) == [[0, 1], [2], [3, 4]]


def test_simple_families():
    assert max_independent_set(complete_graph(5)).value == 1
    assert max_independent_set(empty_graph(4)).value == 4
    assert max_independent_set(cycle_graph(7)).value == 3
    assert min_vertex_cover(empty_graph(3)).value == 0


def test_budget_exhaustion_keeps_valid_bounds():
    rng = random.Random(3)
    g = random_graph(rng, 60, 0.1)
    res = max_independent_set(g, budget=3, use_theta=False)
    assert is_independent(g, res.certificate)
    if res.status is Status.UPPER_BOUND_ONLY:
        assert res.value <= res.upper_bound
        vc = min_vertex_cover(g, budget=3, use_theta=False)
        assert covers(g, vc.certificate) and vc.lower_bound <= vc.value
