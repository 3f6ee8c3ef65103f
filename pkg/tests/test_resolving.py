import itertools

import pytest
from hypothesis import given, strategies as st

from mdl.families import johnson, kneser, subset_orbits
from mdl.graph import DisconnectedGraphError, all_pairs_distances, empty_graph, path_graph, petersen_graph
from mdl.resolving import (
    build_constraint_system,
    doubly_masks,
    doubly_metric_dimension_exact,
    doubly_resolves,
    is_doubly_resolving_set,
    is_resolving_set,
    is_strong_resolving_set,
    metric_dimension_exact,
    resolver_masks,
    strongly_resolves,
    vertex_pairs,
)
from mdl.search import Status

from oracles import (
    doubly_resolves_all,
    naive_beta,
    naive_beta_s,
    naive_psi,
    resolves_all,
    strong_resolves_all,
)
from strategies import connected_graphs


def test_vertex_pairs_colex():
    assert vertex_pairs(4) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


@given(connected_graphs(max_vertices=7), st.data())
def test_checkers_agree_with_definitions(g, data):
    dm = all_pairs_distances(g)
    d = dm.rows()
    s = data.draw(st.sets(st.integers(0, g.n_vertices - 1)))
    assert is_resolving_set(dm, s) == (g.n_vertices <= 1 or (bool(s) and resolves_all(d, s)))
    assert is_strong_resolving_set(dm, s) == strong_resolves_all(d, s)
    if len(s) >= 2:
        assert is_doubly_resolving_set(dm, s) == doubly_resolves_all(d, sorted(s))


@given(connected_graphs(max_vertices=8), st.data())
def test_set_hierarchy(g, data):
    """doubly resolving and strong resolving sets both resolve."""
    dm = all_pairs_distances(g)
    s = data.draw(st.sets(st.integers(0, g.n_vertices - 1), min_size=min(2, g.n_vertices)))
    if len(s) >= 2 and is_doubly_resolving_set(dm, s):
        assert is_resolving_set(dm, s)
    if is_strong_resolving_set(dm, s) and g.n_vertices > 1:
        assert is_resolving_set(dm, s)


@given(connected_graphs(max_vertices=8))
def test_whole_vertex_set_resolves_every_way(g):
    dm = all_pairs_distances(g)
    everything = range(g.n_vertices)
    assert is_resolving_set(dm, everything)
    assert is_strong_resolving_set(dm, everything)
    if g.n_vertices >= 2:
        assert is_doubly_resolving_set(dm, everything)


def test_pair_predicates_on_a_path():
    dm = all_pairs_distances(path_graph(4))
    assert strongly_resolves(dm, 3, 0, 1)
    assert not strongly_resolves(dm, 1, 0, 2)
    assert doubly_resolves(dm, 0, 3, 1, 2)
    assert not doubly_resolves(dm, 0, 1, 2, 3)


def test_checkers_refuse_disconnected_graphs():
    dm = all_pairs_distances(empty_graph(3))
    for check in (is_resolving_set, is_strong_resolving_set, is_doubly_resolving_set):
        with pytest.raises(DisconnectedGraphError):
            check(dm, [0, 1])
    with pytest.raises(DisconnectedGraphError):
        metric_dimension_exact(empty_graph(2))
    with pytest.raises(ValueError):
        is_doubly_resolving_set(all_pairs_distances(path_graph(3)), [1])


@given(connected_graphs(max_vertices=7))
def test_masks_match_constraint_system(g):
    dm = all_pairs_distances(g)
    n = g.n_vertices
    d = dm.rows()
    for (u, v), mask in zip(vertex_pairs(n), resolver_masks(dm)):
        assert mask == sum(1 << w for w in range(n) if d[u][w] != d[v][w])
    if n >= 2:
        doubly = build_constraint_system(dm, "doubly")
        for x0 in range(n):
            for (u, v), cov, mask in zip(doubly.items, doubly.coverers, doubly_masks(dm, x0)):
                assert mask == sum(1 << x for x in range(n) if (min(x, x0), max(x, x0)) in cov)


def test_constraint_system_modes():
    dm = all_pairs_distances(path_graph(3))
    strong = build_constraint_system(dm, "strong")
    assert strong.coverer_masks() == [0b111, 0b101, 0b111]
    with pytest.raises(ValueError):
        build_constraint_system(dm, "doubly").coverer_masks()
    with pytest.raises(ValueError):
        build_constraint_system(dm, "weak")


@given(connected_graphs(max_vertices=8))
def test_exact_solvers_match_enumeration(g):
    d = all_pairs_distances(g).rows()
    beta = metric_dimension_exact(g)
    assert beta.optimal and beta.value == naive_beta(d)
    assert is_resolving_set(all_pairs_distances(g), beta.certificate) or g.n_vertices <= 1
    if g.n_vertices >= 2:
        psi = doubly_metric_dimension_exact(g)
        assert psi.optimal and psi.value == naive_psi(d)
        assert is_doubly_resolving_set(all_pairs_distances(g), psi.certificate)
        assert psi.value >= beta.value


@pytest.mark.parametrize("family,n", [("J", n) for n in range(4, 9)] + [("K", n) for n in range(5, 9)])
def test_symmetry_reductions_keep_the_optimum(family, n):
    g = johnson(n, 2) if family == "J" else kneser(n, 2)
    plain_beta = metric_dimension_exact(g)
    fast_beta = metric_dimension_exact(g, vertex_transitive=True, orbits=subset_orbits(g))
    assert plain_beta.value == fast_beta.value
    plain_psi = doubly_metric_dimension_exact(g, beta=plain_beta)
    fast_psi = doubly_metric_dimension_exact(g, vertex_transitive=True, orbits=subset_orbits(g))
    assert plain_psi.value == fast_psi.value
    assert is_doubly_resolving_set(all_pairs_distances(g), fast_psi.certificate)


def test_symmetry_reductions_on_k3_subsets():
    g = johnson(6, 3)
    assert metric_dimension_exact(g).value == metric_dimension_exact(
        g, vertex_transitive=True, orbits=subset_orbits(g)
    ).value


def test_orbits_need_vertex_transitivity():
    g = johnson(5, 2)
    with pytest.raises(ValueError):
        metric_dimension_exact(g, orbits=subset_orbits(g))


def test_known_values():
    assert metric_dimension_exact(path_graph(5)).value == 1
    assert metric_dimension_exact(petersen_graph()).value == 3
    assert doubly_metric_dimension_exact(path_graph(5)).value == 2
    assert metric_dimension_exact(johnson(7, 2), vertex_transitive=True).value == 5
    assert doubly_metric_dimension_exact(kneser(5, 2)).value == 3
    assert metric_dimension_exact(path_graph(1)).value == 0
    with pytest.raises(ValueError):
        doubly_metric_dimension_exact(path_graph(1))


def test_budget_exhaustion_reports_bounds():
    g = johnson(10, 2)
    res = metric_dimension_exact(g, budget=5)
    assert res.status is Status.UPPER_BOUND_ONLY
    assert res.lower_bound <= 7 <= res.value
    assert is_resolving_set(all_pairs_distances(g), res.certificate)
    psi = doubly_metric_dimension_exact(g, budget=5)
    assert psi.status is Status.UPPER_BOUND_ONLY
    assert is_doubly_resolving_set(all_pairs_distances(g), psi.certificate)
