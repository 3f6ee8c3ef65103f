"""Hypothesis strategies for small graphs."""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from mdl.graph import Graph


@st.composite
def graphs(draw, min_vertices: int = 1, max_vertices: int = 9) -> Graph:
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def connected_graphs(draw, min_vertices: int = 1, max_vertices: int = 9) -> Graph:
    """A random tree (parent of i drawn from 0..i-1) plus extra edges."""
    n = draw(st.integers(min_vertices, max_vertices))
    edges = {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}
    pairs = list(itertools.combinations(range(n), 2))
    extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n)) if pairs else []
    return Graph.from_edges(n, edges | set(extra))


@st.composite
def permutations_of(draw, n: int) -> list[int]:
    return draw(st.permutations(list(range(n))))
