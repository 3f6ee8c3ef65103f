"""Resolving, strong resolving and doubly resolving sets.

Checkers work straight from the definitions on a :class:`DistanceMatrix`.
The exact solvers reduce to minimum set cover over unordered vertex pairs
(see :mod:`mdl.search`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Optional

import numpy as np

from .graph import DisconnectedGraphError, DistanceMatrix, Graph, all_pairs_distances
from .search import (
    Budget,
    BudgetExceeded,
    Orbits,
    SolveResult,
    Status,
    Timer,
    cover_of_size,
    greedy_cover,
    min_set_cover,
)

Mode = Literal["strong", "doubly"]


def vertex_pairs(n: int) -> list[tuple[int, int]]:
    """Unordered pairs ``(u, v)``, ``u < v``, in colex order."""
    return [(u, v) for v in range(n) for u in range(v)]


# -- checkers ----------------------------------------------------------------


def is_resolving_set(dm: DistanceMatrix, s: Iterable[int]) -> bool:
    dm.require_connected()
    cols = sorted(set(s))
    if dm.n <= 1:
        return True
    if not cols:
        return False
    # distinct distance vectors <=> every pair is resolved by some member
    return len(np.unique(dm.d[:, cols], axis=0)) == dm.n


def strongly_resolves(dm: DistanceMatrix, w: int, u: int, v: int) -> bool:
    """True if ``v`` lies on a shortest u-w path or ``u`` on a shortest v-w path."""
    d = dm.d
    return bool(d[u, w] == d[u, v] + d[v, w] or d[v, w] == d[v, u] + d[u, w])


def _strong_coverage(dm: DistanceMatrix, s: Iterable[int]) -> np.ndarray:
    d = dm.d
    covered = np.zeros((dm.n, dm.n), dtype=bool)
    for w in s:
        col = d[:, w]
        hit = col[:, None] == d + col[None, :]
        covered |= hit | hit.T
    return covered


def is_strong_resolving_set(dm: DistanceMatrix, s: Iterable[int]) -> bool:
    dm.require_connected()
    covered = _strong_coverage(dm, set(s))
    np.fill_diagonal(covered, True)
    return bool(covered.all())


def doubly_resolves(dm: DistanceMatrix, x: int, y: int, u: int, v: int) -> bool:
    d = dm.d
    return bool(d[u, x] - d[u, y] != d[v, x] - d[v, y])


def is_doubly_resolving_set(dm: DistanceMatrix, ds: Iterable[int]) -> bool:
    """Every pair u != v is doubly resolved by two members of ``ds``.

    Equivalently, the vectors ``(d(u,x) - d(u,x0))_{x in D}`` are pairwise
    distinct for any fixed ``x0 in D``.
    """
    dm.require_connected()
    cols = sorted(set(ds))
    if len(cols) < 2:
        raise ValueError("a doubly resolving set needs at least two vertices")
    diffs = dm.d[:, cols[1:]] - dm.d[:, [cols[0]]]
    return len(np.unique(diffs, axis=0)) == dm.n


# -- constraint systems ------------------------------------------------------


@dataclass(frozen=True)
class ConstraintSystem:
    """Pairs to be resolved and, for each, the vertices (strong mode) or
    vertex pairs ``(i, j)``, ``i < j`` (doubly mode) that resolve it."""

    mode: Mode
    n: int
    items: tuple[tuple[int, int], ...]
    coverers: tuple[frozenset, ...]

    def coverer_masks(self) -> list[int]:
        if self.mode != "strong":
            raise ValueError("vertex masks only exist for the strong system")
        out = []
        for cov in self.coverers:
            m = 0
            for i in cov:
                m |= 1 << i
            out.append(m)
        return out


def build_constraint_system(dm: DistanceMatrix, mode: Mode) -> ConstraintSystem:
    dm.require_connected()
    d = dm.rows()
    n = dm.n
    items = vertex_pairs(n)
    coverers = []
    if mode == "strong":
        for u, v in items:
            duv = d[u][v]
            coverers.append(frozenset(
                i for i in range(n)
                if d[u][i] == duv + d[v][i] or d[v][i] == duv + d[u][i]
            ))
    elif mode == "doubly":
        for u, v in items:
            diff = [d[u][i] - d[v][i] for i in range(n)]
            coverers.append(frozenset(
                (i, j) for i, j in items if diff[i] != diff[j]
            ))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return ConstraintSystem(mode, n, tuple(items), tuple(coverers))


# -- exact solvers -----------------------------------------------------------


def _distances(g: Graph) -> DistanceMatrix:
    dm = all_pairs_distances(g)
    if not dm.connected:
        raise DisconnectedGraphError("graph is disconnected")
    return dm


def resolver_masks(dm: DistanceMatrix) -> list[int]:
    """For each pair in :func:`vertex_pairs` order, the vertices resolving it."""
    n = dm.n
    d = dm.rows()
    full = (1 << n) - 1
    # level[u][t]: vertices at distance t from u
    levels = []
    for u in range(n):
        lv: dict[int, int] = {}
        for w, t in enumerate(d[u]):
            lv[t] = lv.get(t, 0) | 1 << w
        levels.append(lv)
    out = []
    for u, v in vertex_pairs(n):
        lu, lv = levels[u], levels[v]
        same = 0
        for t, m in lu.items():
            other = lv.get(t)
            if other:
                same |= m & other
        out.append(full & ~same)
    return out


def doubly_masks(dm: DistanceMatrix, x0: int) -> list[int]:
    """With ``x0`` in the set, the vertices x that together with x0 doubly
    resolve each pair (pairs in :func:`vertex_pairs` order)."""
    n = dm.n
    d = dm.d
    full = (1 << n) - 1
    weights = 1 << np.arange(n, dtype=object)
    out = []
    for u, v in vertex_pairs(n):
        diff = d[u] - d[v]
        same = diff == diff[x0]
        out.append(full & ~int(weights[same].sum()))
    return out


def metric_dimension_exact(
    g: Graph,
    budget: Optional[int | Budget] = None,
    *,
    vertex_transitive: bool = False,
    dm: Optional[DistanceMatrix] = None,
    orbits: Optional[Orbits] = None,
) -> SolveResult:
    """Minimum resolving set.

    ``vertex_transitive=True`` is a promise from the caller (true for Johnson
    and Kneser graphs); the search then puts vertex 0 in the set up front.
    ``orbits`` describes further automorphisms (see
    :func:`mdl.families.subset_orbits`) and requires ``vertex_transitive``.
    """
    timer = Timer()
    dm = dm or _distances(g)
    dm.require_connected()
    n = g.n_vertices
    if n <= 1:
        return SolveResult(0, frozenset(), 0, timer(), Status.OPTIMAL, lower_bound=0)
    budget = budget if isinstance(budget, Budget) else Budget(budget)
    if orbits is not None and not vertex_transitive:
        raise ValueError("orbit branching assumes a vertex-transitive graph")
    forced = (0,) if vertex_transitive else ()
    return min_set_cover(
        resolver_masks(dm), n, forced=forced, lower=1, budget=budget, timer=timer, orbits=orbits
    )


def doubly_metric_dimension_exact(
    g: Graph,
    budget: Optional[int | Budget] = None,
    *,
    vertex_transitive: bool = False,
    dm: Optional[DistanceMatrix] = None,
    beta: Optional[SolveResult] = None,
    orbits: Optional[Orbits] = None,
) -> SolveResult:
    """Minimum doubly resolving set.

    Starts from the metric dimension as lower bound (every doubly resolving
    set resolves). For each reference vertex ``x0`` in ascending order the
    remaining choice is a set cover; references tried earlier are excluded
    afterwards.
    """
    timer = Timer()
    dm = dm or _distances(g)
    dm.require_connected()
    n = g.n_vertices
    if n < 2:
        raise ValueError("doubly metric dimension needs at least two vertices")
    if orbits is not None and not vertex_transitive:
        raise ValueError("orbit branching assumes a vertex-transitive graph")
    budget = budget if isinstance(budget, Budget) else Budget(budget)
    start_nodes = budget.spent
    if beta is None:
        beta = metric_dimension_exact(g, budget, vertex_transitive=vertex_transitive, dm=dm, orbits=orbits)
    lower = max(2, beta.lower_bound or 0)

    refs = [0] if vertex_transitive else list(range(n))
    masks = {x0: doubly_masks(dm, x0) for x0 in refs[:1]}
    items_all = list(range(n * (n - 1) // 2))

    x0 = refs[0]
    mask0 = masks[x0]
    pending = [i for i in items_all if not mask0[i] >> x0 & 1]
    avail0 = ((1 << n) - 1) & ~(1 << x0)
    incumbent = [x0, *greedy_cover(mask0, pending, avail0)]

    size = lower
    try:
        while size < len(incumbent):
            found = None
            excluded = 0
            for x0 in refs:
                if x0 not in masks:
                    masks[x0] = doubly_masks(dm, x0)
                cov = masks[x0]
                avail = ((1 << n) - 1) & ~excluded & ~(1 << x0)
                found = cover_of_size(
                    cov, size - 1, items_all, avail, budget, chosen=[x0], orbits=orbits
                )
                if found is not None:
                    found = [x0, *found]
                    break
                excluded |= 1 << x0
            if found is not None:
                incumbent = found
                break
            size += 1
    except BudgetExceeded:
        return SolveResult(
            len(incumbent), frozenset(incumbent), budget.spent - start_nodes, timer(),
            Status.UPPER_BOUND_ONLY, lower_bound=size,
        )
    return SolveResult(
        len(incumbent), frozenset(incumbent), budget.spent - start_nodes, timer(),
        Status.OPTIMAL, lower_bound=len(incumbent),
    )
