"""Exact maximum independent set and minimum vertex cover.

Maximum independent sets are found as maximum cliques of the complement with
a bitset branch and bound: vertices are ordered by degree, and greedy
sequential colouring of the complement (i.e. a cover of the candidate set by
cliques of the graph) bounds every branch. Each connected component is solved
separately. Before branching, a local-search incumbent is compared with two
root bounds, the clique cover and (for larger components) the Lovász theta
number, which closes symmetric instances such as Kneser graphs where the
colouring bound alone is loose.
"""

from __future__ import annotations

import logging
import random
from typing import Optional, Sequence

import numpy as np

from .graph import Graph
from .search import Budget, BudgetExceeded, SolveResult, Status, Timer
from .subsets import iter_bits

log = logging.getLogger(__name__)

#: Components at least this large get the spectral / theta bounds at the root.
ROOT_BOUND_MIN_VERTICES = 20
#: The theta SDP is skipped above this size.
THETA_MAX_VERTICES = 160


class _Found(Exception):
    """Incumbent reached a proven upper bound."""


def components(adj: Sequence[int]) -> list[list[int]]:
    n = len(adj)
    unseen = (1 << n) - 1
    out = []
    while unseen:
        root = (unseen & -unseen).bit_length() - 1
        comp = frontier = 1 << root
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        unseen &= ~comp
        out.append(list(iter_bits(comp)))
    return out


def _local(adj: Sequence[int], vertices: Sequence[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(vertices)}
    out = []
    for v in vertices:
        m = 0
        for w in iter_bits(adj[v]):
            m |= 1 << pos[w]
        out.append(m)
    return out


# -- heuristics and bounds ---------------------------------------------------


def greedy_independent_set(adj: Sequence[int]) -> list[int]:
    """Repeatedly take a minimum-degree vertex of the remaining graph."""
    remaining = (1 << len(adj)) - 1
    chosen = []
    while remaining:
        v = min(iter_bits(remaining), key=lambda x: ((adj[x] & remaining).bit_count(), x))
        chosen.append(v)
        remaining &= ~adj[v] & ~(1 << v)
    return chosen


def improve_independent_set(
    adj: Sequence[int], start: Sequence[int], rounds: int = 200, seed: int = 0
) -> list[int]:
    """Iterated local search with (1,2)-swaps and random perturbation."""
    n = len(adj)
    rng = random.Random(seed)
    full = (1 << n) - 1

    def free_vertices(sol: int) -> int:
        blocked = sol
        for v in iter_bits(sol):
            blocked |= adj[v]
        return full & ~blocked

    def one_two_swaps(sol: int) -> int:
        improved = True
        while improved:
            improved = False
            free = free_vertices(sol)
            while free:
                v = (free & -free).bit_length() - 1
                sol |= 1 << v
                free &= ~adj[v] & ~(1 << v)
            for x in iter_bits(sol):
                # vertices whose only solution neighbour is x
                rest = sol & ~(1 << x)
                cand = adj[x] & ~sol
                tight1 = 0
                for u in iter_bits(cand):
                    if not adj[u] & rest:
                        tight1 |= 1 << u
                for u in iter_bits(tight1):
                    others = tight1 & ~adj[u] & ~(1 << u)
                    if others:
                        w = (others & -others).bit_length() - 1
                        sol = rest | (1 << u) | (1 << w)
                        improved = True
                        break
                if improved:
                    break
        return sol

    best = 0
    for v in start:
        best |= 1 << v
    best = one_two_swaps(best)
    current = best
    for _ in range(rounds):
        if best.bit_count() == n:
            break
        # force in a random outside vertex, evict its neighbours, re-optimise
        outside = list(iter_bits(full & ~current))
        if not outside:
            break
        v = rng.choice(outside)
        current = (current & ~adj[v]) | (1 << v)
        current = one_two_swaps(current)
        if current.bit_count() > best.bit_count():
            best = current
        elif current.bit_count() < best.bit_count() - 1:
            current = best
    return list(iter_bits(best))


def clique_cover_bound(adj: Sequence[int]) -> int:
    """Number of cliques in a greedy clique cover (an upper bound on ind)."""
    remaining = (1 << len(adj)) - 1
    count = 0
    while remaining:
        q = remaining
        while q:
            v = (q & -q).bit_length() - 1
            remaining &= ~(1 << v)
            q &= adj[v]
        count += 1
    return count


def _edge_lists(adj: Sequence[int]) -> tuple[list[int], list[int]]:
    rows, cols = [], []
    for u in range(len(adj)):
        for v in iter_bits(adj[u] >> (u + 1) << (u + 1)):
            rows.append(u)
            cols.append(v)
    return rows, cols


def _lambda_max_bound(n: int, rows: list[int], cols: list[int], weights) -> float:
    """``lambda_max(J - Y)`` with ``Y[u,v] = Y[v,u] = weight`` on each edge.

    For an independent set S with indicator x, ``x'(J - Y)x = |S|^2`` and
    ``x'x = |S|``, so this is an upper bound on ind for any weights.
    """
    m = np.ones((n, n))
    m[rows, cols] -= weights
    m[cols, rows] -= weights
    return float(np.linalg.eigvalsh(m)[-1])


def spectral_bound(adj: Sequence[int]) -> int:
    """Best bound over uniform edge weights ``Y = t * A`` (Hoffman-type).

    Tight for Kneser graphs, where it reproduces the Erdős–Ko–Rado value.
    """
    from scipy.optimize import minimize_scalar

    n = len(adj)
    rows, cols = _edge_lists(adj)
    if not rows:
        return n
    a = np.zeros((n, n))
    a[rows, cols] = a[cols, rows] = 1.0
    ones = np.ones((n, n))

    def f(t: float) -> float:
        return float(np.linalg.eigvalsh(ones - t * a)[-1])

    hi = float(n)
    res = minimize_scalar(f, bounds=(0.0, hi), method="bounded", options={"xatol": 1e-9})
    best = min(f(0.0), res.fun)
    return int(np.floor(best + 1e-6))


def theta_bound(adj: Sequence[int]) -> Optional[int]:
    """Integer upper bound on ind from the Lovász theta SDP.

    The SDP (solved with SCS) only proposes edge weights; the returned bound
    is the exact eigenvalue of the resulting fixed matrix, so it is valid
    whatever the solver accuracy. Returns ``None`` if the SDP fails.
    """
    n = len(adj)
    rows, cols = _edge_lists(adj)
    if not rows:
        return n
    try:
        import cvxpy as cp

        x = cp.Variable((n, n), PSD=True)
        edge_zero = x[rows, cols] == 0
        prob = cp.Problem(cp.Maximize(cp.sum(x)), [cp.trace(x) == 1, edge_zero])
        prob.solve(solver=cp.SCS)
        y = edge_zero.dual_value
    except Exception as exc:  # solver missing or numerical failure
        log.warning("theta bound unavailable: %s", exc)
        return None
    if y is None:
        return None
    # each upper-triangle multiplier is shared by the two symmetric entries
    best = min(_lambda_max_bound(n, rows, cols, s * np.asarray(y) / 2) for s in (1, -1))
    return int(np.floor(best + 1e-6))


# -- exact search ------------------------------------------------------------


def _max_clique(cadj: list[int], best: list[int], cap: int, budget: Budget) -> tuple[list[int], bool]:
    """Maximum clique in the graph ``cadj`` (bit i = vertex i), starting
    from incumbent ``best``; stops early once ``cap`` is reached.

    Returns the best clique and whether the search completed within budget.
    """
    best = list(best)
    current: list[int] = []

    def expand(p: int) -> None:
        budget.tick()
        # greedy colouring: colour classes are independent in cadj
        order = []
        colours = []
        u = p
        colour = 0
        while u:
            colour += 1
            q = u
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~cadj[v] & ~(1 << v)
                u &= ~(1 << v)
                order.append(v)
                colours.append(colour)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + colours[idx] <= len(best):
                return
            v = order[idx]
            current.append(v)
            newp = p & cadj[v]
            if newp:
                expand(newp)
            elif len(current) > len(best):
                best[:] = current
                if len(best) >= cap:
                    raise _Found
            current.pop()
            p &= ~(1 << v)

    try:
        expand((1 << len(cadj)) - 1)
    except _Found:
        pass
    except BudgetExceeded:
        return best, False
    return best, True


def _solve_component(adj: list[int], budget: Budget, use_theta: bool) -> tuple[list[int], int, bool]:
    """Returns ``(independent set, proven upper bound, optimal?)`` in local ids."""
    n = len(adj)
    incumbent = improve_independent_set(adj, greedy_independent_set(adj))
    cap = clique_cover_bound(adj)
    if len(incumbent) < cap and use_theta and n >= ROOT_BOUND_MIN_VERTICES:
        cap = min(cap, spectral_bound(adj))
        if len(incumbent) < cap and n <= THETA_MAX_VERTICES:
            theta = theta_bound(adj)
            if theta is not None:
                cap = min(cap, theta)
    if len(incumbent) >= cap:
        return incumbent, cap, True

    # relabel so that bit order = ascending degree (descending in the complement)
    order = sorted(range(n), key=lambda v: (adj[v].bit_count(), v))
    pos = {v: i for i, v in enumerate(order)}
    full = (1 << n) - 1
    cadj = []
    for v in order:
        m = 0
        for w in iter_bits(full & ~adj[v] & ~(1 << v)):
            m |= 1 << pos[w]
        cadj.append(m)
    start = [pos[v] for v in incumbent]
    found, complete = _max_clique(cadj, start, cap, budget)
    found = [order[i] for i in found]
    if not complete:
        return found, cap, False
    return found, len(found), True


def max_independent_set(
    g: Graph, budget: Optional[int | Budget] = None, *, use_theta: bool = True
) -> SolveResult:
    timer = Timer()
    budget = budget if isinstance(budget, Budget) else Budget(budget)
    start_nodes = budget.spent
    chosen: list[int] = []
    upper = 0
    optimal = True
    for comp in components(g.adj):
        if len(comp) == 1:
            chosen.append(comp[0])
            upper += 1
            continue
        local = _local(g.adj, comp)
        found, cap, ok = _solve_component(local, budget, use_theta and optimal)
        chosen += [comp[i] for i in found]
        upper += cap
        optimal = optimal and ok
        if not ok:
            use_theta = False
    status = Status.OPTIMAL if optimal else Status.UPPER_BOUND_ONLY
    return SolveResult(
        len(chosen), frozenset(chosen), budget.spent - start_nodes, timer(), status,
        lower_bound=len(chosen), upper_bound=upper if not optimal else len(chosen),
    )


def min_vertex_cover(g: Graph, budget: Optional[int | Budget] = None, *, use_theta: bool = True) -> SolveResult:
    """Minimum vertex cover as the complement of a maximum independent set of
    the graph with isolated vertices removed (isolated vertices cover nothing)."""
    timer = Timer()
    core = [v for v in range(g.n_vertices) if g.adj[v]]
    mis = max_independent_set(g.induced(core), budget, use_theta=use_theta)
    cover = frozenset(core) - frozenset(core[i] for i in mis.certificate)
    lower = len(core) - (mis.upper_bound if mis.upper_bound is not None else mis.value)
    return SolveResult(
        len(cover), cover, mis.nodes_explored, timer(), mis.status,
        lower_bound=lower, upper_bound=len(cover),
    )
