"""Shared search plumbing: node budgets, results, exact minimum set cover.

The set-cover engine works on small-integer bitmasks: item ``i`` can be
covered by any candidate in ``coverers[i]``. Search is iterative deepening
over the cover size; inside one depth the branching item is the uncovered
item with the fewest available coverers, and siblings are explored in
ascending candidate order with earlier siblings excluded, so every subset is
visited at most once.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

from .subsets import iter_bits

DEFAULT_BUDGET = 50_000_000

#: ``orbits(chosen, avail)`` partitions the bitmask ``avail`` into orbits of
#: an automorphism subgroup fixing every vertex in ``chosen``.
Orbits = Callable[[Sequence[int], int], list[int]]


def default_budget() -> int:
    env = os.environ.get("MDL_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class Status(str, Enum):
    OPTIMAL = "Optimal"
    UPPER_BOUND_ONLY = "UpperBoundOnly"
    FORMULA = "Formula"

    def __str__(self) -> str:
        return self.value


class BudgetExceeded(Exception):
    pass


class Budget:
    """Counts branch nodes; raises :class:`BudgetExceeded` past ``limit``."""

    def __init__(self, limit: Optional[int] = None):
        self.limit = default_budget() if limit is None else limit
        self.spent = 0

    def tick(self) -> None:
        self.spent += 1
        if self.spent > self.limit:
            raise BudgetExceeded


@dataclass(frozen=True)
class SolveResult:
    """Invariant value with a witnessing set.

    With status ``UpperBoundOnly`` the search ran out of budget: for
    minimisation problems ``value`` is the size of the best certificate found
    and ``lower_bound`` the best proven bound; for the independent-set solver
    ``value`` is a lower bound and ``upper_bound`` the proven cap.
    """

    value: int
    certificate: frozenset[int]
    nodes_explored: int
    elapsed: float
    status: Status
    lower_bound: Optional[int] = None
    upper_bound: Optional[int] = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class Timer:
    def __init__(self) -> None:
        self.start = time.perf_counter()

    def __call__(self) -> float:
        return time.perf_counter() - self.start


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _cover(coverers: Sequence[int], items: list[int], avail: int, r: int, budget: Budget):
    if not items:
        return []
    if r == 0:
        return None
    budget.tick()

    best_count = 1 << 30
    best = 0
    for i in items:
        c = coverers[i] & avail
        cnt = c.bit_count()
        if cnt < best_count:
            if cnt == 0:
                return None
            best_count, best = cnt, c

    if r == 1:
        common = avail
        for i in items:
            common &= coverers[i]
            if not common:
                return None
        return [(common & -common).bit_length() - 1]

    if len(items) > r:
        # greedy packing of items with pairwise disjoint coverer sets
        used = 0
        packed = 0
        for i in items:
            c = coverers[i] & avail
            if not c & used:
                used |= c
                packed += 1
                if packed > r:
                    return None

    for w in iter_bits(best):
        avail &= ~(1 << w)
        child = [i for i in items if not coverers[i] >> w & 1]
        found = _cover(coverers, child, avail, r - 1, budget)
        if found is not None:
            return [w, *found]
    return None


def _orbit_cover(
    coverers: Sequence[int],
    items: list[int],
    avail: int,
    r: int,
    chosen: list[int],
    orbits: Orbits,
    depth: int,
    budget: Budget,
):
    """Top ``depth`` levels branch on one representative per orbit of the
    stabiliser of ``chosen``; orbits already tried are dropped from
    ``avail``. Any cover meeting an orbit maps onto one through its
    representative, and ``avail`` stays invariant under the stabiliser."""
    if depth == 0 or not items or r == 0:
        return _cover(coverers, items, avail, r, budget)
    budget.tick()
    for orb in orbits(chosen, avail):
        w = (orb & -orb).bit_length() - 1
        child = [i for i in items if not coverers[i] >> w & 1]
        found = _orbit_cover(coverers, child, avail & ~(1 << w), r - 1, [*chosen, w], orbits, depth - 1, budget)
        if found is not None:
            return [w, *found]
        avail &= ~orb
    return None


def cover_of_size(
    coverers: Sequence[int],
    size: int,
    items: Optional[list[int]] = None,
    avail: int = -1,
    budget: Optional[Budget] = None,
    *,
    chosen: Sequence[int] = (),
    orbits: Optional[Orbits] = None,
    orbit_depth: int = 8,
) -> Optional[list[int]]:
    """A set of at most ``size`` candidates from ``avail`` covering ``items``.

    Returns ``None`` when no such set exists. ``avail = -1`` means every
    candidate. With ``orbits``, ``chosen`` lists the candidates already
    fixed and ``avail`` must be invariant under their stabiliser.
    """
    items = list(range(len(coverers))) if items is None else items
    budget = budget or Budget()
    if orbits is None:
        return _cover(coverers, items, avail, size, budget)
    return _orbit_cover(coverers, items, avail, size, list(chosen), orbits, orbit_depth, budget)


def greedy_cover(coverers: Sequence[int], items: list[int], avail: int) -> Optional[list[int]]:
    """Classical greedy set cover; ``None`` if some item is uncoverable."""
    chosen = []
    items = list(items)
    while items:
        counts: dict[int, int] = {}
        for i in items:
            for w in iter_bits(coverers[i] & avail):
                counts[w] = counts.get(w, 0) + 1
        if not counts:
            return None
        w = max(counts, key=lambda v: (counts[v], -v))
        chosen.append(w)
        avail &= ~(1 << w)
        items = [i for i in items if not coverers[i] >> w & 1]
    return chosen


def min_set_cover(
    coverers: Sequence[int],
    n_candidates: int,
    *,
    forced: Sequence[int] = (),
    lower: int = 0,
    budget: Optional[Budget] = None,
    timer: Optional[Timer] = None,
    orbits: Optional[Orbits] = None,
) -> SolveResult:
    """Exact minimum set cover by iterative deepening on the cover size.

    ``forced`` candidates are put in the cover up front (used for symmetry
    breaking by callers that know it is safe); ``orbits`` enables orbit
    branching near the root, see :func:`_orbit_cover`. Raises
    ``ValueError`` if some item has no coverer at all.
    """
    timer = timer or Timer()
    budget = budget or Budget()
    avail = (1 << n_candidates) - 1
    chosen = list(forced)
    for w in chosen:
        avail &= ~(1 << w)
    items = [i for i in range(len(coverers)) if not any(coverers[i] >> w & 1 for w in chosen)]
    for i in items:
        if not coverers[i] & avail:
            raise ValueError(f"item {i} cannot be covered")

    incumbent = chosen + greedy_cover(coverers, items, avail)
    size = max(lower, len(chosen))
    start_nodes = budget.spent
    try:
        while size < len(incumbent):
            found = cover_of_size(
                coverers, size - len(chosen), items, avail, budget, chosen=chosen, orbits=orbits
            )
            if found is not None:
                incumbent = chosen + found
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
