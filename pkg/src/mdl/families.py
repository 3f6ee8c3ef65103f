"""Johnson and Kneser graphs: generators, closed forms and explicit certificates."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from math import comb
from typing import Literal

from .graph import Graph
from .subsets import KSubset, iter_bits, k_masks

log = logging.getLogger(__name__)

Family = Literal["J", "K"]

_SPEC_RE = re.compile(r"^\s*([JK])\s*:\s*(\d+)\s*,\s*(\d+)\s*$")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    n: int
    k: int

    def __post_init__(self) -> None:
        if self.family not in ("J", "K"):
            raise ValueError(f"unknown family {self.family!r}")
        if not 1 <= self.k < self.n:
            raise ValueError(f"need 1 <= k < n, got n={self.n}, k={self.k}")
        if self.family == "K" and self.n < 2 * self.k:
            raise ValueError(f"Kneser graph K({self.n},{self.k}) needs n >= 2k")

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse ``J:n,k`` / ``K:n,k``; Johnson with n < 2k becomes J(n, n-k)."""
        m = _SPEC_RE.match(text)
        if not m:
            raise ValueError(f"bad family spec {text!r}; expected (J|K):<n>,<k>")
        fam, n, k = m.group(1), int(m.group(2)), int(m.group(3))
        if fam == "J" and 0 < k < n < 2 * k:
            log.info("J(%d,%d) is isomorphic to J(%d,%d); using the latter", n, k, n, n - k)
            k = n - k
        return cls(fam, n, k)

    def graph(self) -> Graph:
        return johnson(self.n, self.k) if self.family == "J" else kneser(self.n, self.k)

    @property
    def connected(self) -> bool:
        return self.family == "J" or self.n > 2 * self.k

    def __str__(self) -> str:
        return f"{self.family}:{self.n},{self.k}"


def _labelled_masks(n: int, k: int) -> tuple[list[int], dict[int, int]]:
    masks = list(k_masks(n, k))
    return masks, {m: i for i, m in enumerate(masks)}


def johnson(n: int, k: int) -> Graph:
    """J(n,k): k-subsets of [n], adjacent when they share k-1 elements.

    Vertex ids follow colex rank of the subsets.
    """
    if not 1 <= k < n:
        raise ValueError(f"J(n,k) needs 1 <= k < n, got n={n}, k={k}")
    full = (1 << n) - 1
    masks, index = _labelled_masks(n, k)
    edges = []
    for i, a in enumerate(masks):
        outside = full & ~a
        for drop in iter_bits(a):
            base = a & ~(1 << drop)
            for add in iter_bits(outside):
                j = index[base | (1 << add)]
                if i < j:
                    edges.append((i, j))
    return Graph.from_edges(len(masks), edges, [KSubset(n, m) for m in masks])


def kneser(n: int, k: int) -> Graph:
    """K(n,k): k-subsets of [n], adjacent when disjoint. Disconnected for n = 2k."""
    if k < 1 or n < 2 * k:
        raise ValueError(f"K(n,k) needs k >= 1 and n >= 2k, got n={n}, k={k}")
    full = (1 << n) - 1
    masks, index = _labelled_masks(n, k)
    edges = []
    for i, a in enumerate(masks):
        outside = full & ~a
        # k-subsets of the complement of a
        positions = list(iter_bits(outside))
        for sub in k_masks(len(positions), k):
            b = 0
            for p in iter_bits(sub):
                b |= 1 << positions[p]
            j = index[b]
            if i < j:
                edges.append((i, j))
    return Graph.from_edges(len(masks), edges, [KSubset(n, m) for m in masks])


# -- distances --------------------------------------------------------------


def johnson_distance(a: KSubset, b: KSubset, k: int) -> int:
    return k - a.intersection_size(b)


def johnson_complement_distance(a: KSubset, b: KSubset, k: int) -> int:
    """Distance from the complement of ``a`` to ``b`` in J(2k, k)."""
    if a.n != 2 * k or b.n != 2 * k:
        raise ValueError("complement distance is only defined for n = 2k")
    return a.intersection_size(b)


def kneser_distance(a: KSubset, b: KSubset, n: int, k: int) -> int:
    """Closed-form distance in K(n,k), n >= 2k+1, from s = |a & b|."""
    if n <= 2 * k:
        raise ValueError("Kneser distance formula needs n >= 2k+1")
    if a == b:
        return 0
    s = a.intersection_size(b)
    gap = n - 2 * k
    return min(2 * _ceil_div(k - s, gap), 2 * _ceil_div(s, gap) + 1)


def kneser_diameter(n: int, k: int) -> int:
    if n <= 2 * k:
        raise ValueError("Kneser diameter formula needs n >= 2k+1")
    return _ceil_div(k - 1, n - 2 * k) + 1


def johnson_diameter(n: int, k: int) -> int:
    return min(k, n - k)


def stahl_bounds_hold(s: int, dist: int, n: int, k: int) -> bool:
    """Intersection-size bounds for a pair of k-subsets at distance ``dist`` in K(n,k)."""
    if dist < 1:
        raise ValueError("dist must be >= 1")
    p, odd = divmod(dist, 2)
    if odd:
        return s <= p * (n - 2 * k)
    return s >= k * (2 * p + 1) - p * n


# -- closed-form dimension values -------------------------------------------


def johnson_beta_s_formula(n: int, k: int) -> int:
    if not (k >= 1 and n >= 2 * k):
        raise ValueError("needs n >= 2k >= 2")
    return comb(n - 1, k)


def kneser_beta_s_formula(n: int, k: int) -> int:
    if k < 2 or n < 3 * k - 1:
        raise ValueError(f"formula established only for k >= 2 and n >= 3k-1; got ({n},{k})")
    return comb(n, k) - n // k


def metric_dim_formula_nk2(n: int) -> int:
    if n < 6:
        raise ValueError("closed form for beta(J(n,2)), beta(K(n,2)) needs n >= 6")
    return _ceil_div(2 * n, 3)


def metric_dim_upper_bound_jnk(n: int, k: int) -> int:
    if k < 3 or n < 2 * k:
        raise ValueError("bound stated for k >= 3 and n >= 2k")
    return k * (n + 1) // (k + 1)


def psi_formula_nk2(n: int, family: Family) -> int:
    if family == "J":
        if n < 4:
            raise ValueError("psi(J(n,2)) closed form needs n >= 4")
    elif family == "K":
        if n == 5:
            return 3
        if n < 6:
            raise ValueError("psi(K(n,2)) closed form needs n >= 6 (n = 5 is tabulated)")
    else:
        raise ValueError(f"unknown family {family!r}")
    return _ceil_div(2 * n, 3)


# -- explicit constructions --------------------------------------------------


def kneser_blocks(n: int, k: int) -> list[KSubset]:
    """The floor(n/k) consecutive blocks {ik+1, ..., (i+1)k}."""
    return [KSubset.of(n, range(i * k + 1, (i + 1) * k + 1)) for i in range(n // k)]


def kneser_strong_resolving_construction(n: int, k: int) -> frozenset[KSubset]:
    """All vertices of K(n,k) except the consecutive blocks."""
    if k < 2 or n < 3 * k - 1:
        raise ValueError(f"construction needs k >= 2 and n >= 3k-1; got ({n},{k})")
    blocks = {b.bits for b in kneser_blocks(n, k)}
    return frozenset(KSubset(n, m) for m in k_masks(n, k) if m not in blocks)


def doubly_basis_j2_construction(n: int) -> frozenset[KSubset]:
    """Pairs {3i-2,3i-1}, {3i-1,3i} for i <= n//3, plus one or two pairs
    {3t-1, 3t+1}, {3t-1, 3t+2} covering the leftover elements."""
    if n < 4:
        raise ValueError("construction needs n >= 4")
    t = n // 3
    pairs = []
    for i in range(1, t + 1):
        pairs += [(3 * i - 2, 3 * i - 1), (3 * i - 1, 3 * i)]
    for extra in range(1, n - 3 * t + 1):
        pairs.append((3 * t - 1, 3 * t + extra))
    return frozenset(KSubset.of(n, p) for p in pairs)


def vertex_ids(g: Graph, subsets) -> list[int]:
    return sorted(g.vertex_of(s) for s in subsets)


def subset_orbits(g: Graph):
    """Orbit oracle for graphs whose vertices are k-subsets of {1..n} and
    whose automorphisms include every permutation of the ground set.

    The permutations fixing each chosen subset are exactly those preserving
    the Venn atoms cut out by the chosen subsets, so two subsets share an
    orbit iff they meet every atom in the same number of elements.
    """
    if g.labels is None:
        raise ValueError("orbit oracle needs subset-labelled vertices")
    n = g.labels[0].n if g.labels else 0
    bits = [lab.bits for lab in g.labels]

    def orbits(chosen, avail: int) -> list[int]:
        atoms: dict[tuple, int] = {}
        for e in range(n):
            key = tuple(bits[c] >> e & 1 for c in chosen)
            atoms[key] = atoms.get(key, 0) | 1 << e
        masks = list(atoms.values())
        groups: dict[tuple, int] = {}
        for v in iter_bits(avail):
            key = tuple((bits[v] & m).bit_count() for m in masks)
            groups[key] = groups.get(key, 0) | 1 << v
        return sorted(groups.values(), key=lambda m: m & -m)

    return orbits
