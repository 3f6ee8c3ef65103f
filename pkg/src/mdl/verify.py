"""Recompute both sides of each closed-form result over a parameter sweep.

Every check takes ``(n, k)``, builds the graph itself and compares a formula
or explicit construction against an exact solver or definitional checker.
Nothing is cached, so a run is self-contained evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterator, Optional

from .families import (
    doubly_basis_j2_construction,
    johnson,
    johnson_beta_s_formula,
    johnson_distance,
    kneser,
    kneser_beta_s_formula,
    kneser_distance,
    kneser_strong_resolving_construction,
    psi_formula_nk2,
    stahl_bounds_hold,
    subset_orbits,
    vertex_ids,
)
from .graph import Graph, all_pairs_distances
from .independent import max_independent_set
from .resolving import (
    doubly_metric_dimension_exact,
    is_doubly_resolving_set,
    is_resolving_set,
    is_strong_resolving_set,
)
from .search import Budget, min_set_cover
from .strong import mmd_pairs, strong_metric_dimension_direct, strong_metric_dimension_exact


@dataclass(frozen=True)
class Outcome:
    check: str
    n: int
    k: int
    verdict: str  # PASS, FAIL or SKIP
    detail: str
    budget_limited: bool = False

    def line(self) -> str:
        return f"{self.verdict:4s} {self.check} n={self.n} k={self.k}: {self.detail}"


@dataclass(frozen=True)
class Check:
    id: str
    summary: str
    n_range: tuple[int, int]
    k_range: tuple[int, int]
    applies: Callable[[int, int], bool]
    size: Callable[[int, int], int]
    max_vertices: int
    # returns (True/False, detail), or (None, detail) when the budget ran out
    run: Callable[[int, int, Optional[int]], tuple[Optional[bool], str]]


def _vc_as_set_cover(g: Graph, budget: Optional[int]) -> tuple[int, bool]:
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    res = min_set_cover(masks, g.n_vertices, budget=Budget(budget))
    return res.value, res.optimal


def _cover_plus_independence(n: int, k: int, budget: Optional[int]) -> tuple[Optional[bool], str]:
    parts = []
    ok = True
    graphs = [("J", johnson(n, k))]
    if n >= 2 * k:
        graphs.append(("K", kneser(n, k)))
    for name, g in graphs:
        vc, exact = _vc_as_set_cover(g, budget)
        ind = max_independent_set(g, budget)
        if not (exact and ind.optimal):
            return None, f"{name}: node budget exhausted"
        ok = ok and vc == g.n_vertices - ind.value
        parts.append(f"{name}: vc={vc} |V|-ind={g.n_vertices - ind.value}")
    return ok, "; ".join(parts)


def _gsr(n: int, k: int, budget: Optional[int]) -> tuple[Optional[bool], str]:
    parts = []
    ok = True
    graphs = [("J", johnson(n, k))]
    if n > 2 * k:
        graphs.append(("K", kneser(n, k)))
    for name, g in graphs:
        a = strong_metric_dimension_exact(g, budget)
        b = strong_metric_dimension_direct(g, budget)
        if not (a.optimal and b.optimal):
            return None, f"{name}: node budget exhausted"
        ok = ok and a.value == b.value
        parts.append(f"{name}: vc(G_SR)={a.value} direct={b.value}")
    return ok, "; ".join(parts)


def _mmd_johnson(n: int, k: int, budget: Optional[int]) -> tuple[Optional[bool], str]:
    g = johnson(n, k)
    got = mmd_pairs(g)
    labels = g.labels
    want = {
        (u, v)
        for v in range(g.n_vertices)
        for u in range(v)
        if johnson_distance(labels[u], labels[v], k) == k
    }
    return got == want, f"{len(got)} MMD pairs, {len(want)} pairs at distance k"


def _betas_johnson(n: int, k: int, budget: Optional[int]) -> tuple[Optional[bool], str]:
    res = strong_metric_dimension_exact(johnson(n, k), budget)
    want = johnson_beta_s_formula(n, k)
    if not res.optimal:
        return None, f"node budget exhausted, best {res.value}"
    return res.value == want, f"exact={res.value} ({res.status}) formula={want}"


def _betas_kneser(n: int, k: int, budget: Optional[int]) -> tuple[Optional[bool], str]:
    g = kneser(n, k)
    res = strong_metric_dimension_exact(g, budget)
    want = kneser_beta_s_formula(n, k)
    s = vertex_ids(g, kneser_strong_resolving_construction(n, k))
    cert = is_strong_resolving_set(all_pairs_distances(g), s)
    if not res.optimal:
        return None, f"node budget exhausted, best {res.value}"
    ok = res.value == want and cert and len(s) == want
    return ok, f"exact={res.value} ({res.status}) formula={want} construction |S|={len(s)} valid={cert}"


def _kneser_distances(n: int, k: int, budget: Optional[int]) -> tuple[Optional[bool], str]:
    g = kneser(n, k)
    d = all_pairs_distances(g).rows()
    labels = g.labels
    bad_dist = bad_stahl = 0
    for v in range(g.n_vertices):
        for u in range(v):
            dist = d[u][v]
            if kneser_distance(labels[u], labels[v], n, k) != dist:
                bad_dist += 1
            if not stahl_bounds_hold(labels[u].intersection_size(labels[v]), dist, n, k):
                bad_stahl += 1
    pairs = comb(g.n_vertices, 2)
    return bad_dist == bad_stahl == 0, f"{pairs} pairs, {bad_dist} distance mismatches, {bad_stahl} bound violations"


def _doubly_construction(n: int, k: int, budget: Optional[int]) -> tuple[Optional[bool], str]:
    s = doubly_basis_j2_construction(n)
    want = -(-2 * n // 3)
    parts = [f"|S|={len(s)} ceil(2n/3)={want}"]
    ok = len(s) == want
    graphs = [("J", johnson(n, 2))]
    if n >= 6:
        graphs.append(("K", kneser(n, 2)))
    for name, g in graphs:
        dm = all_pairs_distances(g)
        ids = vertex_ids(g, s)
        doubly = is_doubly_resolving_set(dm, ids)
        ok = ok and doubly and is_resolving_set(dm, ids)
        parts.append(f"{name}: doubly resolving={doubly}")
    return ok, "; ".join(parts)


def _psi(family: str) -> Callable[[int, int, Optional[int]], tuple[Optional[bool], str]]:
    def run(n: int, k: int, budget: Optional[int]) -> tuple[Optional[bool], str]:
        g = johnson(n, 2) if family == "J" else kneser(n, 2)
        res = doubly_metric_dimension_exact(g, budget, vertex_transitive=True, orbits=subset_orbits(g))
        want = psi_formula_nk2(n, family)
        cert = is_doubly_resolving_set(all_pairs_distances(g), res.certificate)
        if not res.optimal:
            return None, f"node budget exhausted, best {res.value}"
        return (
            res.value == want and cert,
            f"exact={res.value} ({res.status}) formula={want}",
        )

    return run


def _ekr(n: int, k: int, budget: Optional[int]) -> tuple[Optional[bool], str]:
    res = max_independent_set(kneser(n, k), budget)
    want = comb(n - 1, k - 1)
    if not res.optimal:
        return None, f"node budget exhausted, bounds {res.value}..{res.upper_bound}"
    return res.value == want, f"ind={res.value} ({res.status}) C(n-1,k-1)={want}"


CHECKS: dict[str, Check] = {
    c.id: c
    for c in [
        Check("prop-gallai", "vc = |V| - ind on J(n,k) and K(n,k)", (4, 7), (2, 2),
              lambda n, k: n >= 2 * k, lambda n, k: comb(n, k), 21, _cover_plus_independence),
        Check("thm-gsr", "vc(G_SR) equals direct strong-resolving set cover", (4, 6), (1, 2),
              lambda n, k: n >= 2 * k, lambda n, k: comb(n, k), 20, _gsr),
        Check("lem-mmd-johnson", "MMD pairs of J(n,k) are the pairs at distance k", (2, 10), (1, 5),
              lambda n, k: n >= 2 * k, lambda n, k: comb(n, k), 1000, _mmd_johnson),
        Check("prop-betas-johnson", "beta_S(J(n,k)) = C(n-1,k)", (2, 8), (1, 4),
              lambda n, k: n >= 2 * k, lambda n, k: comb(n, k), 300, _betas_johnson),
        Check("thm-betas-kneser", "beta_S(K(n,k)) = C(n,k) - floor(n/k), n >= 3k-1", (5, 9), (2, 3),
              lambda n, k: k >= 2 and n >= 3 * k - 1 and n > 2 * k, lambda n, k: comb(n, k), 300,
              _betas_kneser),
        Check("eq16-distance", "Kneser distance formula and Stahl bounds vs BFS", (5, 12), (1, 5),
              lambda n, k: n >= 2 * k + 1, lambda n, k: comb(n, k), 1000, _kneser_distances),
        Check("eq17-doubly", "explicit doubly resolving set of J(n,2) and K(n,2)", (4, 14), (2, 2),
              lambda n, k: n >= 4 and k == 2, lambda n, k: comb(n, 2), 1000, _doubly_construction),
        Check("thm-psi-j2", "psi(J(n,2)) = ceil(2n/3)", (4, 8), (2, 2),
              lambda n, k: n >= 4 and k == 2, lambda n, k: comb(n, 2), 91, _psi("J")),
        Check("thm-psi-k2", "psi(K(n,2)) = ceil(2n/3), psi(K(5,2)) = 3", (5, 8), (2, 2),
              lambda n, k: n >= 5 and k == 2, lambda n, k: comb(n, 2), 91, _psi("K")),
        Check("ekr", "ind(K(n,k)) = C(n-1,k-1)", (4, 9), (1, 4),
              lambda n, k: k >= 1 and n >= 2 * k, lambda n, k: comb(n, k), 500, _ekr),
    ]
}


def run_check(
    check_id: str,
    n_range: Optional[tuple[int, int]] = None,
    k_range: Optional[tuple[int, int]] = None,
    budget: Optional[int] = None,
) -> Iterator[Outcome]:
    check = CHECKS[check_id]
    n_lo, n_hi = n_range or check.n_range
    k_lo, k_hi = k_range or check.k_range
    for n in range(n_lo, n_hi + 1):
        for k in range(k_lo, k_hi + 1):
            if k < 1 or k >= n or not check.applies(n, k):
                continue
            size = check.size(n, k)
            if size > check.max_vertices:
                yield Outcome(check_id, n, k, "SKIP", f"{size} vertices exceed guard {check.max_vertices}")
                continue
            ok, detail = check.run(n, k, budget)
            verdict = "SKIP" if ok is None else "PASS" if ok else "FAIL"
            yield Outcome(check_id, n, k, verdict, detail, budget_limited=ok is None)


__all__ = ["CHECKS", "Check", "Outcome", "run_check"]
