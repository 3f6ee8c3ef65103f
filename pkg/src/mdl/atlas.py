"""Tables of invariants over ranges of Johnson and Kneser graphs."""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import astuple, dataclass, fields
from math import comb
from typing import Iterable, Optional, Sequence, TextIO

from .families import (
    FamilySpec,
    johnson_beta_s_formula,
    johnson_diameter,
    kneser_beta_s_formula,
    kneser_diameter,
    metric_dim_formula_nk2,
    psi_formula_nk2,
    subset_orbits,
)
from .graph import Graph, diameter
from .resolving import doubly_metric_dimension_exact, metric_dimension_exact
from .search import Budget, SolveResult, Status, Timer
from .strong import strong_metric_dimension_exact

log = logging.getLogger(__name__)

INVARIANTS = ("beta", "beta_s", "psi", "diam")
HEADER = ("family", "n", "k", "vertices", "edges", "invariant", "value", "status", "elapsed_ms")


@dataclass(frozen=True, order=True)
class AtlasRow:
    family: str
    n: int
    k: int
    vertices: int
    edges: int
    invariant: str
    value: int
    status: str
    elapsed_ms: int

    def key(self) -> tuple:
        return (self.family, self.n, self.k, self.invariant)


def atlas_specs(family: str, n_range: tuple[int, int], k_range: tuple[int, int]) -> list[FamilySpec]:
    """Connected family members in the ranges; J(n,k) with n < 2k is left
    out as a duplicate of J(n,n-k)."""
    out = []
    for n in range(n_range[0], n_range[1] + 1):
        for k in range(max(1, k_range[0]), k_range[1] + 1):
            if family == "J" and 2 * k <= n:
                out.append(FamilySpec("J", n, k))
            elif family == "K" and 2 * k < n:
                out.append(FamilySpec("K", n, k))
    return out


def solve_invariant(spec_or_graph, invariant: str, budget: Optional[int | Budget] = None) -> SolveResult:
    """Exact solve of one invariant; Johnson and Kneser graphs get the
    symmetry reductions of their automorphism group."""
    if isinstance(spec_or_graph, FamilySpec):
        g = spec_or_graph.graph()
        symmetric = True
    else:
        g = spec_or_graph
        symmetric = False
    orbits = subset_orbits(g) if symmetric else None
    if invariant == "beta":
        return metric_dimension_exact(g, budget, vertex_transitive=symmetric, orbits=orbits)
    if invariant == "beta_s":
        return strong_metric_dimension_exact(g, budget)
    if invariant == "psi":
        return doubly_metric_dimension_exact(g, budget, vertex_transitive=symmetric, orbits=orbits)
    if invariant == "diam":
        timer = Timer()
        d = diameter(g)
        return SolveResult(int(d), frozenset(), 0, timer(), Status.OPTIMAL, lower_bound=int(d))
    raise ValueError(f"unknown invariant {invariant!r}; choose from {', '.join(INVARIANTS)}")


def formula_value(spec: FamilySpec, invariant: str) -> Optional[int]:
    """Closed-form value, or ``None`` outside the range where one is known."""
    n, k = spec.n, spec.k
    try:
        if invariant == "beta_s":
            if spec.family == "J":
                return johnson_beta_s_formula(n, k)
            return kneser_beta_s_formula(n, k)
        if invariant == "diam":
            return johnson_diameter(n, k) if spec.family == "J" else kneser_diameter(n, k)
        if k == 2 and invariant == "beta":
            return metric_dim_formula_nk2(n)
        if k == 2 and invariant == "psi":
            return psi_formula_nk2(n, spec.family)
    except ValueError:
        return None
    return None


def _edge_count(spec: FamilySpec) -> int:
    n, k = spec.n, spec.k
    size = comb(n, k)
    if spec.family == "J":
        return size * k * (n - k) // 2
    return size * comb(n - k, k) // 2


def build_atlas(
    family: str,
    n_range: tuple[int, int],
    k_range: tuple[int, int],
    invariants: Sequence[str],
    budget: Optional[int] = None,
    formula: bool = False,
) -> list[AtlasRow]:
    """One row per (member, invariant). Each solve gets its own node budget;
    an exhausted budget is recorded as ``UpperBoundOnly`` and the run goes on.
    In formula mode only closed forms are evaluated and rows without one are
    left out."""
    for inv in invariants:
        if inv not in INVARIANTS:
            raise ValueError(f"unknown invariant {inv!r}; choose from {', '.join(INVARIANTS)}")
    rows = []
    for spec in atlas_specs(family, n_range, k_range):
        vertices = comb(spec.n, spec.k)
        edges = _edge_count(spec)
        for inv in invariants:
            if formula:
                value = formula_value(spec, inv)
                if value is None:
                    log.info("no closed form for %s of %s", inv, spec)
                    continue
                rows.append(AtlasRow(spec.family, spec.n, spec.k, vertices, edges, inv, value, str(Status.FORMULA), 0))
                continue
            res = solve_invariant(spec, inv, budget)
            log.info("%s %s = %d (%s)", spec, inv, res.value, res.status)
            rows.append(AtlasRow(
                spec.family, spec.n, spec.k, vertices, edges, inv, res.value,
                str(res.status), int(round(res.elapsed * 1000)),
            ))
    return sorted(rows, key=AtlasRow.key)


def write_atlas(rows: Iterable[AtlasRow], stream: TextIO) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(HEADER)
    for row in rows:
        w.writerow(astuple(row))


def format_atlas(rows: Iterable[AtlasRow]) -> str:
    buf = io.StringIO()
    write_atlas(rows, buf)
    return buf.getvalue()


def read_atlas(stream: TextIO | str) -> list[AtlasRow]:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    header = next(reader, None)
    if tuple(header or ()) != HEADER:
        raise ValueError(f"unexpected atlas header {header!r}")
    types = [f.type for f in fields(AtlasRow)]
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if len(rec) != len(HEADER):
            raise ValueError(f"line {lineno}: expected {len(HEADER)} fields, got {len(rec)}")
        vals = [int(v) if t in (int, "int") else v for v, t in zip(rec, types)]
        rows.append(AtlasRow(*vals))
    return rows


__all__ = [
    "AtlasRow", "HEADER", "INVARIANTS", "atlas_specs", "build_atlas", "format_atlas",
    "formula_value", "read_atlas", "solve_invariant", "write_atlas", "Graph",
]
