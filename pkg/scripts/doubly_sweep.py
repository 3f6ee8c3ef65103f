"""psi and beta of J(n,2) and K(n,2) by exact search, next to ceil(2n/3).

    python scripts/doubly_sweep.py --n-max 14
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from mdl.families import doubly_basis_j2_construction, johnson, kneser, psi_formula_nk2, subset_orbits, vertex_ids
from mdl.graph import all_pairs_distances
from mdl.resolving import doubly_metric_dimension_exact, is_doubly_resolving_set, metric_dimension_exact
from mdl.search import default_budget


@dataclass
class Config:
    n_min: int = 4
    n_max: int = 12
    budget: int = 0

    def __post_init__(self) -> None:
        self.budget = self.budget or default_budget()


def sweep(cfg: Config):
    for family, build, first in (("J", johnson, 4), ("K", kneser, 5)):
        for n in range(max(cfg.n_min, first), cfg.n_max + 1):
            g = build(n, 2)
            dm = all_pairs_distances(g)
            orbits = subset_orbits(g)
            start = time.perf_counter()
            beta = metric_dimension_exact(g, cfg.budget, vertex_transitive=True, orbits=orbits, dm=dm)
            psi = doubly_metric_dimension_exact(g, cfg.budget, vertex_transitive=True, orbits=orbits, dm=dm, beta=beta)
            elapsed = time.perf_counter() - start
            construction = vertex_ids(g, doubly_basis_j2_construction(n))
            yield (family, n, beta.value, psi.value, str(psi.status), psi_formula_nk2(n, family),
                   is_doubly_resolving_set(dm, construction), round(elapsed, 2))


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--budget", type=int, default=0)
    args = p.parse_args()
    print("family,n,beta,psi,status,closed_form,construction_ok,seconds")
    for row in sweep(Config(args.n_min, args.n_max, args.budget)):
        print(",".join(map(str, row)), flush=True)


if __name__ == "__main__":
    main()
