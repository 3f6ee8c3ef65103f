"""Immutable simple graphs, BFS distances and the DIMACS-style edge-list format."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np

from .subsets import KSubset, iter_bits

#: Distance entry for vertex pairs in different components. Large enough that
#: sums of two entries never wrap in int64 and never equal a finite distance.
INF = 1 << 40


class DisconnectedGraphError(ValueError):
    """Raised by operations that are only defined on connected graphs."""


class EdgeListError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n_vertices-1``.

    ``edges`` is a sorted tuple of ``(low, high)`` pairs. ``adj`` holds the
    same adjacency as one neighbour bitmask per vertex.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    labels: Optional[tuple[KSubset, ...]] = None
    adj: tuple[int, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_edges(
        cls,
        n_vertices: int,
        edges: Iterable[tuple[int, int]],
        labels: Optional[Sequence[KSubset]] = None,
    ) -> Graph:
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n_vertices - 1}")
            canon.add((u, v) if u < v else (v, u))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n_vertices:
                raise ValueError("label count must equal vertex count")
            if len(set(labels)) != n_vertices:
                raise ValueError("labels must be pairwise distinct")
        adj = [0] * n_vertices
        for u, v in canon:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n_vertices, tuple(sorted(canon)), labels, tuple(adj))

    @classmethod
    def from_adjacency(
        cls, adj: Sequence[int], labels: Optional[Sequence[KSubset]] = None
    ) -> Graph:
        n = len(adj)
        edges = [(u, v) for u in range(n) for v in iter_bits(adj[u] >> (u + 1) << (u + 1))]
        return cls.from_edges(n, edges, labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def vertex_of(self, label: KSubset) -> int:
        if self.labels is None:
            raise ValueError("graph has no labels")
        index = getattr(self, "_label_index", None)
        if index is None:
            index = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_label_index", index)
        return index[label]

    def vertex_name(self, v: int) -> str:
        """1-indexed subset notation when labelled, else the raw vertex id."""
        return str(self.labels[v]) if self.labels is not None else str(v)

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Subgraph on ``vertices``, renumbered in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        labels = None if self.labels is None else [self.labels[v] for v in vertices]
        return Graph.from_edges(len(vertices), edges, labels)

    def relabeled(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``; labels dropped."""
        return Graph.from_edges(self.n_vertices, [(perm[u], perm[v]) for u, v in self.edges])


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    d: np.ndarray = field(repr=False)

    @property
    def connected(self) -> bool:
        return bool(self.n <= 1 or (self.d < INF).all())

    def require_connected(self) -> None:
        if not self.connected:
            raise DisconnectedGraphError("graph is disconnected")

    def rows(self) -> list[list[int]]:
        """Plain nested lists, for tight Python loops."""
        return self.d.tolist()

    def __getitem__(self, uv: tuple[int, int]) -> int:
        return int(self.d[uv])


def bfs_levels(g: Graph, source: int) -> list[int]:
    """Level bitmasks of a BFS from ``source``: entry t is {w : d(source, w) = t}."""
    adj = g.adj
    seen = 1 << source
    frontier = seen
    levels = []
    while frontier:
        levels.append(frontier)
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return levels


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    n = g.n_vertices
    d = np.full((n, n), INF, dtype=np.int64)
    for s in range(n):
        row = d[s]
        for t, level in enumerate(bfs_levels(g, s)):
            row[list(iter_bits(level))] = t
    d.setflags(write=False)
    return DistanceMatrix(n, d)


def is_connected(g: Graph) -> bool:
    if g.n_vertices <= 1:
        return True
    reached = 0
    for level in bfs_levels(g, 0):
        reached |= level
    return reached == (1 << g.n_vertices) - 1


def complement(g: Graph) -> Graph:
    full = (1 << g.n_vertices) - 1
    adj = [full & ~g.adj[v] & ~(1 << v) for v in range(g.n_vertices)]
    return Graph.from_adjacency(adj, g.labels)


def diameter(g: Graph, dm: Optional[DistanceMatrix] = None) -> float | int:
    """Largest distance; ``math.inf`` for disconnected graphs, 0 for one vertex."""
    if g.n_vertices == 0:
        return 0
    dm = dm or all_pairs_distances(g)
    if not dm.connected:
        return float("inf")
    return int(dm.d.max())


def degree_profile(g: Graph) -> tuple[int, int, bool]:
    """``(min degree, max degree, regular?)``."""
    if g.n_vertices == 0:
        return 0, 0, True
    degrees = [a.bit_count() for a in g.adj]
    lo, hi = min(degrees), max(degrees)
    return lo, hi, lo == hi


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


# -- edge-list I/O ---------------------------------------------------------


def read_edgelist(stream: TextIO | str) -> Graph:
    """Parse ``p <n> <m>`` followed by 1-indexed ``u v`` lines.

    Lines starting with ``c`` are comments. A comment of the form
    ``c label <v> {a,b,...}`` attaches a k-subset label to vertex ``v``; labels
    are kept only if every vertex gets one.
    """
    lines = stream.splitlines() if isinstance(stream, str) else stream.read().splitlines()
    n = m = None
    edges = []
    label_map = {}
    universe = 0
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if line[0] == "c":
            parts = line.split(maxsplit=3)
            if len(parts) >= 3 and parts[1] == "universe":
                universe = max(universe, int(parts[2]))
            elif len(parts) == 4 and parts[1] == "label":
                body = parts[3].strip()
                if body.startswith("{") and body.endswith("}"):
                    elems = [int(x) for x in body[1:-1].split(",") if x.strip()]
                    label_map[int(parts[2]) - 1] = elems
                    universe = max([universe, *elems])
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise EdgeListError(f"line {lineno}: duplicate header")
            nums = [p for p in parts[1:] if p.isdigit()]
            if len(nums) != 2:
                raise EdgeListError(f"line {lineno}: expected 'p <n_vertices> <n_edges>'")
            n, m = int(nums[0]), int(nums[1])
            continue
        if n is None:
            raise EdgeListError(f"line {lineno}: edge before 'p' header")
        if len(parts) == 3 and parts[0] == "e":
            parts = parts[1:]
        if len(parts) != 2:
            raise EdgeListError(f"line {lineno}: expected '<u> <v>'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer vertex id") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise EdgeListError(f"line {lineno}: vertex id outside 1..{n}")
        if u == v:
            raise EdgeListError(f"line {lineno}: self-loop")
        edges.append((u - 1, v - 1))
    if n is None:
        raise EdgeListError("missing 'p <n_vertices> <n_edges>' header")
    g = Graph.from_edges(n, edges)
    if g.n_edges != m:
        raise EdgeListError(f"header declares {m} edges, found {g.n_edges} distinct")
    if n and len(label_map) == n:
        g = Graph.from_edges(
            n, g.edges, [KSubset.of(universe, label_map[v]) for v in range(n)]
        )
    return g


def format_edgelist(g: Graph, with_labels: bool = True) -> str:
    out = [f"p {g.n_vertices} {g.n_edges}"]
    if with_labels and g.labels is not None:
        out.append(f"c universe {g.labels[0].n}")
        out += [f"c label {v + 1} {lab}" for v, lab in enumerate(g.labels)]
    out += [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(out) + "\n"
