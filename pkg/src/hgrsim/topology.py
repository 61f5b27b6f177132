"""Deployments, unit-disk connectivity and hop-count oracles.

Connectivity is always decided on true positions; perceived positions only
feed routing decisions.  All randomness goes through numpy's PCG64 bit
generator seeded with the integer seed stored on the deployment.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InvalidParameter

PRNG_NAME = "numpy.random.PCG64"

Point = tuple[float, float]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(*keys: int) -> int:
    """Deterministic 64-bit sub-seed from a tuple of integers (SeedSequence hash)."""
    state = np.random.SeedSequence([int(k) for k in keys]).generate_state(1, np.uint64)
    return int(state[0])


@dataclass(frozen=True)
class NodeRecord:
    id: int
    true_pos: Point
    perceived_pos: Point


@dataclass(frozen=True)
class Deployment:
    nodes: tuple[NodeRecord, ...]
    field_width: float
    field_height: float
    radio_range: float
    seed: int = 0

    def __post_init__(self):
        if self.radio_range <= 0:
            raise InvalidParameter("radio_range must be positive")
        for i, rec in enumerate(self.nodes):
            if rec.id != i:
                raise InvalidParameter(f"node ids must be dense 0..n-1, got {rec.id} at index {i}")
            x, y = rec.true_pos
            if not (0 <= x <= self.field_width and 0 <= y <= self.field_height):
                raise InvalidParameter(f"node {i} lies outside the field")

    @property
    def n(self) -> int:
        return len(self.nodes)

    @cached_property
    def true_positions(self) -> tuple[Point, ...]:
        return tuple(r.true_pos for r in self.nodes)

    @cached_property
    def perceived_positions(self) -> tuple[Point, ...]:
        return tuple(r.perceived_pos for r in self.nodes)

    @classmethod
    def from_positions(cls, positions: Sequence[Point], radio_range: float,
                       field_size: Point | None = None, seed: int = 0) -> "Deployment":
        """Explicit layout with perceived == true.  Field defaults to the bounding box."""
        pts = [(float(x), float(y)) for x, y in positions]
        if field_size is None:
            w = max([x for x, _ in pts] + [1.0])
            h = max([y for _, y in pts] + [1.0])
        else:
            w, h = field_size
        nodes = tuple(NodeRecord(i, p, p) for i, p in enumerate(pts))
        return cls(nodes, float(w), float(h), float(radio_range), seed)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.field_width!r} {self.field_height!r} {self.radio_range!r} {self.seed}"]
        for r in self.nodes:
            lines.append(f"{r.id} {r.true_pos[0]!r} {r.true_pos[1]!r} "
                         f"{r.perceived_pos[0]!r} {r.perceived_pos[1]!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Deployment":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows:
            raise InvalidParameter("empty node list")
        head = rows[0]
        if len(head) != 5:
            raise InvalidParameter("header must be 'n w h range seed'")
        n = int(head[0])
        w, h, rr = float(head[1]), float(head[2]), float(head[3])
        seed = int(head[4])
        if len(rows) - 1 != n:
            raise InvalidParameter(f"header declares {n} nodes, found {len(rows) - 1}")
        nodes = []
        for row in rows[1:]:
            if len(row) == 3:  # id x y, perceived defaults to true
                row = row + row[1:3]
            if len(row) != 5:
                raise InvalidParameter(f"bad node line: {' '.join(row)}")
            i = int(row[0])
            x, y, px, py = map(float, row[1:])
            nodes.append(NodeRecord(i, (x, y), (px, py)))
        nodes.sort(key=lambda r: r.id)
        return cls(tuple(nodes), w, h, rr, seed)


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    _adjsets: tuple[frozenset, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if not self._adjsets:
            object.__setattr__(self, "_adjsets", tuple(frozenset(a) for a in self.adjacency))

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def mean_degree(self) -> float:
        return sum(len(a) for a in self.adjacency) / self.n if self.n else 0.0

    def edges(self):
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return cls(n, tuple(tuple(sorted(a)) for a in adj))

    def without_node(self, x: int) -> "Graph":
        """Drop node x and relabel the rest densely (used by fixtures/tests)."""
        relabel = {old: new for new, old in enumerate(i for i in range(self.n) if i != x)}
        edges = [(relabel[u], relabel[v]) for u, v in self.edges() if x not in (u, v)]
        return Graph.from_edges(self.n - 1, edges)


def generate_deployment(n: int, field_size: Point, radio_range: float, seed: int) -> Deployment:
    """Uniform i.i.d. positions: x column then y column drawn as one (n, 2) block."""
    w, h = field_size
    if n < 2:
        raise InvalidParameter("n must be at least 2")
    if w <= 0 or h <= 0 or radio_range <= 0:
        raise InvalidParameter("field dimensions and radio_range must be positive")
    xy = draw_positions(n, field_size, seed)
    nodes = tuple(NodeRecord(i, (x, y), (x, y)) for i, (x, y) in enumerate(xy.tolist()))
    return Deployment(nodes, float(w), float(h), float(radio_range), int(seed))


def draw_positions(n: int, field_size: Point, seed: int) -> np.ndarray:
    """The (n, 2) position block generate_deployment uses for this seed."""
    return make_rng(seed).random((n, 2)) * np.array(field_size, dtype=float)


def unit_disk_matrix(xy: np.ndarray, radio_range: float) -> np.ndarray:
    diff = xy[:, None, :] - xy[None, :, :]
    within = np.hypot(diff[..., 0], diff[..., 1]) <= radio_range
    np.fill_diagonal(within, False)
    return within


def maybe_connected(xy: np.ndarray, radio_range: float) -> bool:
    """Fast necessary condition for connectivity of the unit-disk graph on `xy`.

    Squared distances with a relative slack give a superset of the true edge
    set, so a False here is always correct; a True still needs build_graph.
    """
    sq = (xy * xy).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (xy @ xy.T)
    within = d2 <= radio_range * radio_range * (1 + 1e-9) + 1e-9 * sq.max()
    np.fill_diagonal(within, False)
    return matrix_connected(within)


def matrix_connected(within: np.ndarray) -> bool:
    """Frontier flood over a boolean adjacency matrix."""
    n = len(within)
    if n <= 1:
        return True
    if not within.any(axis=1).all():
        return False
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = seen.copy()
    while frontier.any():
        frontier = within[frontier].any(axis=0) & ~seen
        seen |= frontier
    return bool(seen.all())


def build_graph(d: Deployment) -> Graph:
    xy = np.asarray(d.true_positions, dtype=float).reshape(-1, 2)
    within = unit_disk_matrix(xy, d.radio_range)
    rows, cols = np.nonzero(within)
    splits = np.searchsorted(rows, np.arange(1, d.n))
    adj = tuple(tuple(part.tolist()) for part in np.split(cols, splits))
    return Graph(d.n, adj)


def bfs_distances(g: Graph, src: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[src] = 0
    q = deque([src])
    adj = g.adjacency
    while q:
        u = q.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] is None:
                dist[v] = du
                q.append(v)
    return dist


def shortest_hops(g: Graph, src: int, dst: int) -> int | None:
    """Minimum hop count, or None when dst cannot be reached."""
    if src == dst:
        return 0
    return bfs_distances(g, src)[dst]


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return all(d is not None for d in bfs_distances(g, 0))


def inject_localization_error(d: Deployment, magnitude: float, seed: int) -> Deployment:
    """Offset perceived positions by a uniform angle and a length uniform in [0, magnitude*R]."""
    if magnitude < 0:
        raise InvalidParameter("localization error magnitude must be nonnegative")
    rng = make_rng(seed)
    angle = rng.uniform(0.0, 2.0 * math.pi, d.n)
    length = rng.uniform(0.0, magnitude * d.radio_range, d.n)
    nodes = []
    for rec, a, r in zip(d.nodes, angle, length):
        if magnitude == 0:
            p = rec.true_pos
        else:
            p = (rec.true_pos[0] + float(r) * math.cos(a), rec.true_pos[1] + float(r) * math.sin(a))
        nodes.append(replace(rec, perceived_pos=p))
    return replace(d, nodes=tuple(nodes))
