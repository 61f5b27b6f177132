"""Virtual coordinates: anchor choice, per-anchor hop-count floods, VC zones."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InvalidParameter, UnreachableNodeError
from .topology import Deployment, Graph, bfs_distances, make_rng

ANCHOR_STRATEGIES = ("corners", "random", "perimeter")


@dataclass(frozen=True)
class AnchorSet:
    anchors: tuple[int, ...]

    def __post_init__(self):
        if len(self.anchors) < 1:
            raise InvalidParameter("need at least one anchor")
        if len(set(self.anchors)) != len(self.anchors):
            raise InvalidParameter("anchor ids must be distinct")

    def __len__(self):
        return len(self.anchors)

    def __iter__(self):
        return iter(self.anchors)


@dataclass(frozen=True)
class VcTable:
    """Hop counts from every node to every anchor; row order is node id."""
    rows: tuple[tuple[int, ...], ...]
    anchor_set: AnchorSet

    @property
    def k(self) -> int:
        return len(self.anchor_set)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, node: int) -> tuple[int, ...]:
        return self.rows[node]

    @cached_property
    def coords(self) -> np.ndarray:
        arr = np.asarray(self.rows, dtype=np.int64).reshape(self.n, self.k)
        arr.flags.writeable = False
        return arr

    def to_text(self) -> str:
        return "".join(f"{i} " + " ".join(map(str, row)) + "\n" for i, row in enumerate(self.rows))

    @classmethod
    def from_text(cls, text: str, anchors: Sequence[int]) -> "VcTable":
        rows = {}
        for ln in text.splitlines():
            if not ln.strip():
                continue
            parts = [int(x) for x in ln.split()]
            rows[parts[0]] = tuple(parts[1:])
        return cls(tuple(rows[i] for i in range(len(rows))), AnchorSet(tuple(anchors)))


@dataclass(frozen=True)
class VcZone:
    coordinate: tuple[int, ...]
    members: frozenset[int]
    span_hops: int
    connected: bool

    @property
    def expanded(self) -> bool:
        return self.span_hops >= 2

    @property
    def disconnected(self) -> bool:
        return not self.connected


def _nearest_unchosen(points, target, chosen) -> int:
    best, best_d = -1, math.inf
    for i, (x, y) in enumerate(points):
        if i in chosen:
            continue
        d = math.hypot(x - target[0], y - target[1])
        if d < best_d:
            best, best_d = i, d
    return best


def _perimeter_point(w: float, h: float, s: float):
    """Point at arc length s along the boundary, counterclockwise from (0, 0)."""
    if s <= w:
        return (s, 0.0)
    s -= w
    if s <= h:
        return (w, s)
    s -= h
    if s <= w:
        return (w - s, h)
    s -= w
    return (0.0, h - s)


def select_anchors(g: Graph, d: Deployment, k: int, strategy: str = "corners") -> AnchorSet:
    if k < 1 or k > g.n:
        raise InvalidParameter(f"anchor count {k} outside [1, {g.n}]")
    pts = d.true_positions
    w, h = d.field_width, d.field_height
    chosen: list[int] = []
    if strategy == "corners":
        corners = [(0.0, 0.0), (w, 0.0), (w, h), (0.0, h)]
        for i in range(k):
            chosen.append(_nearest_unchosen(pts, corners[i % 4], set(chosen)))
    elif strategy == "perimeter":
        total = 2 * (w + h)
        for i in range(k):
            target = _perimeter_point(w, h, total * i / k)
            chosen.append(_nearest_unchosen(pts, target, set(chosen)))
    elif strategy == "random":
        rng = make_rng(d.seed)
        chosen = [int(x) for x in rng.choice(g.n, size=k, replace=False)]
    else:
        raise InvalidParameter(f"unknown anchor strategy {strategy!r}")
    return AnchorSet(tuple(chosen))


def assign_coordinates(g: Graph, anchors: AnchorSet) -> VcTable:
    """One ideal (lossless) flood per anchor; coordinate i is the hop count to anchor i."""
    floods = [bfs_distances(g, a) for a in anchors]
    for v in range(g.n):
        for a, dist in zip(anchors, floods):
            if dist[v] is None:
                raise UnreachableNodeError(v, a)
    rows = tuple(tuple(dist[v] for dist in floods) for v in range(g.n))
    return VcTable(rows, anchors)


def _components(g: Graph, members) -> int:
    members = set(members)
    seen = set()
    count = 0
    for m in sorted(members):
        if m in seen:
            continue
        count += 1
        stack = [m]
        seen.add(m)
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                if v in members and v not in seen:
                    seen.add(v)
                    stack.append(v)
    return count


def find_vc_zones(g: Graph, t: VcTable) -> list[VcZone]:
    groups: dict[tuple, list[int]] = defaultdict(list)
    for v, row in enumerate(t.rows):
        groups[row].append(v)
    zones = []
    for coord, members in groups.items():
        if len(members) < 2:
            continue
        span = 0
        for m in members:
            dist = bfs_distances(g, m)
            for other in members:
                if dist[other] is None:
                    span = math.inf
                elif dist[other] > span:
                    span = dist[other]
        zones.append(VcZone(coord, frozenset(members), span, _components(g, members) == 1))
    zones.sort(key=lambda z: (-len(z.members), z.coordinate))
    return zones
