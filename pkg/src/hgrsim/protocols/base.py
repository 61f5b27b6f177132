"""Packet state, step actions and the per-scenario views handed to step functions."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..errors import ProtocolConfigError
from ..metrics import geo_euclidean
from ..topology import Deployment, Graph, bfs_distances
from ..vcs import VcTable


class Mode(str, Enum):
    GREEDY_GEO = "greedy_geo"
    FACE = "face"
    VC_GREEDY = "vc_greedy"
    VC_BACKTRACK = "vc_backtrack"
    RECORDED_BACKTRACK = "recorded_backtrack"
    ANCHOR_FALLBACK = "anchor_fallback"


class DropReason(str, Enum):
    TTL_EXPIRED = "ttl_expired"
    NO_PROGRESS = "no_progress"
    LOOP_DETECTED = "loop_detected"
    UNREACHABLE_STATE = "unreachable_state"


@dataclass(frozen=True)
class StepAction:
    kind: str  # "forward" | "deliver" | "drop"
    next: int | None = None
    reason: DropReason | None = None

    @classmethod
    def forward(cls, nxt: int) -> "StepAction":
        return cls("forward", next=nxt)

    @classmethod
    def drop(cls, reason: DropReason) -> "StepAction":
        return cls("drop", reason=reason)

    @property
    def is_forward(self) -> bool:
        return self.kind == "forward"


DELIVER = StepAction("deliver")


@dataclass
class PlanarGraph:
    """Per-node retained neighbor lists after Gabriel planarization.

    Under localization error each node planarizes from its own view of its
    neighbors, so the kept relation need not be symmetric.
    """
    adjacency: tuple[tuple[int, ...], ...]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs}


@dataclass
class Views:
    """Everything a node may consult locally: topology, perceived positions, VCs."""
    graph: Graph
    positions: tuple
    vc: VcTable | None = None
    planar: PlanarGraph | None = None
    _sink_hops: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, d: Deployment, g: Graph, vc: VcTable | None = None, planar: bool = True) -> "Views":
        v = cls(g, d.perceived_positions, vc)
        if planar:
            from .geographic import planarize_gabriel
            v.planar = planarize_gabriel(g, d.perceived_positions)
        return v

    def require_vc(self) -> VcTable:
        if self.vc is None:
            raise ProtocolConfigError("protocol needs a VcTable but none was supplied")
        return self.vc

    def require_planar(self) -> PlanarGraph:
        if self.planar is None:
            raise ProtocolConfigError("protocol needs a planarized graph but none was supplied")
        return self.planar

    def sink_hops(self, dst: int) -> list:
        """Hop counts to dst as a sink advertisement flood would set them (cached)."""
        hops = self._sink_hops.get(dst)
        if hops is None:
            hops = self._sink_hops[dst] = bfs_distances(self.graph, dst)
        return hops

    def geo_dist(self, node: int, target) -> float:
        return geo_euclidean(self.positions[node], target)


@dataclass
class Packet:
    src: int
    dest_id: int
    dest_pos: tuple
    dest_vc: tuple | None
    mode: Mode
    ttl: int
    path: list = field(default_factory=list)
    visited: set = field(default_factory=set)
    transitions: list = field(default_factory=list)
    # void bookkeeping (GPSR face episodes and HGR VC episodes)
    void_distance: float | None = None
    face_origin: tuple | None = None
    face_point: tuple | None = None
    face_edge: tuple | None = None
    # HGR dimension walk
    dim_cursor: int | None = None
    dims_tried: list = field(default_factory=list)
    resume_mode: Mode | None = None
    # VCap detours / BVR fallback / LCR stack
    stall_distance: float | None = None
    detours: int = 0
    fallback_anchor: int | None = None
    stack: list = field(default_factory=list)

    def __post_init__(self):
        if not self.path:
            self.path.append(self.src)
            self.visited.add(self.src)
        if not self.transitions:
            self.transitions.append((0, self.mode))

    @property
    def hops(self) -> int:
        return len(self.path) - 1

    @property
    def prev(self) -> int | None:
        return self.path[-2] if len(self.path) > 1 else None

    def switch(self, mode: Mode):
        if mode != self.mode:
            self.mode = mode
            self.transitions.append((self.hops, mode))
