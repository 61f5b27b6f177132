"""Hop-by-hop packet driver."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter
from .protocols import DropReason, Mode, Protocol, Views
from .topology import Graph


@dataclass(frozen=True)
class RouteOutcome:
    src: int
    dst: int
    delivered: bool
    hops: int
    path: tuple[int, ...]
    drop_reason: DropReason | None
    mode_transitions: tuple[tuple[int, Mode], ...]
    hop_modes: tuple[Mode, ...]
    optimal_hops: int | None

    @property
    def stretch(self) -> float | None:
        if not self.delivered or not self.optimal_hops:
            return None
        return self.hops / self.optimal_hops


def route_packet(g: Graph, views: Views, protocol: Protocol, src: int, dst: int,
                 ttl: int | None = None) -> RouteOutcome:
    if ttl is None:
        ttl = 4 * g.n
    if ttl < 1:
        raise InvalidParameter("ttl must be at least 1")
    if not (0 <= src < g.n and 0 <= dst < g.n):
        raise InvalidParameter(f"node id out of range: {src}->{dst}")

    pkt = protocol.new_packet(src, dst, views, ttl)
    hop_modes = []
    current = src
    delivered, reason = False, None
    while True:
        action = protocol.step(pkt, current, views)
        if action.kind == "deliver":
            delivered = True
            break
        if action.kind == "drop":
            reason = action.reason
            break
        nxt = action.next
        if not g.has_edge(current, nxt):
            raise RuntimeError(f"{protocol.name} forwarded {current}->{nxt}, which is not a link")
        if pkt.hops >= ttl:
            reason = DropReason.TTL_EXPIRED
            break
        hop_modes.append(pkt.mode)
        pkt.path.append(nxt)
        pkt.visited.add(nxt)
        current = nxt

    optimal = views.sink_hops(dst)[src]
    return RouteOutcome(src, dst, delivered, pkt.hops, tuple(pkt.path), reason,
                        tuple(pkt.transitions), tuple(hop_modes), optimal)


def run_pairset(g: Graph, views: Views, protocol: Protocol, pairs, ttl: int | None = None) -> list[RouteOutcome]:
    return [route_packet(g, views, protocol, s, d, ttl) for s, d in pairs]
