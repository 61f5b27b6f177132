"""Virtual-coordinate forwarding: VCap-style detours, LCR-style recorded backtracking,
BVR-style anchor fallback, and the shortest-path baseline."""
from __future__ import annotations

from ..errors import UnreachableNodeError
from ..metrics import Metric, distance_fn, vc_semi_manhattan
from ..topology import Graph, bfs_distances
from .base import DELIVER, DropReason, Mode, Packet, StepAction, Views

DEFAULT_DETOUR_BUDGET = 3


def _best(cands, key):
    """argmin over `cands` by (key, id)."""
    best, best_k = None, None
    for v in cands:
        k = (key(v), v)
        if best_k is None or k < best_k:
            best, best_k = v, k
    return best


def sp_route(g: Graph, src: int, dst: int) -> list[int]:
    """BFS shortest path taking the lowest-id next hop among equally short options."""
    hops = bfs_distances(g, dst)
    if hops[src] is None:
        raise UnreachableNodeError(src)
    path = [src]
    while path[-1] != dst:
        here = path[-1]
        path.append(min(v for v in g.neighbors(here) if hops[v] == hops[here] - 1))
    return path


def sp_step(pkt: Packet, current: int, views: Views) -> StepAction:
    if current == pkt.dest_id:
        return DELIVER
    hops = views.sink_hops(pkt.dest_id)
    if hops[current] is None:
        return StepAction.drop(DropReason.UNREACHABLE_STATE)
    return StepAction.forward(min(v for v in views.graph.neighbors(current) if hops[v] == hops[current] - 1))


def vcap_step(pkt: Packet, current: int, views: Views,
              detour_budget: int = DEFAULT_DETOUR_BUDGET, metric: Metric = Metric.VC_EUCLIDEAN) -> StepAction:
    """Greedy on VC distance; after a stall, up to `detour_budget` forced forwards to
    the unvisited neighbor with the smallest distance before giving up.

    The detour counter resets only once the packet gets strictly closer than
    the stall point.
    """
    if current == pkt.dest_id:
        return DELIVER
    vc = views.require_vc()
    fn = distance_fn(metric)
    here_vc = vc[current]
    if here_vc == pkt.dest_vc:
        return StepAction.drop(DropReason.UNREACHABLE_STATE)
    here = fn(here_vc, pkt.dest_vc)
    if pkt.stall_distance is not None and here < pkt.stall_distance:
        pkt.stall_distance, pkt.detours = None, 0

    dist = {v: fn(vc[v], pkt.dest_vc) for v in views.graph.neighbors(current)}
    nxt = _best([v for v, d in dist.items() if d < here], dist.__getitem__)
    if nxt is not None:
        return StepAction.forward(nxt)

    if pkt.stall_distance is None:
        pkt.stall_distance = here
    if pkt.detours >= detour_budget:
        return StepAction.drop(DropReason.NO_PROGRESS)
    nxt = _best([v for v in dist if v not in pkt.visited], dist.__getitem__)
    if nxt is None:
        return StepAction.drop(DropReason.NO_PROGRESS)
    pkt.detours += 1
    return StepAction.forward(nxt)


def lcr_step(pkt: Packet, current: int, views: Views, metric: Metric = Metric.VC_EUCLIDEAN) -> StepAction:
    """Greedy on VC distance with a recorded path for systematic backtracking.

    Forwards to the closest unvisited neighbor while one is strictly closer.
    Otherwise the packet explores the best remaining unvisited neighbor, and
    only when none is left does it pop back one recorded hop.  This is a
    depth-first search, so on a connected graph it always reaches the
    destination after entering at most n distinct nodes.
    """
    if current == pkt.dest_id:
        return DELIVER
    vc = views.require_vc()
    fn = distance_fn(metric)
    here = fn(vc[current], pkt.dest_vc)
    unvisited = [v for v in views.graph.neighbors(current) if v not in pkt.visited]
    dist = {v: fn(vc[v], pkt.dest_vc) for v in unvisited}

    nxt = _best([v for v in unvisited if dist[v] < here], dist.__getitem__)
    if nxt is not None:
        pkt.switch(Mode.VC_GREEDY)
        pkt.stack.append(current)
        return StepAction.forward(nxt)

    pkt.switch(Mode.RECORDED_BACKTRACK)
    nxt = _best(unvisited, dist.__getitem__)
    if nxt is not None:
        pkt.stack.append(current)
        return StepAction.forward(nxt)
    if not pkt.stack:
        return StepAction.drop(DropReason.NO_PROGRESS)
    return StepAction.forward(pkt.stack.pop())


def bvr_step(pkt: Packet, current: int, views: Views) -> StepAction:
    """Greedy on semi-Manhattan distance; on a stall, walk toward the anchor the
    destination is closest to by strictly decreasing that coordinate."""
    if current == pkt.dest_id:
        return DELIVER
    vc = views.require_vc()
    nbrs = views.graph.neighbors(current)
    if pkt.mode == Mode.VC_GREEDY:
        here = vc_semi_manhattan(vc[current], pkt.dest_vc)
        dist = {v: vc_semi_manhattan(vc[v], pkt.dest_vc) for v in nbrs}
        nxt = _best([v for v, d in dist.items() if d < here], dist.__getitem__)
        if nxt is not None:
            return StepAction.forward(nxt)
        pkt.switch(Mode.ANCHOR_FALLBACK)

    if pkt.dest_id in nbrs:
        return StepAction.forward(pkt.dest_id)
    if pkt.fallback_anchor is None:
        dv = pkt.dest_vc
        pkt.fallback_anchor = min(range(len(dv)), key=lambda i: (dv[i], i))
    i = pkt.fallback_anchor
    cands = [v for v in nbrs if vc[v][i] < vc[current][i]]
    nxt = _best(cands, lambda v: vc_semi_manhattan(vc[v], pkt.dest_vc))
    if nxt is None:
        return StepAction.drop(DropReason.NO_PROGRESS)
    return StepAction.forward(nxt)
