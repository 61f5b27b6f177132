"""HGR: geographic greedy forwarding with a virtual-coordinate void traversal.

On a void the packet switches to virtual coordinates.  At every node it
first tries plain VC greedy: an unvisited neighbor strictly closer to the
destination's VC (Euclidean).  When that stalls (equal-distance ties, VC
zones) it works one dimension at a time, starting with the dimension whose
hop-count gap to the destination is widest:

* vc_greedy moves to an unvisited neighbor that shrinks the gap on the
  current dimension;
* vc_backtrack takes one hop toward that dimension's anchor (strictly smaller
  coordinate) and then retries vc_greedy on the same dimension;
* when neither move exists the next-widest untried dimension takes over.

Once every dimension is exhausted at a node the packet falls back on its
recorded path: it explores any remaining unvisited neighbor, otherwise it
steps back one recorded hop.  That search is systematic, so on a connected
graph the destination is always reached.  Greedy mode resumes at the first
node geographically closer to the destination than the void node.
"""
from __future__ import annotations

from ..metrics import geo_euclidean, vc_euclidean
from .base import DELIVER, DropReason, Mode, Packet, StepAction, Views
from .geographic import greedy_next


def _widest_dim(here, dest, exclude) -> int | None:
    best, best_gap = None, -1
    for i, (a, b) in enumerate(zip(here, dest)):
        if i in exclude:
            continue
        gap = abs(a - b)
        if gap > best_gap:
            best, best_gap = i, gap
    return best


def _closest(cands, views: Views, dest_pos) -> int:
    pos = views.positions
    return min(cands, key=lambda v: (geo_euclidean(pos[v], dest_pos), v))


def _push(pkt: Packet, current: int, nxt: int) -> StepAction:
    pkt.stack.append(current)
    return StepAction.forward(nxt)


def _vc_walk(pkt: Packet, current: int, views: Views) -> StepAction:
    vc = views.vc
    here = vc[current]
    dest = pkt.dest_vc
    unvisited = [v for v in views.graph.neighbors(current) if v not in pkt.visited]
    if pkt.mode == Mode.RECORDED_BACKTRACK:
        # arrived by stepping back: give every dimension another chance here
        pkt.dims_tried = [pkt.dim_cursor]
        pkt.switch(Mode.VC_GREEDY)
    dist_here = vc_euclidean(here, dest)
    closer = [v for v in unvisited if vc_euclidean(vc[v], dest) < dist_here]
    if closer:
        pkt.switch(Mode.VC_GREEDY)
        return _push(pkt, current, _closest(closer, views, pkt.dest_pos))
    while True:
        d = pkt.dim_cursor
        if pkt.mode == Mode.VC_GREEDY:
            gap = abs(here[d] - dest[d])
            closer = [v for v in unvisited if abs(vc[v][d] - dest[d]) < gap]
            if closer:
                return _push(pkt, current, _closest(closer, views, pkt.dest_pos))
            pkt.switch(Mode.VC_BACKTRACK)
        back = [v for v in unvisited if vc[v][d] < here[d]]
        if back:
            nxt = _closest(back, views, pkt.dest_pos)
            action = _push(pkt, current, nxt)
            pkt.resume_mode = Mode.VC_GREEDY
            return action
        nxt_dim = _widest_dim(here, dest, pkt.dims_tried)
        if nxt_dim is None:
            break
        pkt.dim_cursor = nxt_dim
        pkt.dims_tried.append(nxt_dim)
        pkt.switch(Mode.VC_GREEDY)

    pkt.switch(Mode.RECORDED_BACKTRACK)
    if unvisited:
        return _push(pkt, current, _closest(unvisited, views, pkt.dest_pos))
    if not pkt.stack:
        return StepAction.drop(DropReason.NO_PROGRESS)
    return StepAction.forward(pkt.stack.pop())


def hgr_step(pkt: Packet, current: int, views: Views) -> StepAction:
    if current == pkt.dest_id:
        return DELIVER
    views.require_vc()
    if pkt.resume_mode is not None:
        pkt.switch(pkt.resume_mode)
        pkt.resume_mode = None
    here = geo_euclidean(views.positions[current], pkt.dest_pos)
    if pkt.mode != Mode.GREEDY_GEO:
        if here >= pkt.void_distance:
            return _vc_walk(pkt, current, views)
        pkt.switch(Mode.GREEDY_GEO)
        pkt.void_distance = pkt.dim_cursor = None
        pkt.dims_tried = []

    nxt = greedy_next(current, views, pkt.dest_pos)
    if nxt is not None:
        return _push(pkt, current, nxt)
    pkt.void_distance = here
    pkt.dim_cursor = _widest_dim(views.vc[current], pkt.dest_vc, ())
    pkt.dims_tried = [pkt.dim_cursor]
    pkt.switch(Mode.VC_GREEDY)
    return _vc_walk(pkt, current, views)
