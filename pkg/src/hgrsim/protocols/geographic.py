"""Position-based forwarding: greedy (GF), Gabriel planarization and GPSR face routing."""
from __future__ import annotations

import math

from ..metrics import geo_euclidean
from ..topology import Graph
from .base import DELIVER, DropReason, Mode, Packet, PlanarGraph, StepAction, Views

TWO_PI = 2.0 * math.pi
_EPS = 1e-12
# a crossing must beat the last one by this relative margin; an edge ending at
# the face origin otherwise "crosses" an ulp closer and flips faces forever
_CROSS_TOL = 1e-9


def greedy_next(current: int, views: Views, dest_pos) -> int | None:
    """Closest strictly-closer neighbor by perceived position (ties -> lowest id)."""
    pos = views.positions
    here = geo_euclidean(pos[current], dest_pos)
    best, best_d = None, here
    for v in views.graph.neighbors(current):
        dv = geo_euclidean(pos[v], dest_pos)
        if dv < best_d:
            best, best_d = v, dv
    return best


def gf_step(pkt: Packet, current: int, views: Views) -> StepAction:
    if current == pkt.dest_id:
        return DELIVER
    nxt = greedy_next(current, views, pkt.dest_pos)
    if nxt is None:
        return StepAction.drop(DropReason.NO_PROGRESS)
    return StepAction.forward(nxt)


def planarize_gabriel(g: Graph, positions) -> PlanarGraph:
    """Keep (u, v) unless some other neighbor of u sits strictly inside the disk on diameter uv."""
    kept = []
    for u in range(g.n):
        ux, uy = positions[u]
        nbrs = g.neighbors(u)
        keep = []
        for v in nbrs:
            vx, vy = positions[v]
            mx, my = (ux + vx) / 2.0, (uy + vy) / 2.0
            r = math.hypot(ux - vx, uy - vy) / 2.0
            if not any(w != v and math.hypot(positions[w][0] - mx, positions[w][1] - my) < r for w in nbrs):
                keep.append(v)
        kept.append(tuple(keep))
    return PlanarGraph(tuple(kept))


def ccw_first(positions, center: int, ref_point, candidates) -> int | None:
    """First candidate counterclockwise about `center` from the ray toward `ref_point`.

    A candidate lying exactly on the reference ray counts as a full turn, so
    the node we arrived from is only chosen when nothing else is available.
    """
    cx, cy = positions[center]
    base = math.atan2(ref_point[1] - cy, ref_point[0] - cx)
    best, best_key = None, None
    for v in candidates:
        vx, vy = positions[v]
        a = (math.atan2(vy - cy, vx - cx) - base) % TWO_PI
        if a <= _EPS:
            a = TWO_PI
        key = (a, v)
        if best_key is None or key < best_key:
            best, best_key = v, key
    return best


def segment_intersection(p1, p2, q1, q2):
    """Intersection point of segments p1p2 and q1q2, excluding p1 itself; None if disjoint."""
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    denom = rx * sy - ry * sx
    if abs(denom) < _EPS:
        return None
    qpx, qpy = q1[0] - p1[0], q1[1] - p1[1]
    t = (qpx * sy - qpy * sx) / denom
    u = (qpx * ry - qpy * rx) / denom
    if _EPS < t <= 1.0 + _EPS and -_EPS <= u <= 1.0 + _EPS:
        return (p1[0] + t * rx, p1[1] + t * ry)
    return None


def _enter_face(pkt: Packet, current: int, views: Views) -> StepAction:
    planar = views.require_planar()
    pos = views.positions
    pkt.switch(Mode.FACE)
    pkt.void_distance = geo_euclidean(pos[current], pkt.dest_pos)
    pkt.face_origin = pkt.face_point = pos[current]
    nxt = ccw_first(pos, current, pkt.dest_pos, planar.neighbors(current))
    if nxt is None:
        return StepAction.drop(DropReason.NO_PROGRESS)
    pkt.face_edge = (current, nxt)
    return StepAction.forward(nxt)


def _face_change(pkt: Packet, current: int, nxt: int, views: Views, nbrs) -> tuple[int, bool]:
    """Switch faces while the chosen edge crosses origin->dest closer than the last crossing."""
    pos = views.positions
    changed = False
    for _ in range(len(nbrs)):
        ip = segment_intersection(pos[current], pos[nxt], pkt.face_origin, pkt.dest_pos)
        if ip is None:
            break
        last = geo_euclidean(pkt.face_point, pkt.dest_pos)
        if not geo_euclidean(ip, pkt.dest_pos) < last * (1 - _CROSS_TOL):
            break
        pkt.face_point = ip
        nxt = ccw_first(pos, current, pos[nxt], nbrs)
        pkt.face_edge = (current, nxt)
        changed = True
    return nxt, changed


def gpsr_step(pkt: Packet, current: int, views: Views) -> StepAction:
    if current == pkt.dest_id:
        return DELIVER
    pos = views.positions
    if pkt.mode == Mode.FACE:
        if geo_euclidean(pos[current], pkt.dest_pos) < pkt.void_distance:
            pkt.switch(Mode.GREEDY_GEO)
            pkt.void_distance = None
        else:
            nbrs = views.require_planar().neighbors(current)
            if not nbrs:
                return StepAction.drop(DropReason.NO_PROGRESS)
            nxt = ccw_first(pos, current, pos[pkt.prev], nbrs)
            nxt, changed = _face_change(pkt, current, nxt, views, nbrs)
            if not changed and (current, nxt) == pkt.face_edge:
                return StepAction.drop(DropReason.LOOP_DETECTED)
            return StepAction.forward(nxt)
    nxt = greedy_next(current, views, pkt.dest_pos)
    if nxt is None:
        return _enter_face(pkt, current, views)
    return StepAction.forward(nxt)
