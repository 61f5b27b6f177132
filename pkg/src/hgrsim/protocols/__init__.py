"""Per-hop routing procedures and a name -> protocol registry."""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Callable

from ..errors import InvalidParameter
from ..metrics import Metric
from .base import DELIVER, DropReason, Mode, Packet, PlanarGraph, StepAction, Views
from .geographic import gf_step, gpsr_step, planarize_gabriel
from .hybrid import hgr_step
from .virtual import DEFAULT_DETOUR_BUDGET, bvr_step, lcr_step, sp_route, sp_step, vcap_step

PROTOCOL_NAMES = ("sp", "gf", "gpsr", "vcap", "lcr", "bvr", "hgr")


@dataclass(frozen=True)
class Protocol:
    name: str
    step: Callable[[Packet, int, Views], StepAction]
    initial_mode: Mode
    modes: frozenset
    needs_vc: bool = False

    def new_packet(self, src: int, dst: int, views: Views, ttl: int) -> Packet:
        dest_vc = views.require_vc()[dst] if self.needs_vc else None
        return Packet(src=src, dest_id=dst, dest_pos=views.positions[dst], dest_vc=dest_vc,
                      mode=self.initial_mode, ttl=ttl)


def get_protocol(name: str, metric: Metric | str = Metric.VC_EUCLIDEAN,
                 detour_budget: int = DEFAULT_DETOUR_BUDGET) -> Protocol:
    """Build a protocol by config name.  `metric` applies to vcap and lcr."""
    metric = Metric.parse(metric) if isinstance(metric, str) else metric
    G, F = Mode.GREEDY_GEO, Mode.FACE
    V, VB = Mode.VC_GREEDY, Mode.VC_BACKTRACK
    if name == "sp":
        return Protocol("sp", sp_step, G, frozenset({G}))
    if name == "gf":
        return Protocol("gf", gf_step, G, frozenset({G}))
    if name == "gpsr":
        return Protocol("gpsr", gpsr_step, G, frozenset({G, F}))
    if metric is Metric.GEO_EUCLIDEAN and name in ("vcap", "lcr"):
        raise InvalidParameter(f"{name} needs a virtual-coordinate metric")
    if name == "vcap":
        step = partial(vcap_step, detour_budget=detour_budget, metric=metric)
        return Protocol("vcap", step, V, frozenset({V}), needs_vc=True)
    if name == "lcr":
        return Protocol("lcr", partial(lcr_step, metric=metric), V,
                        frozenset({V, Mode.RECORDED_BACKTRACK}), needs_vc=True)
    if name == "bvr":
        return Protocol("bvr", bvr_step, V, frozenset({V, Mode.ANCHOR_FALLBACK}), needs_vc=True)
    if name == "hgr":
        return Protocol("hgr", hgr_step, G, frozenset({G, V, VB, Mode.RECORDED_BACKTRACK}), needs_vc=True)
    raise InvalidParameter(f"unknown protocol {name!r}")


__all__ = [
    "DELIVER", "DropReason", "Mode", "Packet", "PlanarGraph", "Protocol", "PROTOCOL_NAMES",
    "StepAction", "Views", "bvr_step", "get_protocol", "gf_step", "gpsr_step", "hgr_step",
    "lcr_step", "planarize_gabriel", "sp_route", "sp_step", "vcap_step",
]
