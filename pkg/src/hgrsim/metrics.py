"""Distance measures over positions and virtual coordinates, and forwarding sets."""
from __future__ import annotations

import math
from enum import Enum
from typing import Callable, Iterable, Sequence

from .errors import DimensionMismatch, InvalidParameter, MissingView


class Metric(str, Enum):
    GEO_EUCLIDEAN = "geo-ed"
    VC_EUCLIDEAN = "vc-ed"
    VC_MANHATTAN = "vc-md"
    VC_SEMI_MANHATTAN = "vc-smd"

    @classmethod
    def parse(cls, text: str) -> "Metric":
        try:
            return cls(text.strip())
        except ValueError:
            raise InvalidParameter(f"unknown metric {text!r}") from None

    @property
    def symmetric(self) -> bool:
        return self is not Metric.VC_SEMI_MANHATTAN

    @property
    def is_vc(self) -> bool:
        return self is not Metric.GEO_EUCLIDEAN


VC_METRICS = (Metric.VC_EUCLIDEAN, Metric.VC_MANHATTAN, Metric.VC_SEMI_MANHATTAN)


def geo_euclidean(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _check_dims(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"coordinate dimensions differ: {len(u)} vs {len(v)}")


def vc_euclidean(u: Sequence[int], v: Sequence[int]) -> float:
    _check_dims(u, v)
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(u, v)))


def vc_manhattan(u: Sequence[int], v: Sequence[int]) -> float:
    _check_dims(u, v)
    return float(sum(abs(a - b) for a, b in zip(u, v)))


def vc_semi_manhattan(u: Sequence[int], dest: Sequence[int]) -> float:
    """Sum of the components where the holder's hop count exceeds the destination's.

    Asymmetric: vc_semi_manhattan((0, 0), (5, 5)) == 0 but the reverse is 10.
    """
    _check_dims(u, dest)
    return float(sum(a - b for a, b in zip(u, dest) if a > b))


_FUNCS: dict[Metric, Callable] = {
    Metric.GEO_EUCLIDEAN: geo_euclidean,
    Metric.VC_EUCLIDEAN: vc_euclidean,
    Metric.VC_MANHATTAN: vc_manhattan,
    Metric.VC_SEMI_MANHATTAN: vc_semi_manhattan,
}


def distance_fn(metric: Metric | str) -> Callable:
    if not isinstance(metric, Metric):
        metric = Metric.parse(metric)
    return _FUNCS[metric]


def distance(metric: Metric | str, u, v) -> float:
    return distance_fn(metric)(u, v)


def forwarding_set(current: int, neighbors: Iterable[int], dest, metric: Metric | str, views) -> set[int]:
    """Neighbors strictly closer to `dest` than `current` is.

    `views` maps node id -> coordinate (perceived position for geo-ed, VC
    vector otherwise); `dest` is the destination's coordinate of the same kind.
    """
    fn = distance_fn(metric)
    here = fn(_lookup(views, current), dest)
    return {v for v in neighbors if v != current and fn(_lookup(views, v), dest) < here}


def _lookup(views, node):
    try:
        coord = views[node]
    except (KeyError, IndexError):
        raise MissingView(f"no coordinate for node {node}") from None
    if coord is None:
        raise MissingView(f"no coordinate for node {node}")
    return coord
