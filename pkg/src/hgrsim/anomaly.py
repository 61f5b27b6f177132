"""Scenario-wide census of virtual-coordinate failure modes.

Every counter is over ordered (node, destination) pairs with node != destination.
Comparisons use integer keys (squared Euclidean, Manhattan, semi-Manhattan on
hop counts), so ties are exact.
"""
from __future__ import annotations

import io
import csv
from dataclasses import dataclass, field

import numpy as np

from .metrics import Metric, VC_METRICS
from .topology import Deployment, Graph
from .vcs import VcTable, find_vc_zones

WITNESS_CAP = 100


def _pair_keys(coords: np.ndarray, metric: Metric) -> np.ndarray:
    """keys[d, u] = exact comparable distance from node u to destination d's VC."""
    diff = coords[None, :, :] - coords[:, None, :]  # [d, u, k] = u_k - d_k
    if metric is Metric.VC_EUCLIDEAN:
        return (diff * diff).sum(axis=2)
    if metric is Metric.VC_MANHATTAN:
        return np.abs(diff).sum(axis=2)
    if metric is Metric.VC_SEMI_MANHATTAN:
        return np.clip(diff, 0, None).sum(axis=2)
    raise ValueError(f"{metric} is not a virtual-coordinate metric")


def _neighbor_table(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    width = max((g.degree(u) for u in range(g.n)), default=0)
    idx = np.zeros((g.n, max(width, 1)), dtype=np.int64)
    mask = np.zeros_like(idx, dtype=bool)
    for u, nbrs in enumerate(g.adjacency):
        idx[u, :len(nbrs)] = nbrs
        mask[u, :len(nbrs)] = True
    return idx, mask


def _scan(g: Graph, t: VcTable, metric: Metric):
    """Boolean [d, u] grids: forwarding set empty, and empty with an exact tie."""
    keys = _pair_keys(t.coords, metric)
    idx, mask = _neighbor_table(g)
    here = keys[:, :, None]
    nb = keys[:, idx]  # [d, u, slot]
    closer = (nb < here) & mask
    ties = (nb == here) & mask
    off_diag = ~np.eye(g.n, dtype=bool)
    empty = ~closer.any(axis=2) & off_diag
    return empty, empty & ties.any(axis=2)


def _witnesses(grid: np.ndarray) -> tuple[int, list[tuple[int, int]]]:
    d_idx, u_idx = np.nonzero(grid)
    order = np.lexsort((d_idx, u_idx))[:WITNESS_CAP]
    return int(grid.sum()), [(int(u_idx[i]), int(d_idx[i])) for i in order]


def count_equal_distance_stalls(g: Graph, t: VcTable, m: Metric | str):
    """Pairs (u, d) whose VC forwarding set is empty while some neighbor ties u exactly."""
    m = Metric.parse(m) if isinstance(m, str) else m
    if not m.is_vc:
        raise ValueError("equal-distance stalls are defined for VC metrics only")
    if g.n < 2:
        return 0, []
    _, stall = _scan(g, t, m)
    return _witnesses(stall)


def count_local_minima(g: Graph, t: VcTable, metrics=VC_METRICS):
    """Pairs (u, d) with an empty forwarding set under every metric given."""
    metrics = [Metric.parse(m) if isinstance(m, str) else m for m in metrics]
    if not metrics:
        raise ValueError("need at least one metric")
    if g.n < 2:
        return 0, []
    grid = np.ones((g.n, g.n), dtype=bool)
    for m in metrics:
        grid &= _scan(g, t, m)[0]
    return _witnesses(grid)


@dataclass
class AnomalyReport:
    n_pairs: int
    equal_distance_stalls: dict = field(default_factory=dict)
    empty_forwarding_sets: dict = field(default_factory=dict)
    vc_local_minima_all_metrics: int = 0
    zones_total: int = 0
    zones_expanded: int = 0
    zones_disconnected: int = 0
    max_zone_span: int = 0
    density: float = 0.0
    witnesses: dict = field(default_factory=dict, repr=False)

    def as_dict(self) -> dict:
        out = {"n_pairs": self.n_pairs}
        for m in VC_METRICS:
            out[f"stalls_{m.value}"] = self.equal_distance_stalls.get(m.value, 0)
        for m in VC_METRICS:
            out[f"empty_fs_{m.value}"] = self.empty_forwarding_sets.get(m.value, 0)
        out.update(
            local_minima_all=self.vc_local_minima_all_metrics,
            zones_total=self.zones_total,
            zones_expanded=self.zones_expanded,
            zones_disconnected=self.zones_disconnected,
            max_zone_span=self.max_zone_span,
            mean_degree=f"{self.density:.6g}",
        )
        return out

    def to_kv(self) -> str:
        return "".join(f"{k} = {v}\n" for k, v in self.as_dict().items())

    def csv_header(self) -> list[str]:
        return list(self.as_dict())

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(self.csv_header())
        w.writerow(self.as_dict().values())
        return buf.getvalue()


def build_report(g: Graph, d: Deployment, t: VcTable) -> AnomalyReport:
    rep = AnomalyReport(n_pairs=g.n * (g.n - 1), density=g.mean_degree())
    if g.n >= 2:
        all_empty = np.ones((g.n, g.n), dtype=bool)
        for m in VC_METRICS:
            empty, stall = _scan(g, t, m)
            all_empty &= empty
            rep.equal_distance_stalls[m.value], rep.witnesses[f"stalls_{m.value}"] = _witnesses(stall)
            rep.empty_forwarding_sets[m.value] = int(empty.sum())
        rep.vc_local_minima_all_metrics, rep.witnesses["local_minima"] = _witnesses(all_empty)
    zones = find_vc_zones(g, t)
    rep.zones_total = len(zones)
    rep.zones_expanded = sum(z.expanded for z in zones)
    rep.zones_disconnected = sum(z.disconnected for z in zones)
    rep.max_zone_span = max((z.span_hops for z in zones), default=0)
    return rep
