"""Scenario construction, per-protocol routing runs, aggregation and CSV output."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..anomaly import AnomalyReport, build_report
from ..engine import RouteOutcome, run_pairset
from ..errors import ConnectivityError, InvalidParameter
from ..protocols import Mode, Views, get_protocol
from ..topology import (PRNG_NAME, Deployment, Graph, build_graph, derive_seed, draw_positions,
                        generate_deployment, inject_localization_error, is_connected, make_rng,
                        maybe_connected)
from ..vcs import VcTable, assign_coordinates, select_anchors
from .config import ScenarioConfig, parse_pairs

MAX_RETRIES = 1000
AUTO_PAIRS = 500
VC_PROTOCOLS = {"vcap", "lcr", "bvr", "hgr"}

PACKET_COLUMNS = ["seed", "protocol", "src", "dst", "delivered", "hops", "optimal", "drop_reason", "modes"]
MODE_COLUMNS = [f"frac_{m.value}" for m in Mode]
SUMMARY_COLUMNS = (["seed", "protocol", "n_packets", "delivery_ratio", "mean_stretch", "p95_stretch",
                    "mean_hops"] + MODE_COLUMNS
                   + ["mean_degree", "retries", "local_minima", "zones_disconnected"])
SWEEP_COLUMNS = ["axis", "value"] + SUMMARY_COLUMNS
SWEEP_AXES = {"density": "radio_range", "error": "loc_error", "anchors": "anchors_k"}

SEED_DERIVATION = ("deployment seed = SeedSequence([seed, retry]); localization error seed = "
                   "SeedSequence([seed, retry, 1]); pair sampling seed = SeedSequence([seed, 2]); "
                   "each drives a PCG64 generator")


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.6g}"


@dataclass
class Scenario:
    seed: int
    deployment: Deployment
    graph: Graph
    vc: VcTable
    views: Views
    pairs: list
    retries: int
    ttl: int


@dataclass
class SummaryRow:
    seed: int
    protocol: str
    n_packets: int
    delivery_ratio: float
    mean_stretch: float | None
    p95_stretch: float | None
    mean_hops: float | None
    mode_fractions: dict
    mean_degree: float
    retries: int
    local_minima: int | None = None
    zones_disconnected: int | None = None

    def cells(self) -> list[str]:
        vals = [self.seed, self.protocol, self.n_packets, self.delivery_ratio, self.mean_stretch,
                self.p95_stretch, self.mean_hops]
        vals += [self.mode_fractions.get(m, 0.0) for m in Mode]
        vals += [self.mean_degree, self.retries, self.local_minima, self.zones_disconnected]
        return [v if isinstance(v, str) else fmt(v) for v in vals]


@dataclass
class ExperimentResult:
    scenario: Scenario
    outcomes: dict = field(default_factory=dict)  # protocol -> list[RouteOutcome]
    summary: list = field(default_factory=list)
    anomaly: AnomalyReport | None = None


def connected_deployment(cfg: ScenarioConfig, seed: int) -> tuple[Deployment, Graph, int]:
    """Regenerate with successive sub-seeds until the unit-disk graph is connected."""
    if cfg.node_file:
        d = Deployment.from_text(Path(cfg.node_file).read_text())
        g = build_graph(d)
        if not is_connected(g):
            raise ConnectivityError(f"node file {cfg.node_file} describes a disconnected network")
        return d, g, 0
    field_size = (cfg.field_w, cfg.field_h)
    for retry in range(MAX_RETRIES):
        sub = derive_seed(seed, retry)
        # cheap matrix test first; only a connected draw becomes a Deployment
        if not maybe_connected(draw_positions(cfg.n, field_size, sub), cfg.radio_range):
            continue
        d = generate_deployment(cfg.n, field_size, cfg.radio_range, sub)
        g = build_graph(d)
        if is_connected(g):
            return d, g, retry
    raise ConnectivityError(f"no connected deployment after {MAX_RETRIES} attempts "
                            f"(n={cfg.n}, range={cfg.radio_range}, seed={seed})")


def sample_pairs(which, n: int, seed: int) -> list[tuple[int, int]]:
    which = parse_pairs(which) if isinstance(which, str) else which
    if which == "auto":
        which = AUTO_PAIRS if n > 100 else "all"
    if which == "all":
        return [(s, d) for s in range(n) for d in range(n) if s != d]
    if isinstance(which, int):
        rng = make_rng(derive_seed(seed, 2))
        pairs = []
        while len(pairs) < which:
            s, d = (int(x) for x in rng.integers(0, n, 2))
            if s != d:
                pairs.append((s, d))
        return pairs
    for s, d in which:
        if not (0 <= s < n and 0 <= d < n):
            raise InvalidParameter(f"pair {s}>{d} outside 0..{n - 1}")
    return list(which)


def build_scenario(cfg: ScenarioConfig, seed: int | None = None) -> Scenario:
    seed = cfg.seed if seed is None else seed
    d, g, retries = connected_deployment(cfg, seed)
    if cfg.loc_error > 0:
        d = inject_localization_error(d, cfg.loc_error, derive_seed(seed, retries, 1))
    anchors = select_anchors(g, d, cfg.anchors_k, cfg.anchor_strategy)
    vc = assign_coordinates(g, anchors)
    views = Views.build(d, g, vc)
    pairs = sample_pairs(cfg.pairs, g.n, seed)
    return Scenario(seed, d, g, vc, views, pairs, retries, cfg.ttl_for(g.n))


def summarize(seed: int, protocol: str, outs: list[RouteOutcome], scen: Scenario,
              report: AnomalyReport | None) -> SummaryRow:
    delivered = [o for o in outs if o.delivered]
    stretches = [o.stretch for o in delivered if o.stretch is not None]
    modes = [m for o in outs for m in o.hop_modes]
    fractions = {m: (modes.count(m) / len(modes) if modes else 0.0) for m in Mode}
    row = SummaryRow(
        seed=seed, protocol=protocol, n_packets=len(outs),
        delivery_ratio=len(delivered) / len(outs) if outs else 0.0,
        mean_stretch=float(np.mean(stretches)) if stretches else None,
        p95_stretch=float(np.percentile(stretches, 95)) if stretches else None,
        mean_hops=float(np.mean([o.hops for o in delivered])) if delivered else None,
        mode_fractions=fractions, mean_degree=scen.graph.mean_degree(), retries=scen.retries,
    )
    if report is not None and protocol in VC_PROTOCOLS:
        row.local_minima = report.vc_local_minima_all_metrics
        row.zones_disconnected = report.zones_disconnected
    return row


def run_experiment(cfg: ScenarioConfig, seed: int | None = None, with_anomaly: bool = True) -> ExperimentResult:
    scen = build_scenario(cfg, seed)
    report = build_report(scen.graph, scen.deployment, scen.vc) if with_anomaly else None
    result = ExperimentResult(scen, anomaly=report)
    for name in cfg.protocols:
        proto = get_protocol(name, metric=cfg.metric)
        outs = run_pairset(scen.graph, scen.views, proto, scen.pairs, scen.ttl)
        result.outcomes[name] = outs
        result.summary.append(summarize(scen.seed, name, outs, scen, report))
    return result


def packet_rows(result: ExperimentResult):
    seed = result.scenario.seed
    for proto, outs in result.outcomes.items():
        for o in outs:
            modes = "|".join(f"{h}:{m.value}" for h, m in o.mode_transitions)
            yield [fmt(seed), proto, fmt(o.src), fmt(o.dst), fmt(o.delivered), fmt(o.hops),
                   fmt(o.optimal_hops), o.drop_reason.value if o.drop_reason else "", modes]


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def packets_csv(results) -> str:
    return _csv(PACKET_COLUMNS, (r for res in results for r in packet_rows(res)))


def summary_csv(results) -> str:
    return _csv(SUMMARY_COLUMNS, (row.cells() for res in results for row in res.summary))


def anomaly_csv(results) -> str:
    reps = [(res.scenario.seed, res.anomaly) for res in results if res.anomaly is not None]
    if not reps:
        return ""
    header = ["seed"] + reps[0][1].csv_header()
    return _csv(header, ([fmt(s)] + [str(v) for v in rep.as_dict().values()] for s, rep in reps))


def sweep(cfg: ScenarioConfig, axis: str, values, seeds: int = 1) -> tuple[str, list[ExperimentResult]]:
    """One experiment per (value, seed); returns the flat summary CSV and the raw results."""
    if axis not in SWEEP_AXES:
        raise InvalidParameter(f"unknown sweep axis {axis!r}; expected one of {sorted(SWEEP_AXES)}")
    key = SWEEP_AXES[axis]
    cast = int if key == "anchors_k" else float
    rows, results = [], []
    for value in values:
        vcfg = cfg.with_value(**{key: cast(value)})
        for i in range(seeds):
            res = run_experiment(vcfg, cfg.seed + i, with_anomaly=False)
            results.append(res)
            rows.extend([axis, fmt(cast(value))] + row.cells() for row in res.summary)
    return _csv(SWEEP_COLUMNS, rows), results


def meta_text(cfg: ScenarioConfig, results, command: str) -> str:
    lines = [f"command = {command}", f"prng = {PRNG_NAME}", f"seed_derivation = {SEED_DERIVATION}",
             f"max_connectivity_retries = {MAX_RETRIES}"]
    for res in results:
        lines.append(f"retries[seed={res.scenario.seed}] = {res.scenario.retries}")
    lines.append("")
    lines.append("[config]")
    return "\n".join(lines) + "\n" + cfg.to_text()
