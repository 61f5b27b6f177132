"""Command line entry point: `hgrsim run|sweep|anomaly <config>`."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ..errors import ConfigParseError, ConfigValidationError, ConnectivityError
from .config import load_config
from .experiment import (anomaly_csv, build_scenario, meta_text, packets_csv, run_experiment,
                         summary_csv, sweep)
from ..anomaly import build_report

log = logging.getLogger("hgrsim")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", type=Path)
    common.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    common.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds from the config seed")

    p = argparse.ArgumentParser(prog="hgrsim", description="Geographic / virtual-coordinate routing simulator")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="route the pair set under every configured protocol")
    sw = sub.add_parser("sweep", parents=[common], help="repeat the experiment along one parameter axis")
    sw.add_argument("--axis", required=True, choices=["density", "error", "anchors"])
    sw.add_argument("--values", required=True, help="comma separated values (may be empty)")
    sub.add_parser("anomaly", parents=[common], help="census of VC failure modes")
    return p


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if args.seeds < 1:
        parser.error("--seeds must be at least 1")
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    try:
        cfg = load_config(args.config)
    except (ConfigParseError, ConfigValidationError, OSError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    seeds = [cfg.seed + i for i in range(args.seeds)]
    command = " ".join(["hgrsim"] + (argv if argv is not None else sys.argv[1:]))

    try:
        if args.command == "run":
            results = []
            for s in seeds:
                results.append(run_experiment(cfg, s))
                for row in results[-1].summary:
                    log.info("seed %d %-5s delivery %.4f stretch %s", s, row.protocol, row.delivery_ratio,
                             "-" if row.mean_stretch is None else f"{row.mean_stretch:.3f}")
            (out / "packets.csv").write_text(packets_csv(results))
            (out / "summary.csv").write_text(summary_csv(results))
            (out / "anomaly.csv").write_text(anomaly_csv(results))
            (out / "meta.txt").write_text(meta_text(cfg, results, command))
        elif args.command == "sweep":
            values = [v.strip() for v in args.values.split(",") if v.strip()]
            text, results = sweep(cfg, args.axis, values, seeds=args.seeds)
            (out / "summary.csv").write_text(text)
            (out / "packets.csv").write_text(packets_csv(results))
            (out / "meta.txt").write_text(meta_text(cfg, results, command))
        else:
            rows = []
            for s in seeds:
                scen = build_scenario(cfg, s)
                rep = build_report(scen.graph, scen.deployment, scen.vc)
                print(f"[seed {s}]\n{rep.to_kv()}")
                rows.append((s, rep))
            header = "seed," + ",".join(rows[0][1].csv_header()) + "\n"
            body = "".join(f"{s}," + rep.to_csv(header=False) for s, rep in rows)
            (out / "anomaly.csv").write_text(header + body)
    except ConnectivityError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
