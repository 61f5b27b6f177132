"""Delivery ratio and stretch of every protocol across radio ranges.

    python3 scripts/compare_protocols.py --ranges 85,100 --seeds 10 --out results/compare.csv
"""
import argparse
from collections import defaultdict
from pathlib import Path

import numpy as np

from hgrsim.errors import ConnectivityError
from hgrsim.harness import ScenarioConfig, run_experiment, summary_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ranges", default="70,85,100")
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--n", type=int, default=250)
    ap.add_argument("--pairs", default="500")
    ap.add_argument("--out", type=Path, default=None, help="optional summary CSV")
    args = ap.parse_args()

    results = []
    for r in (float(x) for x in args.ranges.split(",")):
        cfg = ScenarioConfig(n=args.n, radio_range=r, pairs=args.pairs)
        agg = defaultdict(lambda: ([], []))
        skipped = 0
        for s in range(1, args.seeds + 1):
            try:
                res = run_experiment(cfg, s, with_anomaly=False)
            except ConnectivityError:
                skipped += 1
                continue
            results.append(res)
            for row in res.summary:
                agg[row.protocol][0].append(row.delivery_ratio)
                if row.mean_stretch is not None:
                    agg[row.protocol][1].append(row.mean_stretch)
        print(f"range {r:g}: {args.seeds - skipped} scenarios ({skipped} not connectable)")
        for proto, (dr, st) in agg.items():
            stretch = f"{np.mean(st):.3f}" if st else "-"
            print(f"  {proto:5s} delivery {np.mean(dr):.4f}  stretch {stretch}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(summary_csv(results))


if __name__ == "__main__":
    main()
