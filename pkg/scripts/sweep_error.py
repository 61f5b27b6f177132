"""Localization-error sweep: mean delivery and stretch for position-based and hybrid routing."""
import argparse

import numpy as np

from hgrsim.harness import ScenarioConfig, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", default="0,0.1,0.2,0.4")
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--range", type=float, default=100.0)
    ap.add_argument("--protocols", default="gf,gpsr,hgr")
    args = ap.parse_args()

    protos = tuple(args.protocols.split(","))
    cfg = ScenarioConfig(radio_range=args.range, protocols=protos, pairs="500")
    levels = args.levels.split(",")
    _, results = sweep(cfg, "error", levels, seeds=args.seeds)
    print("error  " + "  ".join(f"{p:>15s}" for p in protos))
    for i, level in enumerate(levels):
        chunk = results[i * args.seeds:(i + 1) * args.seeds]
        cells = []
        for p in protos:
            rows = [row for res in chunk for row in res.summary if row.protocol == p]
            st = [row.mean_stretch for row in rows if row.mean_stretch is not None]
            cells.append(f"{np.mean([row.delivery_ratio for row in rows]):.3f}/{np.mean(st):.2f}")
        print(f"{float(level):5.2f}  " + "  ".join(f"{c:>15s}" for c in cells))
    print("(cells are delivery/stretch)")


if __name__ == "__main__":
    main()
