"""How VC zones and local minima shrink as anchors are added."""
import argparse

import numpy as np

from hgrsim.anomaly import build_report
from hgrsim.harness import ScenarioConfig, build_scenario
from hgrsim.vcs import assign_coordinates, select_anchors


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--anchors", default="2,3,4,6,8")
    ap.add_argument("--strategy", default="corners", choices=["corners", "perimeter", "random"])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--range", type=float, default=100.0)
    args = ap.parse_args()

    cfg = ScenarioConfig(radio_range=args.range, anchor_strategy=args.strategy, pairs="1")
    scens = [build_scenario(cfg, s) for s in range(1, args.seeds + 1)]
    print(" K   zones  expanded  disconnected  local_min/pair  stalls(vc-ed)/pair")
    for k in (int(x) for x in args.anchors.split(",")):
        reps = []
        for sc in scens:
            t = assign_coordinates(sc.graph, select_anchors(sc.graph, sc.deployment, k, args.strategy))
            reps.append(build_report(sc.graph, sc.deployment, t))
        npairs = reps[0].n_pairs
        print(f"{k:2d} {np.mean([r.zones_total for r in reps]):7.1f} "
              f"{np.mean([r.zones_expanded for r in reps]):9.1f} "
              f"{np.mean([r.zones_disconnected for r in reps]):13.1f} "
              f"{np.mean([r.vc_local_minima_all_metrics for r in reps]) / npairs:15.5f} "
              f"{np.mean([r.equal_distance_stalls['vc-ed'] for r in reps]) / npairs:19.5f}")


if __name__ == "__main__":
    main()
