"""Sweep the totality and closed-contour harnesses and tabulate alarms.

Alongside the harness verdicts (subspace continuity of each partial function)
the script counts alarms under a stricter reading: every preimage open in the
whole space, i.e. the domain is open and the function is locally constant on
it.  Use --show to print the first few alarming instances.
"""

import argparse
import time
from collections import Counter

from ordrep.relation import classify
from ordrep.sweep import exhaustive_instances, random_instances
from ordrep.topology import check_regular_preorder, closed_contours_harness, totality_harness


def open_preimages(f, tau):
    nb = tau.neighbourhoods
    for i, v in enumerate(f.values):
        if v is None:
            continue
        if any(nb[i] >> j & 1 and f.values[j] != v for j in range(f.ground.n)):
            return False
    return True


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--random", type=int, default=1000)
    ap.add_argument("--random-max-n", type=int, default=6)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--show", type=int, default=0)
    args = ap.parse_args()

    counts = Counter()
    shown = 0
    start = time.perf_counter()
    sources = [("exhaustive", exhaustive_instances(args.max_n)),
               ("random", random_instances(args.random, args.random_max_n, args.seed))]
    for source, instances in sources:
        for inst in instances:
            n = inst.relation.n
            counts[source, n, "instances"] += 1
            strict_ok = all(open_preimages(f, inst.topology) for f in inst.family)
            for harness in (totality_harness, closed_contours_harness):
                rep = harness(inst.relation, inst.topology, inst.family)
                key = (source, n, rep.harness)
                counts[key + ("met",)] += rep.hypotheses_met
                counts[key + ("alarm",)] += rep.alarm
                if rep.hypotheses_met and strict_ok:
                    counts[key + ("met-strict",)] += 1
                    counts[key + ("alarm-strict",)] += not rep.conclusion
                if rep.alarm and shown < args.show:
                    shown += 1
                    print(f"{rep.harness} alarm ({inst.family_name}): strict pairs "
                          f"{sorted(inst.relation.strict.pairs())}, neighbourhoods "
                          f"{[sorted(inst.topology.neighbourhood(x)) for x in inst.relation.elements]}, "
                          f"{rep.detail}")
    print(f"{'source':10s} {'n':>2s} {'harness':16s} {'instances':>9s} {'met':>6s} {'alarms':>6s} "
          f"{'met*':>6s} {'alarms*':>7s}")
    for source, n in sorted({(s, n) for s, n, *_ in counts}):
        for h in ("totality", "closed-contours"):
            k = (source, n, h)
            print(f"{source:10s} {n:2d} {h:16s} {counts[source, n, 'instances']:9d} {counts[k + ('met',)]:6d} "
                  f"{counts[k + ('alarm',)]:6d} {counts[k + ('met-strict',)]:6d} {counts[k + ('alarm-strict',)]:7d}")
    print("* preimages required to be open in the whole space")
    print(f"{time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
