"""Partial clocks versus vector-clock components on generated traces.

For each (processes, message probability) cell, generates seeded traces and
reports how often the minimal chain-domain family is smaller than, equal to
or larger than the process count.
"""

import argparse
from collections import Counter

from ordrep.trace import clock_report, generate_trace


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--procs", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--events", type=int, default=10)
    ap.add_argument("--msg-prob", type=float, nargs="+", default=[0.0, 0.2, 0.5])
    ap.add_argument("--trials", type=int, default=40)
    ap.add_argument("--mode", choices=["auto", "exact", "greedy"], default="auto")
    args = ap.parse_args()

    print(f"{'procs':>5s} {'q':>4s} {'fewer':>6s} {'equal':>6s} {'more':>6s} {'mean fns':>9s} {'mean width':>10s}")
    for p in args.procs:
        for q in args.msg_prob:
            tally = Counter()
            fns = widths = 0
            for seed in range(args.trials):
                rep = clock_report(generate_trace(p, args.events, q, seed), mode=args.mode)
                assert rep.verified
                tally[(rep.functions > p) - (rep.functions < p)] += 1
                fns += rep.functions
                widths += rep.width
            print(f"{p:5d} {q:4.1f} {tally[-1]:6d} {tally[0]:6d} {tally[1]:6d} "
                  f"{fns / args.trials:9.2f} {widths / args.trials:10.2f}")


if __name__ == "__main__":
    main()
