"""Chain-domain partial families against the least total Richter-Peleg family.

Enumerates preorders up to isomorphism and compares the exact chain-cover
size with the smallest total RP multi-utility (brute force over weak orders).
Rows where the chain cover is larger show that chain domains are not always
the most economical partial family.
"""

import argparse
import sys
from collections import Counter
from pathlib import Path

from ordrep.build import build_minimal_partial_rp_mu
from ordrep.sweep import _relation, canonical_preorders

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
import oracles  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    for n in range(1, args.max_n + 1):
        cells = Counter()
        examples = []
        for rows in canonical_preorders(n):
            R = _relation(rows)
            chains = len(build_minimal_partial_rp_mu(R, mode="exact").family)
            total = oracles.min_total_rp_family(R.matrix(), max_size=n)
            cells[(chains > total) - (chains < total)] += 1
            if chains > total:
                examples.append((sorted(R.strict.pairs()), chains, total))
        print(f"n={n}: chain cover smaller {cells[-1]}, equal {cells[0]}, larger {cells[1]}")
        for pairs, chains, total in examples[:3]:
            print(f"    {chains} chains vs {total} total: {pairs}")


if __name__ == "__main__":
    main()
