"""Exhaustive and random sweeps of the topological harnesses on small spaces.

Finite topologies on n points are exactly the Alexandrov topologies of the
preorders on n points, so both the relations and the spaces come from one
enumeration.  Harness verdicts are invariant under relabelling the relation,
the space and the family together; the exhaustive sweep therefore takes one
relation per isomorphism class and pairs it with every labelled topology.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .build import build_minimal_partial_rp_mu, build_rp_mu
from .relation import Relation
from .topology import FiniteTopology, HarnessReport, closed_contours_harness, totality_harness


def _names(n):
    return [f"e{i}" for i in range(n)]


def preorder_matrices(n: int):
    """Every preorder on ``range(n)`` as a tuple of row bitmasks."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(off)):
        rows = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(off):
            if bits >> k & 1:
                rows[i] |= 1 << j
        if all(rows[j] & ~rows[i] == 0 for i in range(n) for j in range(n) if rows[i] >> j & 1):
            yield tuple(rows)


def _permuted(rows, perm):
    n = len(rows)
    out = [0] * n
    for i in range(n):
        for j in range(n):
            if rows[i] >> j & 1:
                out[perm[i]] |= 1 << perm[j]
    return tuple(out)


def canonical_preorders(n: int) -> list[tuple[int, ...]]:
    """One representative per isomorphism class (the least relabelling)."""
    perms = list(itertools.permutations(range(n)))
    seen = set()
    for rows in preorder_matrices(n):
        seen.add(min(_permuted(rows, p) for p in perms))
    return sorted(seen)


def _relation(rows) -> Relation:
    n = len(rows)
    return Relation.from_predicate(_names(n), lambda x, y: rows[int(x[1:])] >> int(y[1:]) & 1)


def families(R: Relation):
    """The two builders the sweep exercises: chain-domain partial and total RP."""
    return [("chain-cover", build_minimal_partial_rp_mu(R).family),
            ("rp-mu", build_rp_mu(R).family)]


@dataclass(frozen=True)
class Instance:
    relation: Relation
    topology: FiniteTopology
    family_name: str
    family: object


def exhaustive_instances(max_n: int = 4):
    for n in range(1, max_n + 1):
        spaces = [FiniteTopology.alexandrov(_relation(rows)) for rows in preorder_matrices(n)]
        for rows in canonical_preorders(n):
            R = _relation(rows)
            fams = families(R)
            for tau in spaces:
                for name, F in fams:
                    yield Instance(R, tau, name, F)


def _random_rows(rng: random.Random, n: int, p: float) -> tuple[int, ...]:
    rows = [1 << i | sum(1 << j for j in range(n) if j != i and rng.random() < p) for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            new = rows[i]
            for j in range(n):
                if rows[i] >> j & 1:
                    new |= rows[j]
            if new != rows[i]:
                rows[i], changed = new, True
    return tuple(rows)


def random_instances(count: int, max_n: int = 6, seed: int = 0):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, max_n)
        R = _relation(_random_rows(rng, n, rng.uniform(0.1, 0.5)))
        tau = FiniteTopology.alexandrov(_relation(_random_rows(rng, n, rng.uniform(0.1, 0.6))))
        name, F = rng.choice(families(R))
        yield Instance(R, tau, name, F)


@dataclass
class SweepResult:
    instances: int = 0
    hypotheses_met: dict = field(default_factory=lambda: {"totality": 0, "closed-contours": 0})
    alarms: dict = field(default_factory=lambda: {"totality": 0, "closed-contours": 0})
    first_alarm: dict = field(default_factory=dict)

    @property
    def total_alarms(self) -> int:
        return sum(self.alarms.values())

    def add(self, inst: Instance, report: HarnessReport):
        h = report.harness
        self.hypotheses_met[h] += report.hypotheses_met
        if report.alarm:
            self.alarms[h] += 1
            self.first_alarm.setdefault(h, (inst, report))


def run_sweep(instances, result: SweepResult | None = None) -> SweepResult:
    result = result or SweepResult()
    for inst in instances:
        result.instances += 1
        result.add(inst, totality_harness(inst.relation, inst.topology, inst.family))
        result.add(inst, closed_contours_harness(inst.relation, inst.topology, inst.family))
    return result
