"""Finite topological spaces, continuity of partial functions, and proposition harnesses.

A finite topology is determined by the minimal neighbourhood ``U(x)`` of each
point (the intersection of all opens containing ``x``); the opens are exactly
the unions of minimal neighbourhoods.  Most checks work on those masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapExceeded, MalformedInput, NotAPartialOrder, NotATopology
from .partial import PartialFn, ReprFamily, format_fraction
from .relation import (
    GroundSet,
    Relation,
    bits,
    classify,
    contour_masks,
    isolated_mask,
    require_preorder,
)
from .verify import Verdict, Violation, verify_partial_mu, verify_partial_rp_mu

MAX_POINTS = 16


@dataclass(frozen=True)
class FiniteTopology:
    ground: GroundSet
    opens: frozenset[int]

    def __post_init__(self):
        if self.ground.n > MAX_POINTS:
            raise CapExceeded(f"{self.ground.n} points exceeds the topology cap of {MAX_POINTS}")
        full = self.ground.full
        opens = frozenset(self.opens) | {0, full}
        if any(o & ~full for o in opens):
            raise NotATopology("open set mentions points outside the ground set")
        object.__setattr__(self, "opens", opens)
        for i in range(self.ground.n):
            if self.neighbourhoods[i] not in opens:
                raise NotATopology(
                    f"not closed under intersection: the opens around {self.ground.names[i]!r} "
                    f"meet in a non-open set")
        # every open is a union of neighbourhoods, so adding one at a time suffices
        for a in sorted(opens):
            for b in self.neighbourhoods:
                if a | b not in opens:
                    shown = [list(self.ground.labels(a)), list(self.ground.labels(b))]
                    raise NotATopology(f"not closed under union: {shown}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_opens(cls, ground: GroundSet | Sequence[str], opens: Iterable[Iterable[str]]) -> FiniteTopology:
        if not isinstance(ground, GroundSet):
            ground = GroundSet(tuple(ground))
        return cls(ground, frozenset(ground.mask(o) for o in opens))

    @classmethod
    def from_neighbourhoods(cls, ground: GroundSet, nbhd: Sequence[int]) -> FiniteTopology:
        """Topology whose opens are all unions of the given masks."""
        unions = {0}
        for m in nbhd:
            unions |= {u | m for u in unions}
        return cls(ground, frozenset(unions))

    @classmethod
    def generate(cls, ground: GroundSet | Sequence[str], subbasis: Iterable[Iterable[str]]) -> FiniteTopology:
        """Coarsest topology containing every set of ``subbasis``."""
        if not isinstance(ground, GroundSet):
            ground = GroundSet(tuple(ground))
        masks = [ground.mask(s) for s in subbasis]
        nbhd = []
        for i in range(ground.n):
            m = ground.full
            for s in masks:
                if s >> i & 1:
                    m &= s
            nbhd.append(m)
        return cls.from_neighbourhoods(ground, nbhd)

    @classmethod
    def discrete(cls, ground) -> FiniteTopology:
        ground = ground if isinstance(ground, GroundSet) else GroundSet(tuple(ground))
        return cls.from_neighbourhoods(ground, [1 << i for i in range(ground.n)])

    @classmethod
    def indiscrete(cls, ground) -> FiniteTopology:
        ground = ground if isinstance(ground, GroundSet) else GroundSet(tuple(ground))
        return cls(ground, frozenset())

    @classmethod
    def alexandrov(cls, R: Relation) -> FiniteTopology:
        """Opens are the up-sets of a preorder."""
        require_preorder(R)
        return cls.from_neighbourhoods(R.ground, R.rows)

    # -- queries ----------------------------------------------------------

    @cached_property
    def neighbourhoods(self) -> tuple[int, ...]:
        out = []
        for i in range(self.ground.n):
            m = self.ground.full
            for o in self.opens:
                if o >> i & 1:
                    m &= o
            out.append(m)
        return tuple(out)

    def neighbourhood(self, x: str) -> frozenset[str]:
        return frozenset(self.ground.labels(self.neighbourhoods[self.ground.index(x)]))

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def is_closed(self, mask: int) -> bool:
        return (self.ground.full & ~mask) in self.opens

    def open_sets(self) -> list[tuple[str, ...]]:
        return sorted((self.ground.labels(o) for o in self.opens), key=lambda s: (len(s), s))

    def specialization(self) -> Relation:
        """``x ≾ y`` iff ``y ∈ U(x)``; its up-sets are the opens."""
        return Relation(self.ground, self.neighbourhoods)

    def __repr__(self):
        return f"FiniteTopology({[list(o) for o in self.open_sets()]})"


def scott_topology(P: Relation) -> FiniteTopology:
    """Opens are the up-sets, generated by the principal up-sets."""
    rep = classify(P)
    if not rep.partial_order:
        raise NotAPartialOrder(f"not a partial order; counterexample {rep.partial_order.counterexample}")
    return FiniteTopology.alexandrov(P)


def chain_scott(values: Sequence) -> FiniteTopology:
    """Scott topology of the usual order on a finite set of numbers, labelled as strings."""
    labels = [format_fraction(v) if not isinstance(v, str) else v for v in values]
    return scott_topology(Relation.chain(labels))


def _check_ground(a: GroundSet, b: GroundSet):
    if a != b:
        raise MalformedInput("relation, topology and functions must share one ground set")


# -- continuity and connectedness -------------------------------------------

def is_continuous(f: PartialFn, tau_x: FiniteTopology, tau_y: FiniteTopology | None = None) -> Verdict:
    """Continuity of ``f`` on the subspace of its domain.

    With ``tau_y=None`` the codomain is the real line, and continuity means
    ``f`` is constant on ``U(x) ∩ dom f``.  With a finite codomain, whose
    points are labelled by the formatted values, it means
    ``f(U(x) ∩ dom f) ⊆ U(f(x))``.  Both are the preimage-of-opens condition
    on the subspace; the witness ``(x, y)`` has ``y`` in every neighbourhood
    of ``x`` while ``f(y)`` escapes a neighbourhood of ``f(x)``.
    """
    _check_ground(f.ground, tau_x.ground)
    names = f.ground.names
    dom = f.domain_mask
    found = []
    if tau_y is not None:
        for i in bits(dom):
            label = format_fraction(f.values[i])
            if label not in tau_y.ground:
                return Verdict((Violation((names[i], names[i]), "continuity.codomain",
                                          f"value {label} is not a point of the codomain"),))
    for i in bits(dom):
        near = tau_x.neighbourhoods[i] & dom
        for j in bits(near & ~(1 << i)):
            if tau_y is None:
                bad = f.values[j] != f.values[i]
            else:
                fi = tau_y.ground.index(format_fraction(f.values[i]))
                fj = tau_y.ground.index(format_fraction(f.values[j]))
                bad = not tau_y.neighbourhoods[fi] >> fj & 1
            if bad:
                found.append(Violation(
                    (names[i], names[j]), "continuity",
                    f"{names[j]} lies in every neighbourhood of {names[i]} within the domain, but "
                    f"{format_fraction(f.values[j])} lies outside a neighbourhood of "
                    f"{format_fraction(f.values[i])}"))
                return Verdict(tuple(found))
    return Verdict()


def is_connected(tau: FiniteTopology) -> bool:
    """No proper nonempty clopen set: the neighbourhood graph has one component."""
    n = tau.ground.n
    if n == 0:
        return True
    link = list(tau.neighbourhoods)
    for i, m in enumerate(tau.neighbourhoods):
        for j in bits(m):
            link[j] |= 1 << i
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for i in bits(frontier):
            nxt |= link[i]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == tau.ground.full


def _point_verdict(R, checks) -> Verdict:
    names = R.ground.names
    for i, clause, ok, what in checks:
        if not ok:
            return Verdict((Violation((names[i], names[i]), clause, what),))
    return Verdict()


def check_regular_preorder(R: Relation, tau: FiniteTopology) -> Verdict:
    """Every ``i(x)`` and ``d(x)`` is closed."""
    require_preorder(R)
    _check_ground(R.ground, tau.ground)

    def checks():
        for i in range(R.n):
            _, _, down, up = contour_masks(R, i)
            yield i, "regular.up", tau.is_closed(up), f"i({R.ground.names[i]}) is not closed"
            yield i, "regular.down", tau.is_closed(down), f"d({R.ground.names[i]}) is not closed"

    return _point_verdict(R, checks())


def check_contour_openness(R: Relation, tau: FiniteTopology) -> Verdict:
    """Every ``l(x)`` and ``r(x)`` is open."""
    require_preorder(R)
    _check_ground(R.ground, tau.ground)

    def checks():
        for i in range(R.n):
            lower, upper, _, _ = contour_masks(R, i)
            yield i, "open.lower", tau.is_open(lower), f"l({R.ground.names[i]}) is not open"
            yield i, "open.upper", tau.is_open(upper), f"r({R.ground.names[i]}) is not open"

    return _point_verdict(R, checks())


# -- harnesses --------------------------------------------------------------

@dataclass(frozen=True)
class HarnessReport:
    harness: str
    hypotheses: dict[str, bool]
    conclusion: bool | None = None     # None when some hypothesis fails
    detail: str = ""
    failures: dict[str, str] = field(default_factory=dict)

    @property
    def hypotheses_met(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def alarm(self) -> bool:
        """Hypotheses hold but the conclusion does not."""
        return self.hypotheses_met and self.conclusion is False

    @property
    def status(self) -> str:
        if not self.hypotheses_met:
            return "HYPOTHESES_NOT_MET"
        return "PASS" if self.conclusion else "FAIL"

    def as_dict(self) -> dict:
        return {
            "harness": self.harness,
            "status": self.status,
            "alarm": self.alarm,
            "hypotheses": dict(self.hypotheses),
            "failures": dict(self.failures),
            "conclusion": self.conclusion,
            "detail": self.detail,
        }


def _functions(F) -> tuple[PartialFn, ...]:
    return tuple(F.functions) if isinstance(F, ReprFamily) else tuple(F)


def _continuity(fns, tau, codomain):
    for k, f in enumerate(fns):
        v = is_continuous(f, tau, codomain)
        if not v.ok:
            w = v.witness
            return False, f"{f.name or f'u{k + 1}'}: {w.explanation}"
    return True, ""


def _run(name, hyps: list[tuple[str, bool, str]], conclude) -> HarnessReport:
    hypotheses = {key: ok for key, ok, _ in hyps}
    failures = {key: why for key, ok, why in hyps if not ok}
    if not all(hypotheses.values()):
        return HarnessReport(name, hypotheses, None, "conclusion not evaluated", failures)
    ok, detail = conclude()
    return HarnessReport(name, hypotheses, ok, detail, failures)


def _is_preorder(R):
    rep = classify(R)
    return rep.preorder.holds, "" if rep.preorder else f"counterexample {rep.preorder.counterexample}"


def totality_harness(R: Relation, tau: FiniteTopology, F, codomain: FiniteTopology | None = None) -> HarnessReport:
    """Connected space, no isolated points, finite continuous partial RP family ⟹ total."""
    _check_ground(R.ground, tau.ground)
    fns = _functions(F)
    pre_ok, pre_why = _is_preorder(R)
    iso = isolated_mask(R)
    hyps = [("preorder", pre_ok, pre_why),
            ("connected", is_connected(tau), "a proper clopen set exists"),
            ("no_isolated_points", iso == 0, f"isolated: {list(R.ground.labels(iso))}")]
    if pre_ok:
        rp = verify_partial_rp_mu(R, fns)
        hyps.append(("partial_rp_multi_utility", rp.ok,
                     "" if rp.ok else f"{rp.witness.clause} at {rp.witness.pair}"))
    cont, why = _continuity(fns, tau, codomain)
    hyps.append(("continuous", cont, why))

    def conclude():
        total = classify(R).total
        return total.holds, "total" if total else f"incomparable pair {total.counterexample}"

    return _run("totality", hyps, conclude)


def closed_contours_harness(R: Relation, tau: FiniteTopology, F,
                            codomain: FiniteTopology | None = None) -> HarnessReport:
    """No isolated points, finite continuous partial multi-utility ⟹ every d(x), i(x) closed."""
    _check_ground(R.ground, tau.ground)
    fns = _functions(F)
    pre_ok, pre_why = _is_preorder(R)
    iso = isolated_mask(R)
    hyps = [("preorder", pre_ok, pre_why),
            ("no_isolated_points", iso == 0, f"isolated: {list(R.ground.labels(iso))}")]
    if pre_ok:
        mu = verify_partial_mu(R, fns)
        hyps.append(("partial_multi_utility", mu.ok,
                     "" if mu.ok else f"{mu.witness.clause} at {mu.witness.pair}"))
    cont, why = _continuity(fns, tau, codomain)
    hyps.append(("continuous", cont, why))

    def conclude():
        v = check_regular_preorder(R, tau)
        return v.ok, "all contours closed" if v.ok else v.witness.explanation

    return _run("closed-contours", hyps, conclude)


def schmeidler_harness(R: Relation, tau: FiniteTopology) -> HarnessReport:
    """Nontrivial preorder on a connected space, closed d/i and open l/r contours ⟹ total."""
    _check_ground(R.ground, tau.ground)
    pre_ok, pre_why = _is_preorder(R)
    hyps = [("preorder", pre_ok, pre_why),
            ("connected", is_connected(tau), "a proper clopen set exists")]
    if pre_ok:
        nontrivial = any(R.strict.rows)
        reg = check_regular_preorder(R, tau)
        opn = check_contour_openness(R, tau)
        hyps += [("nontrivial", nontrivial, "no strict pair"),
                 ("closed_contours", reg.ok, "" if reg.ok else reg.witness.explanation),
                 ("open_contours", opn.ok, "" if opn.ok else opn.witness.explanation)]

    def conclude():
        total = classify(R).total
        return total.holds, "total" if total else f"incomparable pair {total.counterexample}"

    return _run("schmeidler", hyps, conclude)
