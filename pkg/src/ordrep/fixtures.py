"""Small named structures used as fixtures by the tests and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapExceeded, MalformedInput, UnknownExample
from .partial import Kind, PartialFn, ReprFamily
from .relation import GroundSet, Relation
from .topology import FiniteTopology, chain_scott, scott_topology

WINDOW_CAP = 60
TRUNCATION_CAP = 60


@dataclass(frozen=True)
class Example:
    name: str
    relation: Relation
    family: ReprFamily | None = None
    topologies: dict[str, FiniteTopology] = field(default_factory=dict)
    codomain: FiniteTopology | None = None     # None: functions land in the real line
    note: str = ""

    @property
    def topology(self) -> FiniteTopology | None:
        return next(iter(self.topologies.values()), None)


FIG1 = ("x1", "x2", "x3", "x4")
FIG1_PAIRS = [("x1", "x2"), ("x2", "x4"), ("x1", "x4"), ("x3", "x4")]


def fig1_poset() -> Relation:
    return Relation.from_pairs(FIG1, FIG1_PAIRS, reflexive_closure=True)


def fig2_family(ground: GroundSet) -> ReprFamily:
    u1 = PartialFn.from_mapping(ground, {"x1": 1, "x2": 2, "x4": 3}, name="u1")
    u2 = PartialFn.from_mapping(ground, {"x3": 1, "x4": 2}, name="u2")
    return ReprFamily(Kind.PARTIAL_RP_MU, (u1, u2))


def fig1() -> Example:
    P = fig1_poset()
    return Example("fig1", P, fig2_family(P.ground), {"scott": scott_topology(P)},
                   note="x1 < x2 < x4, x3 < x4 with a two-function chain family")


def fig3() -> Example:
    P = Relation.from_pairs(("x1", "x2", "x3"), [("x1", "x2")], reflexive_closure=True)
    u = PartialFn.from_mapping(P.ground, {"x1": 1, "x2": 2}, name="u1")
    return Example("fig3", P, ReprFamily(Kind.PARTIAL_RP_MU, (u,)), {"scott": scott_topology(P)},
                   note="x1 < x2 with x3 isolated")


def e05() -> Example:
    P = fig1_poset()
    tau1 = FiniteTopology.from_opens(P.ground, [["x4"], ["x2", "x3", "x4"], ["x1", "x2", "x4"], ["x2", "x4"]])
    tau2 = FiniteTopology.from_opens(P.ground, [["x4"], ["x2", "x4"], ["x3", "x4"], ["x2", "x3", "x4"]])
    return Example("e05", P, fig2_family(P.ground), {"tau1": tau1, "tau2": tau2},
                   codomain=chain_scott([1, 2, 3, 4]),
                   note="two topologies coarser than the Scott topology; codomain 1..4 with its Scott topology")


def _window_relation(lo: int, hi: int) -> Relation:
    labels = [str(m) for m in range(lo, hi + 1)]
    return Relation.from_predicate(labels, lambda a, b: int(a) <= int(b) + 1)


def esemiz_window(lo: int = 0, hi: int = 5) -> Example:
    """``n ≾ m ⟺ n ≤ m + 1`` on ``lo..hi`` with the mod-3 family ``u, v, w``."""
    lo, hi = int(lo), int(hi)
    if hi < lo:
        raise MalformedInput("window needs lo <= hi")
    if hi - lo + 1 > WINDOW_CAP:
        raise CapExceeded(f"window of {hi - lo + 1} points exceeds the cap of {WINDOW_CAP}")
    S = _window_relation(lo, hi)
    u, v, w = {}, {}, {}
    for m in range(lo, hi + 1):
        q, r = divmod(m, 3)
        if r in (0, 1):
            u[str(m)] = q
        if r in (1, 2):
            v[str(m)] = q
        if r == 2:
            w[str(m)] = q
        elif r == 0:
            w[str(m)] = q - 1       # m = 3(q - 1) + 3
    fns = tuple(PartialFn.from_mapping(S.ground, d, name=k) for k, d in (("u", u), ("v", v), ("w", w)))
    return Example("esemiz_window", S, ReprFamily(Kind.PARTIAL_RP_MU, fns),
                   note=f"threshold semiorder on {lo}..{hi}")


def eseq_truncation(k: int = 3) -> Example:
    """``1 ≺ 1/2 ≺ … ≺ 1/k ≺ 0`` with ``u(1/n) = 2n`` and ``v`` jumping at 0."""
    k = int(k)
    if k < 1:
        raise MalformedInput("truncation needs k >= 1")
    if k + 1 > TRUNCATION_CAP:
        raise CapExceeded(f"truncation of {k + 1} points exceeds the cap of {TRUNCATION_CAP}")
    labels = [str(Fraction(1, n)) for n in range(1, k + 1)] + ["0"]
    S = Relation.chain(labels)
    u = PartialFn.from_mapping(S.ground, {str(Fraction(1, n)): 2 * n for n in range(1, k + 1)}, name="u")
    v = PartialFn.from_mapping(S.ground, {**{str(Fraction(1, n)): 0 for n in range(1, k + 1)}, "0": 2},
                               name="v")
    return Example("eseq_truncation", S, ReprFamily(Kind.PARTIAL_SS, (u, v)),
                   note=f"first {k} terms of 1/n followed by 0")


def isolated_glued() -> Example:
    """Chain ``0 ≺ 1/2 ≺ 1`` plus an isolated point glued into every neighbourhood.

    Connected, continuous one-function family, not total: the isolated point
    is what breaks totality, so the totality hypotheses are not met.
    """
    S = Relation.chain(["0", "1/2", "1"])
    ground = GroundSet(("0", "1/2", "1", "2"))
    R = Relation(ground, S.rows + (1 << 3,))
    glue = 1 << 3
    tau = FiniteTopology.from_neighbourhoods(ground, [1 | glue, 2 | glue, 4 | glue, glue])
    v = PartialFn.from_mapping(ground, {"0": 0, "1/2": Fraction(1, 2), "1": 1}, name="v")
    return Example("isolated_glued", R, ReprFamily(Kind.PARTIAL_RP_MU, (v,)), {"glued": tau},
                   note="isolated point 2 shares every neighbourhood")


def harness_alarm() -> Example:
    """Connected, no isolated points, continuous two-function family, yet not total.

    ``y ≺ x`` and ``g ≺ h`` with cross pairs incomparable.  The neighbourhoods
    ``U(g) = {g, x, y}`` and ``U(h) = {h, y}`` connect the two chains, while
    each function's domain carries the discrete subspace topology.
    """
    R = Relation.from_pairs(("y", "x", "g", "h"), [("y", "x"), ("g", "h")], reflexive_closure=True)
    tau = FiniteTopology.from_neighbourhoods(R.ground, [0b0001, 0b0010, 0b0111, 0b1001])
    u = PartialFn.from_mapping(R.ground, {"y": 1, "x": 2}, name="u")
    v = PartialFn.from_mapping(R.ground, {"g": 1, "h": 2}, name="v")
    return Example("harness_alarm", R, ReprFamily(Kind.PARTIAL_RP_MU, (u, v)), {"glued": tau},
                   note="satisfies the totality hypotheses under subspace continuity but is not total")


GENERATORS = {
    "fig1": fig1,
    "fig3": fig3,
    "e05": e05,
    "esemiz_window": esemiz_window,
    "eseq_truncation": eseq_truncation,
    "isolated_glued": isolated_glued,
    "harness_alarm": harness_alarm,
}


def generate_example(name: str, **params) -> Example:
    try:
        make = GENERATORS[name]
    except KeyError:
        raise UnknownExample(name) from None
    try:
        return make(**params)
    except TypeError as exc:
        raise MalformedInput(f"bad parameters for {name}: {exc}") from None
