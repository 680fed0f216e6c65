import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import partial_orders, preorders, to_relation
from ordrep.build import enumerate_labelings
from ordrep.errors import NotAPartialOrder, NotATopology
from ordrep.fixtures import e05, fig1, harness_alarm, isolated_glued
from ordrep.partial import PartialFn
from ordrep.relation import GroundSet, Relation
from ordrep.topology import (
    FiniteTopology,
    chain_scott,
    check_contour_openness,
    check_regular_preorder,
    closed_contours_harness,
    is_connected,
    is_continuous,
    schmeidler_harness,
    scott_topology,
    totality_harness,
)
from ordrep.verify import verify_labeling


def opens_as_sets(tau):
    return {frozenset(tau.ground.labels(o)) for o in tau.opens}


# -- construction -----------------------------------------------------------

def test_scott_on_two_chain():
    tau = scott_topology(Relation.chain(["x1", "x2"]))
    assert opens_as_sets(tau) == {frozenset(), frozenset({"x2"}), frozenset({"x1", "x2"})}


def test_scott_on_antichain_is_discrete():
    A = Relation.identity("abc")
    assert scott_topology(A).opens == FiniteTopology.discrete(A.ground).opens


def test_scott_basis_of_fig1():
    tau = scott_topology(fig1().relation)
    assert [tau.neighbourhood(x) for x in ("x1", "x2", "x3", "x4")] == [
        {"x1", "x2", "x4"}, {"x2", "x4"}, {"x3", "x4"}, {"x4"}]


def test_scott_requires_partial_order():
    with pytest.raises(NotAPartialOrder):
        scott_topology(Relation.from_predicate("ab", lambda x, y: True))


@given(partial_orders(max_n=6))
def test_scott_opens_are_upsets(m):
    tau = scott_topology(to_relation(m))
    got = {frozenset(int(x[1:]) for x in tau.ground.labels(o)) for o in tau.opens}
    assert got == set(oracles.upsets(m))


def test_invalid_families_rejected():
    g = GroundSet(("a", "b", "c"))
    with pytest.raises(NotATopology):
        FiniteTopology.from_opens(g, [["a"], ["b"]])          # union {a, b} missing
    with pytest.raises(NotATopology):
        FiniteTopology.from_opens(g, [["a", "b"], ["b", "c"]])  # intersection {b} missing
    tau = FiniteTopology.generate(g, [["a", "b"], ["b", "c"]])
    assert opens_as_sets(tau) == {frozenset(), frozenset("b"), frozenset("ab"), frozenset("bc"), frozenset("abc")}


def test_e05_topologies_listed():
    ex = e05()
    assert len(ex.topologies["tau1"].opens) == 6
    assert len(ex.topologies["tau2"].opens) == 6


# -- continuity -------------------------------------------------------------

def test_e05_functions_continuous_into_scott():
    ex = e05()
    for tau in ex.topologies.values():
        for f in ex.family:
            assert is_continuous(f, tau, ex.codomain).ok


def test_e05_not_continuous_into_real_line():
    ex = e05()
    v = is_continuous(ex.family.functions[1], ex.topologies["tau1"])
    assert not v.ok and v.witness.pair == ("x3", "x4")


def test_labeling_continuous_and_non_monotone_not():
    P = fig1().relation
    tau = scott_topology(P)
    codomain = chain_scott([1, 2, 3, 4])
    for lab in enumerate_labelings(P):
        assert is_continuous(lab, tau, codomain).ok
    bad = PartialFn.total(P.ground, [2, 1, 3, 4])
    assert not is_continuous(bad, tau, codomain).ok


def test_value_outside_codomain():
    P = fig1().relation
    v = is_continuous(PartialFn.total(P.ground, [1, 2, 3, 9]), scott_topology(P), chain_scott([1, 2, 3, 4]))
    assert v.witness.clause == "continuity.codomain"


@st.composite
def spaces_and_functions(draw):
    n = draw(st.integers(1, 5))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    m = oracles.random_preorder(rng, n)
    vals = [draw(st.one_of(st.none(), st.integers(1, 3))) for _ in range(n)]
    return m, vals


@given(spaces_and_functions())
def test_continuity_matches_preimage_definition(case):
    m, vals = case
    R = to_relation(m)
    tau = FiniteTopology.alexandrov(R)
    f = PartialFn(R.ground, tuple(vals))
    fd = {i: v for i, v in enumerate(vals) if v is not None}
    opens = [{int(x[1:]) for x in tau.ground.labels(o)} for o in tau.opens]
    assert is_continuous(f, tau).ok == oracles.continuous(fd, opens)
    codomain = chain_scott([1, 2, 3])
    cod_opens = [{int(x) for x in codomain.ground.labels(o)} for o in codomain.opens]
    assert is_continuous(f, tau, codomain).ok == oracles.continuous(fd, opens, cod_opens)


@given(partial_orders(max_n=5))
def test_labeling_iff_scott_continuous(m):
    P = to_relation(m)
    tau = scott_topology(P)
    codomain = chain_scott(range(1, P.n + 1))
    for perm in itertools.permutations(range(1, P.n + 1)):
        u = PartialFn.total(P.ground, perm)
        assert verify_labeling(P, u).ok == is_continuous(u, tau, codomain).ok


def test_constant_map_is_continuous_but_not_a_labeling():
    P = fig1().relation
    u = PartialFn.total(P.ground, [1, 1, 1, 1])
    assert is_continuous(u, scott_topology(P), chain_scott([1, 2, 3, 4])).ok
    assert not verify_labeling(P, u).ok


# -- connectedness and contour checks ---------------------------------------

def test_connectedness_examples():
    g = GroundSet(("a", "b", "c"))
    assert not is_connected(FiniteTopology.discrete(g))
    assert is_connected(FiniteTopology.indiscrete(g))
    tau1 = e05().topologies["tau1"]
    full = tau1.ground.full
    clopen = [o for o in tau1.opens if o not in (0, full) and tau1.is_closed(o)]
    assert is_connected(tau1) == (not clopen)


@given(preorders(max_n=6))
def test_connected_matches_clopen_search(m):
    tau = FiniteTopology.alexandrov(to_relation(m))
    full = tau.ground.full
    clopen = [o for o in tau.opens if o not in (0, full) and tau.is_closed(o)]
    assert is_connected(tau) == (not clopen)


def test_regular_preorder_checks():
    C = Relation.chain("abc")
    v = check_regular_preorder(C, scott_topology(C))
    assert not v.ok and v.witness.clause == "regular.up" and v.witness.pair == ("b", "b")
    for x in "abc":
        down = C.ground.mask(y for y in "abc" if C.le(y, x))
        assert scott_topology(C).is_closed(down)
    assert check_regular_preorder(C, FiniteTopology.discrete(C.ground)).ok
    v = check_regular_preorder(C, FiniteTopology.indiscrete(C.ground))
    assert not v.ok and v.witness.pair == ("a", "a")


def test_contour_openness_checks():
    C = Relation.chain("abc")
    assert check_contour_openness(C, FiniteTopology.discrete(C.ground)).ok
    v = check_contour_openness(C, scott_topology(C))
    assert not v.ok and v.witness.clause == "open.lower" and v.witness.pair == ("b", "b")
    v = check_contour_openness(C, FiniteTopology.indiscrete(C.ground))
    assert v.witness.clause == "open.upper" and v.witness.pair == ("a", "a")


# -- harnesses --------------------------------------------------------------

def test_isolated_point_instance_misses_hypotheses():
    ex = isolated_glued()
    report = totality_harness(ex.relation, ex.topology, ex.family)
    assert report.status == "HYPOTHESES_NOT_MET" and not report.alarm
    assert report.hypotheses == {"preorder": True, "connected": True, "no_isolated_points": False,
                                 "partial_rp_multi_utility": True, "continuous": True}


def test_total_preorder_passes():
    C = Relation.chain("abcd")
    u = PartialFn.total(C.ground, [1, 2, 3, 4])
    report = totality_harness(C, scott_topology(C), [u], chain_scott([1, 2, 3, 4]))
    assert report.status == "PASS"
    report = closed_contours_harness(C, FiniteTopology.discrete(C.ground), [u])
    assert report.status == "PASS"


def test_harnesses_flag_the_counterexample_instance():
    # Hypotheses hold (subspace continuity into the reals) but the relation is not total.
    ex = harness_alarm()
    report = totality_harness(ex.relation, ex.topology, ex.family)
    assert report.hypotheses_met and report.alarm
    assert report.detail == "incomparable pair ('y', 'g')"
    report = closed_contours_harness(ex.relation, ex.topology, ex.family)
    assert report.alarm and report.detail == "i(y) is not closed"


def test_schmeidler_small_sweep():
    space = list(oracles.all_preorders(3))
    for m in space:
        R = to_relation(m)
        for t in space:
            tau = FiniteTopology.alexandrov(to_relation(t))
            assert not schmeidler_harness(R, tau).alarm


def test_harness_report_dict():
    ex = isolated_glued()
    d = totality_harness(ex.relation, ex.topology, ex.family).as_dict()
    assert d["status"] == "HYPOTHESES_NOT_MET" and d["failures"] == {"no_isolated_points": "isolated: ['2']"}


# -- sweeps -----------------------------------------------------------------

def test_sweep_enumerations_match_oracle():
    from ordrep.sweep import canonical_preorders, preorder_matrices

    assert [len(list(preorder_matrices(n))) for n in range(1, 5)] == [
        len(list(oracles.all_preorders(n))) for n in range(1, 5)]
    assert [len(canonical_preorders(n)) for n in range(1, 5)] == [1, 3, 9, 33]


def test_harness_invariant_under_relabelling():
    from ordrep.sweep import random_instances

    rng = random.Random(5)
    for inst in random_instances(150, max_n=5, seed=9):
        R, tau, F = inst.relation, inst.topology, inst.family
        perm = list(range(R.n))
        rng.shuffle(perm)
        names = [R.elements[p] for p in perm]
        R2 = Relation.from_predicate(names, R.le)
        tau2 = FiniteTopology.from_opens(R2.ground, [tau.ground.labels(o) for o in tau.opens])
        F2 = [PartialFn.from_mapping(R2.ground, f.as_mapping()) for f in F]
        for h in (totality_harness, closed_contours_harness):
            a, b = h(R, tau, F), h(R2, tau2, F2)
            assert (a.hypotheses, a.conclusion) == (b.hypotheses, b.conclusion)
