import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import matrices, names, preorders, to_relation
from ordrep.build import build_indicator_mu
from ordrep.errors import PartialFunctionInTotalKind, PartialUtilityForSS
from ordrep.fixtures import eseq_truncation, esemiz_window, fig1, fig3
from ordrep.partial import Kind, PartialFn, ReprFamily
from ordrep.relation import Relation, classify, isolated_points
from ordrep.verify import (
    verify,
    verify_labeling,
    verify_multi_utility,
    verify_partial_mu,
    verify_partial_rp_mu,
    verify_partial_rpss,
    verify_partial_ss,
    verify_rp_multi_utility,
    verify_ss,
)

CHAIN2 = Relation.chain(["x", "y"])


def fn(R, mapping, name=""):
    return PartialFn.from_mapping(R.ground, mapping, name)


def as_dicts(R, fns):
    return [{i: f.values[i] for i in range(R.n) if f.values[i] is not None} for f in fns]


# -- total multi-utilities --------------------------------------------------

def test_indicator_family_is_multi_utility():
    rng = random.Random(0)
    for _ in range(50):
        m = oracles.random_preorder(rng, rng.randint(1, 6))
        R = to_relation(m)
        F = build_indicator_mu(R)
        assert verify_multi_utility(R, F).ok
        assert oracles.total_mu_ok(m, as_dicts(R, F.functions))


def test_single_increasing_function_on_chain():
    R = Relation.chain("abc")
    assert verify_multi_utility(R, [PartialFn.total(R.ground, [1, 2, 3])]).ok
    assert verify_rp_multi_utility(R, [PartialFn.total(R.ground, [1, 2, 3])]).ok


def test_empty_family_relates_everything():
    v = verify_multi_utility(CHAIN2, [])
    assert not v.ok
    assert v.witness.pair == ("y", "x") and v.witness.clause == "mu.converse"


def test_rp_examples():
    fam = [PartialFn.total(CHAIN2.ground, [1, 2]), PartialFn.total(CHAIN2.ground, [0, 2])]
    assert verify_rp_multi_utility(CHAIN2, fam).ok
    const = [PartialFn.total(CHAIN2.ground, [1, 1])]
    v = verify_rp_multi_utility(CHAIN2, const)
    assert not v.ok and v.witness.clause == "rp.strict" and v.witness.pair == ("x", "y")
    # indicators fail the strict clause once a strict pair shares a value
    R = Relation.from_pairs("abc", [("a", "b")], reflexive_closure=True)
    ind = build_indicator_mu(R)
    assert verify_multi_utility(R, ind).ok
    v = verify_rp_multi_utility(R, ind)
    assert not v.ok and v.witness.clause == "rp.strict" and v.witness.pair == ("a", "b")


def test_partial_function_rejected_by_total_kind():
    with pytest.raises(PartialFunctionInTotalKind):
        verify_multi_utility(CHAIN2, [fn(CHAIN2, {"x": 1})])


# -- partial multi-utilities ------------------------------------------------

def test_fig2_family():
    ex = fig1()
    assert verify_partial_mu(ex.relation, ex.family).ok
    assert verify_partial_rp_mu(ex.relation, ex.family).ok
    assert verify(ex.relation, ex.family).ok


def test_fig3_family():
    ex = fig3()
    assert verify_partial_mu(ex.relation, ex.family).ok
    assert verify_partial_rp_mu(ex.relation, ex.family).ok


def test_window_family():
    ex = esemiz_window(0, 5)
    assert verify_partial_rp_mu(ex.relation, ex.family).ok
    assert oracles.partial_rp_mu_ok(ex.relation.matrix(), as_dicts(ex.relation, ex.family.functions))


@pytest.mark.parametrize("lo,hi", [(-6, 6), (3, 11), (0, 0), (-2, 1)])
def test_other_windows(lo, hi):
    ex = esemiz_window(lo, hi)
    assert verify_partial_rp_mu(ex.relation, ex.family).ok


def test_incomparable_pair_with_equal_values():
    R = Relation.identity("ab")
    v = verify_partial_mu(R, [fn(R, {"a": 1, "b": 1})])
    assert not v.ok and v.witness.clause == "pmu.converse" and v.witness.pair == ("a", "b")


def test_flat_strict_pair():
    v = verify_partial_rp_mu(CHAIN2, [fn(CHAIN2, {"x": 1, "y": 2}), fn(CHAIN2, {"x": 2, "y": 2})])
    assert not v.ok and v.witness.clause == "prp.forall" and v.witness.pair == ("x", "y")


def test_collect_all_violations():
    R = Relation.identity("abc")
    v = verify_partial_mu(R, [fn(R, {"a": 1, "b": 1, "c": 1})], limit=None)
    assert len(v.violations) == 6
    assert [x.pair for x in v.violations][:2] == [("a", "b"), ("a", "c")]


@st.composite
def families(draw, n, total=False, size=None):
    k = draw(st.integers(0, 3)) if size is None else size
    vals = st.integers(0, 3)
    out = []
    for _ in range(k):
        if total:
            out.append(PartialFn.total(names(n), [draw(vals) for _ in range(n)]))
        else:
            out.append(PartialFn(
                PartialFn.total(names(n), [0] * n).ground,
                tuple(draw(st.one_of(st.none(), vals)) for _ in range(n))))
    return out


@given(st.data())
def test_partial_verifiers_match_oracle(data):
    m = data.draw(matrices(max_n=4))
    R = to_relation(m)
    fns = data.draw(families(len(m)))
    d = as_dicts(R, fns)
    assert verify_partial_mu(R, fns).ok == oracles.partial_mu_ok(m, d)
    assert verify_partial_rp_mu(R, fns).ok == oracles.partial_rp_mu_ok(m, d)
    assert verify_partial_ss(R, fns).ok == oracles.partial_ss_ok(m, d)
    assert verify_partial_rpss(R, fns).ok == oracles.partial_ss_ok(m, d, rp=True)


@given(st.data())
def test_total_families_partial_equals_total(data):
    m = data.draw(preorders(max_n=5))
    R = to_relation(m)
    fns = data.draw(families(len(m), total=True, size=data.draw(st.integers(1, 3))))
    assert verify_partial_mu(R, fns).ok == verify_multi_utility(R, fns).ok
    assert verify_partial_rp_mu(R, fns).ok == verify_rp_multi_utility(R, fns).ok
    assert verify_multi_utility(R, fns).ok == oracles.total_mu_ok(m, as_dicts(R, fns))


@given(st.data())
def test_represented_pairs_are_characterised(data):
    # when a partial family represents R, the derived characterisations hold
    m = data.draw(preorders(max_n=4))
    R = to_relation(m)
    fns = data.draw(families(len(m)))
    if not verify_partial_rp_mu(R, fns).ok:
        return
    d = as_dicts(R, fns)
    for x, y in itertools.permutations(range(R.n), 2):
        common = [(f[x], f[y]) for f in d if x in f and y in f]
        if R.indifference.related(x, y):
            assert common and all(a == b for a, b in common)
        if R.incomparability.related(x, y):
            assert not common or (any(a < b for a, b in common) and any(a > b for a, b in common))
    uncovered = set(R.elements) - set().union(*(f.domain for f in fns)) if fns else set(R.elements)
    assert uncovered <= isolated_points(R)


@given(st.data())
def test_witnesses_replay(data):
    m = data.draw(matrices(max_n=4))
    R = to_relation(m)
    fns = data.draw(families(len(m)))
    v = verify_partial_rp_mu(R, fns)
    if v.ok:
        return
    w = v.witness
    x, y = (R.ground.index(p) for p in w.pair)
    common = [(f.values[x], f.values[y]) for f in fns if f.values[x] is not None and f.values[y] is not None]
    if w.clause == "pmu.exists":
        assert m[x][y] and not any(a <= b for a, b in common)
    elif w.clause == "pmu.forall":
        assert m[x][y] and any(a > b for a, b in common)
    elif w.clause == "pmu.converse":
        assert not m[x][y] and common and all(a <= b for a, b in common)
    elif w.clause == "pmu.reflexive":
        assert not m[x][x]
    elif w.clause == "prp.exists":
        assert oracles.strict(m, x, y) and not any(a < b for a, b in common)
    elif w.clause == "prp.forall":
        assert oracles.strict(m, x, y) and any(a >= b for a, b in common)
    else:
        raise AssertionError(w.clause)


# -- Scott-Suppes -----------------------------------------------------------

def test_ss_examples():
    S = esemiz_window(0, 5).relation
    assert verify_ss(S, PartialFn.total(S.ground, range(6))).ok
    assert verify_ss(CHAIN2, PartialFn.total(CHAIN2.ground, [0, 2])).ok
    v = verify_ss(CHAIN2, PartialFn.total(CHAIN2.ground, [0, 1]))
    assert not v.ok and v.witness.pair == ("y", "x") and v.witness.clause == "ss.converse"
    with pytest.raises(PartialUtilityForSS):
        verify_ss(CHAIN2, fn(CHAIN2, {"x": 0}))


@given(st.data())
def test_ss_sound(data):
    m = data.draw(matrices(max_n=5))
    R = to_relation(m)
    u = PartialFn.total(R.ground, [data.draw(st.integers(0, 4)) for _ in range(R.n)])
    ok = verify_ss(R, u).ok
    assert ok == oracles.ss_ok(m, u.values)
    if ok:
        assert classify(R).semiorder


def test_truncation_partial_ss():
    ex = eseq_truncation(3)
    assert ex.relation.elements == ("1", "1/2", "1/3", "0")
    assert verify_partial_ss(ex.relation, ex.family).ok
    v = verify_partial_rpss(ex.relation, ex.family)
    assert not v.ok
    assert v.witness.pair == ("1", "1/2") and v.witness.clause == "prpss.ii.forall"


@pytest.mark.parametrize("k", [1, 2, 5, 12])
def test_longer_truncations(k):
    ex = eseq_truncation(k)
    assert verify_partial_ss(ex.relation, ex.family).ok


def test_total_ss_wrapped_as_partial():
    S = esemiz_window(0, 5).relation
    u = PartialFn.total(S.ground, range(6))
    assert verify_partial_ss(S, [u]).ok
    assert verify_partial_rpss(S, [u]).ok


# -- labelings --------------------------------------------------------------

def test_labeling_examples():
    P = fig1().relation
    assert verify_labeling(P, PartialFn.total(P.ground, [1, 2, 3, 4])).ok
    two = Relation.chain(["x1", "x2"])
    v = verify_labeling(two, PartialFn.total(two.ground, [2, 1]))
    assert not v.ok and v.witness.clause == "labeling.order"
    v = verify_labeling(P, PartialFn.total(P.ground, [1, 1, 1, 1]))
    assert not v.ok and v.witness.clause == "labeling.injective"
    v = verify_labeling(two, PartialFn.total(two.ground, [1, Fraction(3, 2)]))
    assert v.witness.clause == "labeling.range"


def test_dispatch_uses_kind():
    ex = eseq_truncation(3)
    assert verify(ex.relation, ex.family).ok
    assert not verify(ex.relation, ex.family.retagged(Kind.PARTIAL_RPSS)).ok
    assert verify(CHAIN2, ReprFamily(Kind.SS, (PartialFn.total(CHAIN2.ground, [0, 2]),))).ok
