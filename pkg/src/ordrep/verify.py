"""Decide whether a family represents a relation, with witnesses.

Every verifier walks ordered pairs ``(x, y)`` in index order and stops after
``limit`` violations (``None`` collects all), so the first violation is the
lexicographically least one.  Clause identifiers name the failing part of the
definition, e.g. ``pmu.exists`` or ``prpss.ii.forall``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import PartialFunctionInTotalKind, PartialUtilityForSS
from .partial import Kind, PartialFn, ReprFamily, format_fraction
from .relation import Relation

Family = Union[ReprFamily, Sequence[PartialFn]]


@dataclass(frozen=True)
class Violation:
    pair: tuple[str, str]
    clause: str
    explanation: str

    def as_dict(self) -> dict:
        return {"pair": list(self.pair), "clause": self.clause, "explanation": self.explanation}


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    @property
    def witness(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def as_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.as_dict() for v in self.violations]}


class _Stop(Exception):
    pass


class _Collector:
    def __init__(self, R: Relation, limit: int | None):
        self.names = R.ground.names
        self.limit = limit
        self.found: list[Violation] = []

    def add(self, i: int, j: int, clause: str, explanation: str):
        self.found.append(Violation((self.names[i], self.names[j]), clause, explanation))
        if self.limit is not None and len(self.found) >= self.limit:
            raise _Stop

    def verdict(self) -> Verdict:
        return Verdict(tuple(self.found))


def _functions(F: Family) -> tuple[PartialFn, ...]:
    return tuple(F.functions) if isinstance(F, ReprFamily) else tuple(F)


def _label(fns, k) -> str:
    return fns[k].name or f"u{k + 1}"


def _fmt(q: Fraction) -> str:
    return format_fraction(q)


def _require_total(fns, kind: str):
    for k, f in enumerate(fns):
        if not f.is_total:
            raise PartialFunctionInTotalKind(f"{kind} needs total functions; {_label(fns, k)} is partial")


def _common(fns, i, j):
    """(function index, sign of u(y) - u(x)) for every function defined on both."""
    out = []
    for k, f in enumerate(fns):
        a, b = f.values[i], f.values[j]
        if a is not None and b is not None:
            out.append((k, (b > a) - (b < a)))
    return out


def _common_diffs(fns, i, j):
    out = []
    for k, f in enumerate(fns):
        a, b = f.values[i], f.values[j]
        if a is not None and b is not None:
            out.append((k, b - a))
    return out


# -- total multi-utilities --------------------------------------------------

def _check_total_mu(R, fns, out, i, j, diffs):
    names = R.ground.names
    x, y = names[i], names[j]
    related = R.related(i, j)
    if related:
        for k, d in diffs:
            if d < 0:
                out.add(i, j, "mu.forall",
                        f"{x} ≾ {y} but {_label(fns, k)}({x})={_fmt(fns[k].values[i])} > "
                        f"{_label(fns, k)}({y})={_fmt(fns[k].values[j])}")
                break
    elif all(d >= 0 for _, d in diffs):
        reason = "the family is empty" if not fns else "every function has u(x) ≤ u(y)"
        out.add(i, j, "mu.converse", f"{x} ≾ {y} fails yet {reason}")


def verify_multi_utility(R: Relation, F: Family, limit: int | None = 1) -> Verdict:
    """``x ≾ y`` iff every function has ``u(x) ≤ u(y)``."""
    fns = _functions(F)
    _require_total(fns, "a multi-utility")
    out = _Collector(R, limit)
    try:
        for i in range(R.n):
            for j in range(R.n):
                _check_total_mu(R, fns, out, i, j, _common(fns, i, j))
    except _Stop:
        pass
    return out.verdict()


def verify_rp_multi_utility(R: Relation, F: Family, limit: int | None = 1) -> Verdict:
    """Multi-utility whose every function also strictly increases along ``≺``."""
    fns = _functions(F)
    _require_total(fns, "a Richter-Peleg multi-utility")
    names = R.ground.names
    strict = R.strict
    out = _Collector(R, limit)
    try:
        for i in range(R.n):
            for j in range(R.n):
                diffs = _common(fns, i, j)
                _check_total_mu(R, fns, out, i, j, diffs)
                if strict.related(i, j):
                    for k, d in diffs:
                        if d <= 0:
                            out.add(i, j, "rp.strict",
                                    f"{names[i]} ≺ {names[j]} but {_label(fns, k)} does not "
                                    f"strictly increase ({_fmt(fns[k].values[i])} → "
                                    f"{_fmt(fns[k].values[j])})")
                            break
    except _Stop:
        pass
    return out.verdict()


# -- partial multi-utilities ------------------------------------------------

def _check_partial_mu(R, fns, out, i, j, diffs):
    names = R.ground.names
    x, y = names[i], names[j]
    if i == j:
        # (x, x) needs no common function; an uncovered element is isolated.
        if not R.related(i, i):
            out.add(i, i, "pmu.reflexive", f"{x} ≾ {x} fails but every element represents itself")
        return
    exists_le = any(d >= 0 for _, d in diffs)
    bad = next(((k, d) for k, d in diffs if d < 0), None)
    if R.related(i, j):
        if not exists_le:
            reason = ("no function is defined on both" if not diffs
                      else "every common function has u(x) > u(y)")
            out.add(i, j, "pmu.exists", f"{x} ≾ {y} but {reason}")
        if bad is not None:
            k = bad[0]
            out.add(i, j, "pmu.forall",
                    f"{x} ≾ {y} but {_label(fns, k)}({x})={_fmt(fns[k].values[i])} > "
                    f"{_label(fns, k)}({y})={_fmt(fns[k].values[j])}")
    elif exists_le and bad is None:
        out.add(i, j, "pmu.converse",
                f"{x} ≾ {y} fails yet every common function has u(x) ≤ u(y)")


def _check_partial_strict(R, fns, out, i, j, diffs):
    names = R.ground.names
    x, y = names[i], names[j]
    if not any(d > 0 for _, d in diffs):
        reason = ("no function is defined on both" if not diffs
                  else "no common function has u(x) < u(y)")
        out.add(i, j, "prp.exists", f"{x} ≺ {y} but {reason}")
    for k, d in diffs:
        if d <= 0:
            out.add(i, j, "prp.forall",
                    f"{x} ≺ {y} but {_label(fns, k)} does not strictly increase "
                    f"({_fmt(fns[k].values[i])} → {_fmt(fns[k].values[j])})")
            break


def verify_partial_mu(R: Relation, F: Family, limit: int | None = 1) -> Verdict:
    """Partial multi-utility, read as a biconditional on every pair ``x ≠ y``.

    ``x ≾ y`` iff some function defined on both has ``u(x) ≤ u(y)`` and no
    function defined on both has ``v(x) > v(y)``.
    """
    fns = _functions(F)
    out = _Collector(R, limit)
    try:
        for i in range(R.n):
            for j in range(R.n):
                _check_partial_mu(R, fns, out, i, j, _common(fns, i, j))
    except _Stop:
        pass
    return out.verdict()


def verify_partial_rp_mu(R: Relation, F: Family, limit: int | None = 1) -> Verdict:
    fns = _functions(F)
    strict = R.strict
    out = _Collector(R, limit)
    try:
        for i in range(R.n):
            for j in range(R.n):
                diffs = _common(fns, i, j)
                _check_partial_mu(R, fns, out, i, j, diffs)
                if strict.related(i, j):
                    _check_partial_strict(R, fns, out, i, j, diffs)
    except _Stop:
        pass
    return out.verdict()


# -- Scott-Suppes -----------------------------------------------------------

ONE = Fraction(1)


def verify_ss(R: Relation, u: PartialFn | ReprFamily, limit: int | None = 1) -> Verdict:
    """``x ≾ y`` iff ``u(x) ≤ u(y) + 1``."""
    if isinstance(u, ReprFamily):
        if len(u.functions) != 1:
            raise PartialUtilityForSS("a Scott-Suppes check takes exactly one utility")
        u = u.functions[0]
    if not u.is_total:
        raise PartialUtilityForSS("Scott-Suppes utilities must be total")
    names = R.ground.names
    vals = u.values
    out = _Collector(R, limit)
    try:
        for i in range(R.n):
            for j in range(R.n):
                within = vals[i] <= vals[j] + ONE
                if R.related(i, j) and not within:
                    out.add(i, j, "ss.forward",
                            f"{names[i]} ≾ {names[j]} but u={_fmt(vals[i])} > {_fmt(vals[j])}+1")
                elif not R.related(i, j) and within:
                    out.add(i, j, "ss.converse",
                            f"{names[i]} ≾ {names[j]} fails but u={_fmt(vals[i])} ≤ {_fmt(vals[j])}+1")
    except _Stop:
        pass
    return out.verdict()


def _verify_partial_threshold(R, F, limit, strict_forall: bool) -> Verdict:
    fns = _functions(F)
    prefix = "prpss" if strict_forall else "pss"
    names = R.ground.names
    strict = R.strict
    out = _Collector(R, limit)
    try:
        for i in range(R.n):
            for j in range(R.n):
                x, y = names[i], names[j]
                diffs = _common_diffs(fns, i, j)
                # clause (i): x ≾ y
                if i == j:
                    if not R.related(i, i):
                        out.add(i, i, f"{prefix}.i.reflexive", f"{x} ≾ {x} fails")
                else:
                    exists = any(d >= -ONE for _, d in diffs)
                    bad = next((k for k, d in diffs if d < -ONE), None)
                    if R.related(i, j):
                        if not exists:
                            reason = ("no function is defined on both" if not diffs
                                      else "every common function has u(x) > u(y)+1")
                            out.add(i, j, f"{prefix}.i.exists", f"{x} ≾ {y} but {reason}")
                        if bad is not None:
                            out.add(i, j, f"{prefix}.i.forall",
                                    f"{x} ≾ {y} but {_label(fns, bad)}({x})={_fmt(fns[bad].values[i])}"
                                    f" > {_label(fns, bad)}({y})+1={_fmt(fns[bad].values[j] + 1)}")
                    elif exists and bad is None:
                        out.add(i, j, f"{prefix}.i.converse",
                                f"{x} ≾ {y} fails yet every common function has u(x) ≤ u(y)+1")
                # clause (ii): x ≺ y
                exists = any(d > ONE for _, d in diffs)
                if strict_forall:
                    bad = next((k for k, d in diffs if not d > ONE), None)
                    need = "v(x)+1 < v(y)"
                else:
                    bad = next((k for k, d in diffs if d < -ONE), None)
                    need = "v(x) ≤ v(y)+1"
                if strict.related(i, j):
                    if not exists:
                        reason = ("no function is defined on both" if not diffs
                                  else "no common function has u(x)+1 < u(y)")
                        out.add(i, j, f"{prefix}.ii.exists", f"{x} ≺ {y} but {reason}")
                    if bad is not None:
                        out.add(i, j, f"{prefix}.ii.forall",
                                f"{x} ≺ {y} but {_label(fns, bad)} breaks {need}: "
                                f"{_fmt(fns[bad].values[i])}, {_fmt(fns[bad].values[j])}")
                elif exists and bad is None:
                    out.add(i, j, f"{prefix}.ii.converse",
                            f"{x} ≺ {y} fails yet the clause for ≺ is satisfied")
    except _Stop:
        pass
    return out.verdict()


def verify_partial_ss(R: Relation, F: Family, limit: int | None = 1) -> Verdict:
    return _verify_partial_threshold(R, F, limit, strict_forall=False)


def verify_partial_rpss(R: Relation, F: Family, limit: int | None = 1) -> Verdict:
    return _verify_partial_threshold(R, F, limit, strict_forall=True)


# -- labelings --------------------------------------------------------------

def verify_labeling(P: Relation, u: PartialFn, limit: int | None = 1) -> Verdict:
    """Bijection onto ``{1, …, n}`` that strictly increases along ``⊏``."""
    names = P.ground.names
    n = P.n
    out = _Collector(P, limit)
    strict = P.strict
    try:
        for i, v in enumerate(u.values):
            if v is None:
                out.add(i, i, "labeling.total", f"no label at {names[i]}")
            elif v.denominator != 1 or not 1 <= v <= n:
                out.add(i, i, "labeling.range", f"label {_fmt(v)} at {names[i]} is outside 1..{n}")
        for i in range(n):
            for j in range(i + 1, n):
                a, b = u.values[i], u.values[j]
                if a is not None and a == b:
                    out.add(i, j, "labeling.injective", f"{names[i]} and {names[j]} share label {_fmt(a)}")
        for i in range(n):
            for j in range(n):
                a, b = u.values[i], u.values[j]
                if strict.related(i, j) and a is not None and b is not None and not a < b:
                    out.add(i, j, "labeling.order",
                            f"{names[i]} ⊏ {names[j]} but labels {_fmt(a)} ≥ {_fmt(b)}")
    except _Stop:
        pass
    return out.verdict()


_DISPATCH = {
    Kind.MULTI_UTILITY: verify_multi_utility,
    Kind.RP_MULTI_UTILITY: verify_rp_multi_utility,
    Kind.PARTIAL_MU: verify_partial_mu,
    Kind.PARTIAL_RP_MU: verify_partial_rp_mu,
    Kind.SS: verify_ss,
    Kind.PARTIAL_SS: verify_partial_ss,
    Kind.PARTIAL_RPSS: verify_partial_rpss,
}


def verify(R: Relation, F: ReprFamily, limit: int | None = 1) -> Verdict:
    """Dispatch on the family's kind."""
    return _DISPATCH[F.kind](R, F, limit)
