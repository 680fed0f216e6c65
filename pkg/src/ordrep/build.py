"""Constructors for representation families."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceeded,
    NotAPartialOrder,
    NotASemiorder,
    PreconditionFailed,
)
from .partial import Kind, PartialFn, ReprFamily, format_fraction, scale_add, to_fraction
from .relation import (
    Relation,
    bits,
    classify,
    isolated_mask,
    quotient,
    require_preorder,
)
from .verify import verify_partial_mu, verify_partial_rp_mu, verify_ss

ENUMERATION_CAP = 12
COUNT_CAP = 20
EXACT_CLASS_CAP = 10
MAXIMAL_CHAIN_BUDGET = 20000


@dataclass(frozen=True)
class ChainCover:
    chains: tuple[tuple[str, ...], ...]                 # quotient class labels, ascending
    coverage: tuple[frozenset[tuple[str, str]], ...]    # comparable class pairs inside each chain


@dataclass(frozen=True)
class BuildReport:
    family: ReprFamily
    optimal: bool
    stats: dict = field(default_factory=dict)
    cover: ChainCover | None = None


def _require_partial_order(P: Relation):
    rep = classify(P)
    if not rep.partial_order:
        raise NotAPartialOrder(f"not a partial order; counterexample {rep.partial_order.counterexample}")


# -- indicator multi-utility ------------------------------------------------

def build_indicator_mu(P: Relation) -> ReprFamily:
    """``u_x(z) = 1`` if ``x ≾ z`` else 0, one function per element."""
    require_preorder(P)
    fns = []
    for i, x in enumerate(P.elements):
        row = P.rows[i]
        fns.append(PartialFn.total(P.ground, [row >> j & 1 for j in range(P.n)], name=f"u_{x}"))
    return ReprFamily(Kind.MULTI_UTILITY, tuple(fns))


# -- labelings (linear extensions) ------------------------------------------

def enumerate_labelings(P: Relation, cap: int = ENUMERATION_CAP) -> Iterator[PartialFn]:
    """Every labeling, depth-first, always taking the lowest-index minimal element first.

    The generator can be abandoned at any point.
    """
    _require_partial_order(P)
    if P.n > cap:
        raise CapExceeded(f"{P.n} elements exceeds the enumeration cap of {cap}")
    preds = P.strict.cols
    n = P.n
    labels = [0] * n

    def extend(placed: int, depth: int):
        if depth == n:
            yield PartialFn.total(P.ground, labels)
            return
        for i in range(n):
            if not placed >> i & 1 and preds[i] & ~placed == 0:
                labels[i] = depth + 1
                yield from extend(placed | 1 << i, depth + 1)

    yield from extend(0, 0)


def count_labelings(P: Relation, cap: int = COUNT_CAP) -> int:
    """Number of linear extensions, by dynamic programming over down-sets."""
    _require_partial_order(P)
    if P.n > cap:
        raise CapExceeded(f"{P.n} elements exceeds the counting cap of {cap}")
    preds = P.strict.cols
    n = P.n
    full = P.ground.full
    memo = {full: 1}

    def count(placed: int) -> int:
        hit = memo.get(placed)
        if hit is not None:
            return hit
        total = 0
        for i in range(n):
            if not placed >> i & 1 and preds[i] & ~placed == 0:
                total += count(placed | 1 << i)
        memo[placed] = total
        return total

    return count(0)


# -- Richter-Peleg combination ----------------------------------------------

def safe_alpha(R: Relation, V: Sequence[PartialFn] | ReprFamily, f: PartialFn) -> Fraction:
    """A positive step that keeps every conflicting value of ``V`` on its side.

    For an incomparable pair on which some ``v`` disagrees, ``v + α·f`` keeps
    the sign of ``v(y) - v(x)`` as long as ``α·|f(y) - f(x)|`` stays below
    ``|v(y) - v(x)|``.  Half of the tightest such ratio is returned (1 when
    nothing constrains it).
    """
    fns = tuple(V)
    incomparable = R.incomparability.rows
    bound = None
    for i in range(R.n):
        for j in bits(incomparable[i]):
            fi, fj = f.values[i], f.values[j]
            if fi is None or fj is None or fi == fj:
                continue
            for v in fns:
                a, b = v.values[i], v.values[j]
                if a is None or b is None or a == b:
                    continue
                ratio = abs(b - a) / abs(fj - fi)
                bound = ratio if bound is None else min(bound, ratio)
    if bound is None:
        return Fraction(1)
    return min(Fraction(1), bound / 2)


def build_rp_combination(R: Relation, V: ReprFamily | Sequence[PartialFn], f: PartialFn,
                         alphas: Iterable | None = None) -> ReprFamily:
    """``{v + α·f : v ∈ V, α ∈ alphas}`` as a partial Richter-Peleg multi-utility.

    Requires ``V`` to be a partial multi-utility of ``R`` and ``f`` to be a
    Richter-Peleg utility on a domain containing every non-isolated point.
    With ``alphas=None`` a single safe step is chosen.
    """
    require_preorder(R)
    fns = tuple(V)
    verdict = verify_partial_mu(R, fns)
    if not verdict.ok:
        w = verdict.witness
        raise PreconditionFailed("V is a partial multi-utility", f"{w.clause} at {w.pair}")
    missing = R.ground.full & ~isolated_mask(R) & ~f.domain_mask
    if missing:
        raise PreconditionFailed("f is defined on every non-isolated point",
                                 f"undefined at {list(R.ground.labels(missing))}")
    names = R.ground.names
    strict = R.strict
    for i in bits(f.domain_mask):
        for j in bits(f.domain_mask & R.rows[i]):
            if f.values[i] > f.values[j]:
                raise PreconditionFailed("f is isotonic", f"{names[i]} ≾ {names[j]} but f decreases")
            if strict.related(i, j) and f.values[i] == f.values[j]:
                raise PreconditionFailed("f is a Richter-Peleg utility",
                                         f"{names[i]} ≺ {names[j]} but f is flat")
    alphas = [safe_alpha(R, fns, f)] if alphas is None else [to_fraction(a) for a in alphas]
    if not alphas:
        raise PreconditionFailed("alphas is nonempty")
    family = ReprFamily(Kind.PARTIAL_RP_MU,
                        tuple(scale_add(v, f, a) for v in fns for a in alphas))
    check = verify_partial_rp_mu(R, family)
    if not check.ok:
        raise PreconditionFailed(
            "every alpha is small enough to preserve conflicting values",
            f"{check.witness.clause} at {check.witness.pair}; try alpha < "
            f"{format_fraction(safe_alpha(R, fns, f) * 2)}")
    return family


def lifted_linear_extension(P: Relation) -> PartialFn:
    """A total Richter-Peleg utility: a labeling of the quotient, constant on ties."""
    q = quotient(P)
    first = next(enumerate_labelings(q.relation, cap=max(ENUMERATION_CAP, q.relation.n)))
    return PartialFn.total(P.ground, [first.values[q.projection[x]] for x in P.elements], name="f")


def build_rp_mu(P: Relation) -> BuildReport:
    """Total Richter-Peleg multi-utility: indicator family shifted by a linear extension."""
    V = build_indicator_mu(P)
    f = lifted_linear_extension(P)
    alpha = safe_alpha(P, V, f)
    family = build_rp_combination(P, V, f, [alpha])
    return BuildReport(family.retagged(Kind.RP_MULTI_UTILITY), optimal=False,
                       stats={"alpha": format_fraction(alpha)})


# -- chain-domain partial Richter-Peleg multi-utility -----------------------

def maximal_chains(strict_rows: Sequence[int], limit: int | None = None) -> list[tuple[int, ...]] | None:
    """Maximal chains of a strict order with at least two members.

    They are the maximal paths of the Hasse diagram.  Returns ``None`` once
    more than ``limit`` chains have been produced.
    """
    k = len(strict_rows)
    covers = []
    for row in strict_rows:
        above = 0
        for j in bits(row):
            above |= strict_rows[j]
        covers.append(row & ~above)
    has_pred = 0
    for row in strict_rows:
        has_pred |= row
    out: list[tuple[int, ...]] = []
    path: list[int] = []

    def walk(i):
        path.append(i)
        if covers[i]:
            for j in bits(covers[i]):
                walk(j)
                if limit is not None and len(out) > limit:
                    break
        elif len(path) >= 2:
            out.append(tuple(path))
        path.pop()

    for i in range(k):
        if not has_pred >> i & 1 and strict_rows[i]:
            walk(i)
            if limit is not None and len(out) > limit:
                return None
    return out


class _CoverProblem:
    def __init__(self, strict_rows: Sequence[int]):
        self.strict = list(strict_rows)
        self.k = len(strict_rows)
        self.pairs = [(i, j) for i in range(self.k) for j in bits(self.strict[i])]
        self.pair_index = {p: t for t, p in enumerate(self.pairs)}
        self.universe = (1 << len(self.pairs)) - 1
        self.nodes = 0

    def chain_mask(self, chain: Sequence[int]) -> int:
        m = 0
        for a in range(len(chain)):
            for b in range(a + 1, len(chain)):
                m |= 1 << self.pair_index[(chain[a], chain[b])]
        return m

    def set_chains(self, chains):
        self.chains = list(chains)
        self.masks = [self.chain_mask(c) for c in self.chains]
        self.covering = [0] * len(self.pairs)
        for c, m in enumerate(self.masks):
            for p in bits(m):
                self.covering[p] |= 1 << c

    def rank(self, c, uncovered):
        # more new pairs, then longer, then lexicographically first
        return (-bin(self.masks[c] & uncovered).count("1"), -len(self.chains[c]), self.chains[c])

    def lower_bound(self, uncovered: int) -> int:
        if not uncovered:
            return 0
        used = 0
        packing = 0
        for p in bits(uncovered):
            if not self.covering[p] & used:
                packing += 1
                used |= self.covering[p]
        widest = max(bin(m & uncovered).count("1") for m in self.masks)
        by_size = -(-bin(uncovered).count("1") // widest)
        return max(packing, by_size)

    def greedy(self) -> list[int]:
        uncovered = self.universe
        chosen = []
        while uncovered:
            c = min(range(len(self.chains)), key=lambda c: self.rank(c, uncovered))
            chosen.append(c)
            uncovered &= ~self.masks[c]
        return chosen

    def exact(self) -> list[int]:
        best = self.greedy()

        def search(uncovered, chosen):
            nonlocal best
            self.nodes += 1
            if not uncovered:
                if len(chosen) < len(best):
                    best = list(chosen)
                return
            if len(chosen) + self.lower_bound(uncovered) >= len(best):
                return
            pivot = min(bits(uncovered), key=lambda p: (bin(self.covering[p]).count("1"), p))
            for c in sorted(bits(self.covering[pivot]), key=lambda c: self.rank(c, uncovered)):
                chosen.append(c)
                search(uncovered & ~self.masks[c], chosen)
                chosen.pop()

        search(self.universe, [])
        return best


def _grow_chains(strict_rows: Sequence[int]) -> list[tuple[int, ...]]:
    """Greedy fallback when maximal chains are too many to list.

    Seeds a chain with the least uncovered pair and keeps adding the
    comparable class that brings the most uncovered pairs.
    """
    k = len(strict_rows)
    comp = list(strict_rows)
    for i, row in enumerate(strict_rows):
        for j in bits(row):
            comp[j] |= 1 << i
    uncovered = {(i, j) for i in range(k) for j in bits(strict_rows[i])}
    chains = []
    while uncovered:
        a, b = min(uncovered)
        members = [a, b]
        candidates = comp[a] & comp[b]
        while candidates:
            def gain(c):
                return sum((min(c, m), max(c, m)) in uncovered or (m, c) in uncovered or (c, m) in uncovered
                           for m in members)
            best = max(bits(candidates), key=lambda c: (gain(c), -c))
            if gain(best) == 0:
                break
            members.append(best)
            candidates &= comp[best]
        chain = tuple(sorted(members, key=lambda c: bin(strict_rows[c]).count("1"), reverse=True))
        for x in range(len(chain)):
            for y in range(x + 1, len(chain)):
                uncovered.discard((chain[x], chain[y]))
        chains.append(chain)
    return chains


def build_minimal_partial_rp_mu(P: Relation, mode: str = "exact",
                                cap: int = EXACT_CLASS_CAP) -> BuildReport:
    """Partial Richter-Peleg multi-utility whose domains are chains.

    Every strictly comparable pair of ∼-classes must lie in a common chain;
    ``exact`` minimises the number of chains by branch and bound, ``greedy``
    repeatedly takes the chain with the most uncovered pairs.  Each chain
    becomes one function counting 1, 2, … upward and constant on ties; tied
    classes touched by no chain get a constant function.  Incomparable pairs
    never share a domain.
    """
    if mode not in ("exact", "greedy"):
        raise ValueError(f"mode must be 'exact' or 'greedy', got {mode!r}")
    q = quotient(P)
    strict = q.relation.strict.rows
    k = len(strict)
    if mode == "exact" and k > cap:
        raise CapExceeded(f"{k} classes exceeds the exact-mode cap of {cap}; use greedy mode")
    problem = _CoverProblem(strict)
    chains = maximal_chains(strict, limit=None if mode == "exact" else MAXIMAL_CHAIN_BUDGET)
    stats = {"mode": mode, "classes": k, "pairs": len(problem.pairs)}
    if chains is None:
        picked = _grow_chains(strict)
        stats["candidates"] = "grown"
        lower = None
    else:
        problem.set_chains(chains)
        stats["candidates"] = len(chains)
        lower = problem.lower_bound(problem.universe) if problem.pairs else 0
        ids = problem.exact() if mode == "exact" else problem.greedy()
        picked = [problem.chains[c] for c in ids]
        stats["nodes"] = problem.nodes
        stats["lower_bound"] = lower
    if not problem.pairs:
        picked = []
    picked.sort()
    optimal = mode == "exact" or (lower is not None and len(picked) == lower)

    qnames = q.relation.elements
    fns = []
    touched = 0
    for t, chain in enumerate(picked):
        values: list = [None] * P.n
        for pos, c in enumerate(chain):
            touched |= 1 << c
            for x in q.classes[c]:
                values[P.ground.index(x)] = pos + 1
        fns.append(PartialFn(P.ground, tuple(values), name=f"c{t + 1}"))
    for c, members in enumerate(q.classes):
        if len(members) > 1 and not touched >> c & 1:
            fns.append(PartialFn.from_mapping(P.ground, {x: 1 for x in members},
                                              name=f"tie_{qnames[c]}"))
    coverage = tuple(
        frozenset((qnames[chain[a]], qnames[chain[b]])
                  for a in range(len(chain)) for b in range(a + 1, len(chain)))
        for chain in picked)
    cover = ChainCover(tuple(tuple(qnames[c] for c in chain) for chain in picked), coverage)
    family = ReprFamily(Kind.PARTIAL_RP_MU, tuple(fns))
    return BuildReport(family, optimal, stats, cover)


# -- Scott-Suppes utility for finite semiorders -----------------------------

def solve_difference_constraints(n: int, constraints: Iterable[tuple[int, int, tuple[int, int]]]):
    """Feasible point of ``x_a - x_b ≤ c`` with ``c = c0 + c1·ε`` symbolic.

    Bounds are pairs compared lexicographically, i.e. ``ε`` is a positive
    infinitesimal.  Bellman-Ford from a virtual source; returns the list of
    potentials as pairs, or ``None`` when a negative cycle makes the system
    infeasible for every small ``ε``.
    """
    edges = list(constraints)
    dist = [(0, 0)] * n
    for _ in range(n + 1):
        changed = False
        for a, b, (c0, c1) in edges:
            cand = (dist[b][0] + c0, dist[b][1] + c1)
            if cand < dist[a]:
                dist[a] = cand
                changed = True
        if not changed:
            return dist
    return None


def build_ss(S: Relation) -> BuildReport:
    """Scott-Suppes utility ``u`` with ``x ≾ y ⟺ u(x) ≤ u(y) + 1``.

    Constraints: ``u(y) ≥ u(x) + 1 + ε`` for ``x ≺ y`` and ``|u(x) - u(y)| ≤ 1``
    for ``x ∼ y``; solved symbolically, then ``ε = 1/(2n)``.  Potentials carry
    at most ``n`` units of ``ε``, so that value keeps every strict gap.
    """
    rep = classify(S)
    if not rep.semiorder:
        raise NotASemiorder(f"not a semiorder; counterexample {rep.semiorder.counterexample}",
                            rep.semiorder.counterexample)
    n = S.n
    strict, indiff = S.strict, S.indifference
    constraints = []
    for i in range(n):
        for j in range(n):
            if strict.related(i, j):
                constraints.append((i, j, (-1, -1)))
            elif i != j and indiff.related(i, j):
                constraints.append((i, j, (1, 0)))
    dist = solve_difference_constraints(n, constraints)
    if dist is None:
        raise NotASemiorder("threshold constraints are infeasible")
    eps = Fraction(1, 2 * n)
    raw = [a + b * eps for a, b in dist]
    low = min(raw)
    u = PartialFn.total(S.ground, [v - low for v in raw], name="u")
    family = ReprFamily(Kind.SS, (u,))
    if not verify_ss(S, u).ok:
        raise AssertionError("Scott-Suppes construction failed its own check")
    return BuildReport(family, optimal=True,
                       stats={"constraints": len(constraints), "epsilon": format_fraction(eps)})
