"""Finite binary relations on a labelled ground set.

A relation is stored as one integer bitset per row: bit ``j`` of ``rows[i]``
is set when element ``i`` is related to element ``j`` (``i ≾ j``).  All
objects are immutable, so they can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

import networkx as nx

from .errors import (
    CapExceeded,
    CyclicStrictPart,
    MalformedInput,
    NotAPreorder,
    UnknownElement,
)

MAX_ELEMENTS = 4096
BRUTE_FORCE_WIDTH_LIMIT = 15


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class GroundSet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for name in names:
            if not isinstance(name, str):
                raise MalformedInput(f"element labels must be strings, got {name!r}")
        if len(set(names)) != len(names):
            seen = set()
            dup = next(x for x in names if x in seen or seen.add(x))
            raise MalformedInput(f"duplicate element label {dup!r}")
        if len(names) > MAX_ELEMENTS:
            raise CapExceeded(f"{len(names)} elements exceeds the cap of {MAX_ELEMENTS}")

    @cached_property
    def _position(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, label):
        return label in self._position

    def index(self, label: str) -> int:
        try:
            return self._position[label]
        except KeyError:
            raise UnknownElement(label) from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[i] for i in bits(mask))


@dataclass(frozen=True)
class Relation:
    ground: GroundSet
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.ground.n:
            raise MalformedInput("row count does not match the ground set")
        full = self.ground.full
        if any(r & ~full for r in rows):
            raise MalformedInput("row bits outside the ground set")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_pairs(cls, elements: Sequence[str] | GroundSet, pairs: Iterable[tuple[str, str]],
                   reflexive_closure: bool = False) -> Relation:
        ground = elements if isinstance(elements, GroundSet) else GroundSet(tuple(elements))
        rows = [0] * ground.n
        for pair in pairs:
            if len(pair) != 2:
                raise MalformedInput(f"pair must have two entries: {pair!r}")
            x, y = pair
            rows[ground.index(x)] |= 1 << ground.index(y)
        if reflexive_closure:
            rows = [r | (1 << i) for i, r in enumerate(rows)]
        return cls(ground, tuple(rows))

    @classmethod
    def from_predicate(cls, elements: Sequence[str] | GroundSet,
                       related: Callable[[str, str], bool]) -> Relation:
        """Tabulate ``related(x, y)`` over every ordered pair."""
        ground = elements if isinstance(elements, GroundSet) else GroundSet(tuple(elements))
        rows = []
        for x in ground.names:
            r = 0
            for j, y in enumerate(ground.names):
                if related(x, y):
                    r |= 1 << j
            rows.append(r)
        return cls(ground, tuple(rows))

    @classmethod
    def from_matrix(cls, elements: Sequence[str] | GroundSet,
                    matrix: Sequence[Sequence[bool]]) -> Relation:
        ground = elements if isinstance(elements, GroundSet) else GroundSet(tuple(elements))
        rows = []
        for row in matrix:
            if len(row) != ground.n:
                raise MalformedInput("matrix is not square")
            rows.append(sum(1 << j for j, v in enumerate(row) if v))
        return cls(ground, tuple(rows))

    @classmethod
    def identity(cls, elements) -> Relation:
        ground = elements if isinstance(elements, GroundSet) else GroundSet(tuple(elements))
        return cls(ground, tuple(1 << i for i in range(ground.n)))

    @classmethod
    def chain(cls, elements) -> Relation:
        """Linear order listing ``elements`` from least to greatest."""
        ground = elements if isinstance(elements, GroundSet) else GroundSet(tuple(elements))
        full = ground.full
        return cls(ground, tuple(full & ~((1 << i) - 1) for i in range(ground.n)))

    # -- access -----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def elements(self) -> tuple[str, ...]:
        return self.ground.names

    def le(self, x: str, y: str) -> bool:
        """``x ≾ y``."""
        return bool(self.rows[self.ground.index(x)] >> self.ground.index(y) & 1)

    def related(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    @cached_property
    def cols(self) -> tuple[int, ...]:
        cols = [0] * self.n
        for i, row in enumerate(self.rows):
            for j in bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    def transpose(self) -> Relation:
        return Relation(self.ground, self.cols)

    @cached_property
    def strict(self) -> Relation:
        """Asymmetric part: ``x ≺ y`` iff ``x ≾ y`` and not ``y ≾ x``."""
        return Relation(self.ground, tuple(r & ~c for r, c in zip(self.rows, self.cols)))

    @cached_property
    def indifference(self) -> Relation:
        return Relation(self.ground, tuple(r & c for r, c in zip(self.rows, self.cols)))

    @cached_property
    def incomparability(self) -> Relation:
        full = self.ground.full
        return Relation(self.ground, tuple(full & ~(r | c) for r, c in zip(self.rows, self.cols)))

    def pairs(self) -> Iterator[tuple[str, str]]:
        names = self.ground.names
        for i, row in enumerate(self.rows):
            for j in bits(row):
                yield names[i], names[j]

    def matrix(self) -> list[list[bool]]:
        return [[bool(r >> j & 1) for j in range(self.n)] for r in self.rows]

    def reflexive_closure(self) -> Relation:
        return Relation(self.ground, tuple(r | (1 << i) for i, r in enumerate(self.rows)))

    def restrict(self, labels: Iterable[str]) -> Relation:
        """Induced relation on a subset, keeping the ground set's order."""
        keep = sorted(self.ground.index(x) for x in set(labels))
        ground = GroundSet(tuple(self.ground.names[i] for i in keep))
        rows = []
        for i in keep:
            r = 0
            for new_j, j in enumerate(keep):
                if self.rows[i] >> j & 1:
                    r |= 1 << new_j
            rows.append(r)
        return Relation(ground, tuple(rows))

    def is_preorder(self) -> bool:
        return _reflexive_witness(self) is None and _transitive_witness(self) is None

    def is_partial_order(self) -> bool:
        return self.is_preorder() and _antisymmetric_witness(self) is None

    def __repr__(self):
        shown = ", ".join(f"{x}≾{y}" for x, y in self.pairs() if x != y)
        return f"Relation({list(self.elements)}, {{{shown}}})"


# -- classification ---------------------------------------------------------

@dataclass(frozen=True)
class Flag:
    holds: bool
    counterexample: tuple[str, ...] | None = None

    def __bool__(self):
        return self.holds


PROPERTIES = (
    "reflexive", "irreflexive", "symmetric", "antisymmetric", "asymmetric", "total",
    "transitive", "preorder", "partial_order", "interval_order", "semiorder",
)


@dataclass(frozen=True)
class PropertyReport:
    reflexive: Flag
    irreflexive: Flag
    symmetric: Flag
    antisymmetric: Flag
    asymmetric: Flag
    total: Flag
    transitive: Flag
    preorder: Flag
    partial_order: Flag
    interval_order: Flag
    semiorder: Flag

    def as_dict(self) -> dict:
        out = {}
        for name in PROPERTIES:
            flag = getattr(self, name)
            out[name] = {
                "holds": flag.holds,
                "counterexample": None if flag.counterexample is None else list(flag.counterexample),
            }
        return out


def _reflexive_witness(R):
    for i, row in enumerate(R.rows):
        if not row >> i & 1:
            return (i,)
    return None


def _irreflexive_witness(R):
    for i, row in enumerate(R.rows):
        if row >> i & 1:
            return (i,)
    return None


def _symmetric_witness(R):
    for i, (row, col) in enumerate(zip(R.rows, R.cols)):
        m = row & ~col
        if m:
            return (i, lowest(m))
    return None


def _antisymmetric_witness(R):
    for i, (row, col) in enumerate(zip(R.rows, R.cols)):
        m = row & col & ~(1 << i)
        if m:
            return (i, lowest(m))
    return None


def _asymmetric_witness(R):
    for i, (row, col) in enumerate(zip(R.rows, R.cols)):
        m = row & col
        if m:
            return (i, lowest(m))
    return None


def _total_witness(R):
    full = R.ground.full
    for i, (row, col) in enumerate(zip(R.rows, R.cols)):
        m = full & ~(row | col)
        if m:
            return (i, lowest(m))
    return None


def _transitive_witness(R):
    rows = R.rows
    for x, row in enumerate(rows):
        for y in bits(row):
            missing = rows[y] & ~row
            if missing:
                return (x, y, lowest(missing))
    return None


def _interval_witness(R, off_diagonal):
    # Instance reported as (x, z, y, w): premises x≾z and y≾w.
    rows, cols, full = R.rows, R.cols, R.ground.full
    for x in range(R.n):
        zs = rows[x] & ~(1 << x) if off_diagonal else rows[x]
        for z in bits(zs):
            for y in bits(full & ~cols[z]):
                ws = rows[y] & ~rows[x]
                if off_diagonal:
                    ws &= ~(1 << y)
                if ws:
                    return (x, z, y, lowest(ws))
    return None


def _semiorder_witness(R, off_diagonal):
    # Instance (x, y, z, w): x≾y, y≾z, yet neither x≾w nor w≾z.
    rows, cols, full = R.rows, R.cols, R.ground.full
    for x in range(R.n):
        ys = rows[x] & ~(1 << x) if off_diagonal else rows[x]
        for y in bits(ys):
            zs = rows[y] & ~(1 << y) if off_diagonal else rows[y]
            for z in bits(zs):
                ws = full & ~rows[x] & ~cols[z]
                if ws:
                    return (x, y, z, lowest(ws))
    return None


def _preferred(R, search):
    """Prefer instances whose premises are off-diagonal pairs; they explain more."""
    return search(R, True) or search(R, False)


def classify(R: Relation) -> PropertyReport:
    """Evaluate every order-theoretic property, with least counterexamples."""
    names = R.ground.names

    def flag(witness):
        if witness is None:
            return Flag(True)
        return Flag(False, tuple(names[i] for i in witness))

    reflexive = _reflexive_witness(R)
    transitive = _transitive_witness(R)
    antisymmetric = _antisymmetric_witness(R)
    preorder = reflexive or transitive
    partial_order = preorder or antisymmetric
    interval = reflexive or _preferred(R, _interval_witness)
    semiorder = interval or _preferred(R, _semiorder_witness)
    return PropertyReport(
        reflexive=flag(reflexive),
        irreflexive=flag(_irreflexive_witness(R)),
        symmetric=flag(_symmetric_witness(R)),
        antisymmetric=flag(antisymmetric),
        asymmetric=flag(_asymmetric_witness(R)),
        total=flag(_total_witness(R)),
        transitive=flag(transitive),
        preorder=flag(preorder),
        partial_order=flag(partial_order),
        interval_order=flag(interval),
        semiorder=flag(semiorder),
    )


def require_preorder(R: Relation, what: str = "relation") -> None:
    witness = _reflexive_witness(R) or _transitive_witness(R)
    if witness is not None:
        shown = tuple(R.ground.names[i] for i in witness)
        raise NotAPreorder(f"{what} is not a preorder; counterexample {shown}")


# -- contour sets, isolated points ------------------------------------------

class Contours(NamedTuple):
    lower: frozenset[str]       # l(x): y ≺ x
    upper: frozenset[str]       # r(x): x ≺ z
    down: frozenset[str]        # d(x): y ≾ x
    up: frozenset[str]          # i(x): x ≾ z


def contour_masks(R: Relation, i: int) -> tuple[int, int, int, int]:
    strict = R.strict
    return strict.cols[i], strict.rows[i], R.cols[i], R.rows[i]


def contours(R: Relation, x: str) -> Contours:
    i = R.ground.index(x)
    labels = R.ground.labels
    return Contours(*(frozenset(labels(m)) for m in contour_masks(R, i)))


def isolated_points(R: Relation) -> frozenset[str]:
    """Elements related, in either direction, to no other element."""
    out = []
    for i, (row, col) in enumerate(zip(R.rows, R.cols)):
        if not (row | col) & ~(1 << i):
            out.append(R.ground.names[i])
    return frozenset(out)


def isolated_mask(R: Relation) -> int:
    m = 0
    for i, (row, col) in enumerate(zip(R.rows, R.cols)):
        if not (row | col) & ~(1 << i):
            m |= 1 << i
    return m


# -- quotient ---------------------------------------------------------------

@dataclass(frozen=True)
class Quotient:
    relation: Relation                  # partial order on the classes
    classes: tuple[tuple[str, ...], ...]
    projection: dict                    # element label -> class index

    def class_of(self, x: str) -> tuple[str, ...]:
        return self.classes[self.projection[x]]


def quotient(R: Relation) -> Quotient:
    """Collapse ∼-classes of a preorder; classes are ordered by least member."""
    require_preorder(R)
    indiff = R.indifference.rows
    owner = [-1] * R.n
    class_masks = []
    for i in range(R.n):
        if owner[i] < 0:
            for j in bits(indiff[i]):
                owner[j] = len(class_masks)
            class_masks.append(indiff[i])
    reps = [lowest(m) for m in class_masks]
    rows = []
    for rep in reps:
        r = 0
        for c, other in enumerate(reps):
            if R.rows[rep] >> other & 1:
                r |= 1 << c
        rows.append(r)
    classes = tuple(R.ground.labels(m) for m in class_masks)
    names = tuple("~".join(members) for members in classes)
    projection = {R.ground.names[i]: owner[i] for i in range(R.n)}
    return Quotient(Relation(GroundSet(names), tuple(rows)), classes, projection)


# -- width ------------------------------------------------------------------

class Width(NamedTuple):
    width: int
    witness: tuple[str, ...]


def _comparability(strict_rows: Sequence[int]) -> list[int]:
    comp = list(strict_rows)
    for i, row in enumerate(strict_rows):
        for j in bits(row):
            comp[j] |= 1 << i
    return comp


def max_antichain_bruteforce(strict_rows: Sequence[int]) -> int:
    """Largest set with no strict pair inside, by enumerating all subsets."""
    k = len(strict_rows)
    comp = _comparability(strict_rows)
    best = 0
    for mask in range(1 << k):
        size = bin(mask).count("1")
        if size <= best:
            continue
        if all(not (comp[i] & mask) for i in bits(mask)):
            best = size
    return best


def width(R: Relation, cross_check: bool = True) -> Width:
    """Width of a preorder, measured on its quotient.

    Dilworth: the largest antichain equals the least number of chains
    covering the classes, which is ``k - |maximum matching|`` in the split
    bipartite graph of the strict order.  The witness comes from König's
    vertex cover taken from the upper side, which yields the lowest maximum
    antichain; each class is shown by its least member.
    """
    q = quotient(R)
    strict = q.relation.strict.rows
    k = len(strict)
    lo = [("lo", i) for i in range(k)]
    hi = [("hi", i) for i in range(k)]
    graph = nx.Graph()
    graph.add_nodes_from(lo)
    graph.add_nodes_from(hi)
    graph.add_edges_from((("lo", i), ("hi", j)) for i in range(k) for j in bits(strict[i]))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=lo)
    cover = nx.bipartite.to_vertex_cover(graph, matching, top_nodes=hi)
    size = k - len(matching) // 2
    members = [i for i in range(k) if ("lo", i) not in cover and ("hi", i) not in cover]
    if len(members) != size:
        raise AssertionError("König construction disagrees with Dilworth count")
    if cross_check and k <= BRUTE_FORCE_WIDTH_LIMIT:
        brute = max_antichain_bruteforce(strict)
        if brute != size:
            raise AssertionError(f"width cross-check failed: matching {size}, brute force {brute}")
    return Width(size, tuple(q.classes[i][0] for i in members))


# -- closure and reduction --------------------------------------------------

def transitive_closure(R: Relation) -> Relation:
    rows = list(R.rows)
    for k in range(R.n):
        bit = 1 << k
        row_k = rows[k]
        for i in range(R.n):
            if rows[i] & bit:
                rows[i] |= row_k
    return Relation(R.ground, tuple(rows))


def transitive_reduction(R: Relation) -> Relation:
    """Covering pairs (Hasse diagram) of the closure of ``R``'s strict part."""
    closed = transitive_closure(R.strict).rows
    for i, row in enumerate(closed):
        if row >> i & 1:
            raise CyclicStrictPart(f"strict part has a cycle through {R.ground.names[i]!r}")
    covers = []
    for row in closed:
        reachable_in_two = 0
        for j in bits(row):
            reachable_in_two |= closed[j]
        covers.append(row & ~reachable_in_two)
    return Relation(R.ground, tuple(covers))


def to_dot(R: Relation, name: str = "hasse") -> str:
    """Graphviz source: Hasse edges upward, ties as dashed undirected edges."""
    names = R.ground.names
    hasse = transitive_reduction(R)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f'  "{x}";' for x in names]
    for x, y in hasse.pairs():
        lines.append(f'  "{x}" -> "{y}";')
    for i, row in enumerate(R.indifference.rows):
        for j in bits(row):
            if j > i:
                lines.append(f'  "{names[i]}" -> "{names[j]}" [dir=none, style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
