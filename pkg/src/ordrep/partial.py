"""Exact-rational partial functions and representation families."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import MalformedInput, NonPositiveAlpha, PartialFunctionInTotalKind
from .relation import GroundSet, bits


class _Undefined:
    """Outcome of evaluating a partial function outside its domain."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED"

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


def to_fraction(value) -> Fraction:
    """Exact conversion; floats are refused so thresholds stay exact."""
    if isinstance(value, bool) or isinstance(value, float):
        raise MalformedInput(f"refusing inexact or boolean value {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedInput(f"not a rational: {value!r}") from None
    raise MalformedInput(f"not a rational: {value!r}")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PartialFn:
    """A map from part of the ground set to the rationals.

    ``values[i]`` is ``None`` where the function is undefined; callers see
    :data:`UNDEFINED` through :meth:`eval` instead.
    """

    ground: GroundSet
    values: tuple[Fraction | None, ...]
    name: str = ""

    def __post_init__(self):
        values = tuple(None if v is None else to_fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.ground.n:
            raise MalformedInput("value vector does not match the ground set")

    @classmethod
    def from_mapping(cls, ground: GroundSet | Sequence[str], mapping: Mapping[str, object],
                     name: str = "") -> PartialFn:
        if not isinstance(ground, GroundSet):
            ground = GroundSet(tuple(ground))
        values: list = [None] * ground.n
        for label, value in mapping.items():
            values[ground.index(label)] = to_fraction(value)
        return cls(ground, tuple(values), name)

    @classmethod
    def total(cls, ground, values: Sequence, name: str = "") -> PartialFn:
        if not isinstance(ground, GroundSet):
            ground = GroundSet(tuple(ground))
        return cls(ground, tuple(to_fraction(v) for v in values), name)

    @cached_property
    def domain_mask(self) -> int:
        return sum(1 << i for i, v in enumerate(self.values) if v is not None)

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self.ground.labels(self.domain_mask))

    @property
    def is_total(self) -> bool:
        return self.domain_mask == self.ground.full

    def eval(self, x: str):
        v = self.values[self.ground.index(x)]
        return UNDEFINED if v is None else v

    __call__ = eval

    def items(self):
        """(label, value) over the domain, in ground-set order."""
        return [(self.ground.names[i], self.values[i]) for i in bits(self.domain_mask)]

    def as_mapping(self) -> dict[str, Fraction]:
        return dict(self.items())

    def renamed(self, name: str) -> PartialFn:
        return PartialFn(self.ground, self.values, name)

    def __repr__(self):
        body = ", ".join(f"{x}→{format_fraction(v)}" for x, v in self.items())
        label = f"{self.name}: " if self.name else ""
        return f"PartialFn({label}{{{body}}})"


def restrict(f: PartialFn, subset: Iterable[str]) -> PartialFn:
    keep = f.ground.mask(subset)
    return PartialFn(
        f.ground,
        tuple(v if keep >> i & 1 else None for i, v in enumerate(f.values)),
        f.name,
    )


def scale_add(v: PartialFn, f: PartialFn, alpha) -> PartialFn:
    """``v + alpha·f``, undefined wherever either addend is undefined."""
    alpha = to_fraction(alpha)
    if alpha <= 0:
        raise NonPositiveAlpha(f"alpha must be positive, got {alpha}")
    if v.ground != f.ground:
        raise MalformedInput("functions live on different ground sets")
    values = tuple(
        None if a is None or b is None else a + alpha * b
        for a, b in zip(v.values, f.values)
    )
    name = f"{v.name}+{format_fraction(alpha)}·{f.name}" if v.name or f.name else ""
    return PartialFn(v.ground, values, name)


class Kind(str, enum.Enum):
    MULTI_UTILITY = "mu"
    RP_MULTI_UTILITY = "rp-mu"
    PARTIAL_MU = "partial-mu"
    PARTIAL_RP_MU = "partial-rp-mu"
    SS = "ss"
    PARTIAL_SS = "partial-ss"
    PARTIAL_RPSS = "partial-rpss"

    @property
    def is_partial(self) -> bool:
        return self.value.startswith("partial")

    @property
    def uses_threshold(self) -> bool:
        return self in (Kind.SS, Kind.PARTIAL_SS, Kind.PARTIAL_RPSS)


ONE = Fraction(1)


@dataclass(frozen=True)
class ReprFamily:
    kind: Kind
    functions: tuple[PartialFn, ...]
    threshold: Fraction = ONE

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "threshold", to_fraction(self.threshold))
        if kind.uses_threshold and self.threshold != ONE:
            raise MalformedInput(f"{kind.value} families use threshold 1, got {self.threshold}")
        grounds = {f.ground for f in self.functions}
        if len(grounds) > 1:
            raise MalformedInput("family mixes functions on different ground sets")
        if not kind.is_partial:
            for f in self.functions:
                if not f.is_total:
                    missing = sorted(set(f.ground.names) - f.domain)
                    raise PartialFunctionInTotalKind(
                        f"{kind.value} needs total functions; {f.name or 'a function'} "
                        f"is undefined at {missing}")
        if kind is Kind.SS and len(self.functions) != 1:
            raise MalformedInput("a Scott-Suppes family holds exactly one utility")

    def __len__(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def retagged(self, kind: Kind) -> ReprFamily:
        return ReprFamily(Kind(kind), self.functions, self.threshold)

    def uncovered(self, ground: GroundSet) -> frozenset[str]:
        """Elements outside every function's domain."""
        covered = 0
        for f in self.functions:
            covered |= f.domain_mask
        return frozenset(ground.labels(ground.full & ~covered))
