"""Preorders, partial multi-utility representations and finite topologies."""

from .errors import OrdRepError
from .partial import UNDEFINED, Kind, PartialFn, ReprFamily
from .relation import GroundSet, Relation, classify, quotient, width
from .verify import Verdict, verify

__all__ = [
    "OrdRepError", "UNDEFINED", "Kind", "PartialFn", "ReprFamily",
    "GroundSet", "Relation", "classify", "quotient", "width", "Verdict", "verify",
]
