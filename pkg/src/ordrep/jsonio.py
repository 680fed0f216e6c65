"""JSON encoding of relations, functions, families and topologies.

Every document carries ``"schema": "ordrep/1"``.  Rationals are written as
``"p/q"`` strings (``"3"`` when integral); integers are also accepted on
input, floats are refused.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import MalformedInput
from .partial import Kind, PartialFn, ReprFamily, format_fraction, to_fraction
from .relation import GroundSet, Relation
from .topology import FiniteTopology

SCHEMA = "ordrep/1"


def _flat(value) -> bool:
    return isinstance(value, list) and all(
        not isinstance(v, (list, dict)) or isinstance(v, list) and all(not isinstance(w, (list, dict)) for w in v)
        for v in value)


def _render(value, depth: int) -> str:
    # Lists of scalars (or of scalar pairs) stay on one line.
    if isinstance(value, dict) and value:
        pad = "  " * (depth + 1)
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(value, list) and value and not _flat(value):
        pad = "  " * (depth + 1)
        return "[\n" + ",\n".join(pad + _render(v, depth + 1) for v in value) + "\n" + "  " * depth + "]"
    return json.dumps(value, ensure_ascii=False)


def dumps(doc) -> str:
    return _render(doc, 0) + "\n"


def _reject_float(text):
    raise MalformedInput(f"refusing inexact number {text}; write rationals as \"p/q\"")


def loads(text: str):
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    if isinstance(doc, dict) and "schema" in doc and doc["schema"] != SCHEMA:
        raise MalformedInput(f"unsupported schema {doc['schema']!r}, expected {SCHEMA!r}")
    return doc


def load_path(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def encode_value(q: Fraction) -> str:
    return format_fraction(q)


def _require(doc, key, kind=None):
    if not isinstance(doc, dict):
        raise MalformedInput("expected a JSON object")
    if key not in doc:
        raise MalformedInput(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise MalformedInput(f"field {key!r} has the wrong type")
    return value


def _labels(values) -> tuple[str, ...]:
    if not isinstance(values, list) or not all(isinstance(x, str) for x in values):
        raise MalformedInput("elements must be a list of strings")
    return tuple(values)


# -- relation ---------------------------------------------------------------

def relation_to_json(R: Relation) -> dict:
    return {"schema": SCHEMA, "elements": list(R.elements), "pairs": [list(p) for p in R.pairs()]}


def relation_from_json(doc) -> Relation:
    elements = _labels(_require(doc, "elements"))
    ground = GroundSet(elements)
    if "matrix" in doc:
        matrix = doc["matrix"]
        if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix) or len(matrix) != ground.n:
            raise MalformedInput("matrix must be a square list of lists")
        R = Relation.from_matrix(ground, [[bool(v) for v in row] for row in matrix])
    else:
        pairs = _require(doc, "pairs", list)
        for p in pairs:
            if not isinstance(p, list) or len(p) != 2 or not all(isinstance(x, str) for x in p):
                raise MalformedInput(f"pair must be two labels: {p!r}")
        R = Relation.from_pairs(ground, [tuple(p) for p in pairs])
    if doc.get("reflexive_closure", False):
        R = R.reflexive_closure()
    return R


# -- functions and families -------------------------------------------------

def function_to_json(f: PartialFn) -> dict:
    return {"name": f.name, "values": {x: encode_value(v) for x, v in f.items()}}


def function_from_json(doc, ground: GroundSet) -> PartialFn:
    values = _require(doc, "values", dict)
    mapping = {}
    for x, v in values.items():
        if v is None:
            continue
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise MalformedInput(f"value at {x!r} must be an integer or a \"p/q\" string")
        mapping[x] = to_fraction(v)
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise MalformedInput("function name must be a string")
    return PartialFn.from_mapping(ground, mapping, name=name)


def family_to_json(F: ReprFamily) -> dict:
    return {
        "schema": SCHEMA,
        "kind": F.kind.value,
        "threshold": encode_value(F.threshold),
        "functions": [function_to_json(f) for f in F.functions],
    }


def family_from_json(doc, ground: GroundSet, kind: Kind | str | None = None) -> ReprFamily:
    fns = _require(doc, "functions", list)
    chosen = kind if kind is not None else doc.get("kind")
    if chosen is None:
        raise MalformedInput("family kind missing; pass --kind")
    try:
        chosen = Kind(chosen)
    except ValueError:
        raise MalformedInput(f"unknown family kind {chosen!r}") from None
    threshold = doc.get("threshold", 1)
    if isinstance(threshold, bool) or not isinstance(threshold, (int, str)):
        raise MalformedInput("threshold must be an integer or a \"p/q\" string")
    return ReprFamily(chosen, tuple(function_from_json(f, ground) for f in fns), to_fraction(threshold))


# -- topology ---------------------------------------------------------------

def topology_to_json(tau: FiniteTopology) -> dict:
    full = tau.ground.full
    opens = [list(o) for o in tau.open_sets() if o and tau.ground.mask(o) != full]
    return {"schema": SCHEMA, "elements": list(tau.ground.names), "opens": opens}


def topology_from_json(doc, ground: GroundSet | None = None) -> FiniteTopology:
    if "elements" in doc:
        own = GroundSet(_labels(doc["elements"]))
        if ground is not None and set(own.names) != set(ground.names):
            raise MalformedInput("topology elements differ from the relation's")
        if ground is None:
            ground = own
    if ground is None:
        raise MalformedInput("topology needs an elements list or a relation")
    opens = _require(doc, "opens", list)
    for o in opens:
        if not isinstance(o, list) or not all(isinstance(x, str) for x in o):
            raise MalformedInput(f"open set must be a list of labels: {o!r}")
    return FiniteTopology.from_opens(ground, opens)
