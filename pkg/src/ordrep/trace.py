"""Event traces of message-passing executions and their happened-before order.

Trace files are JSON lines, one event per line::

    {"proc": 0, "seq": 1, "kind": "send", "msg": "m", "id": "a1"}

``id`` is optional (default ``p{proc}:{seq}``).  A line ``{"processes": P}``
may declare processes that never act.  Receives may precede their send in
the file; program order and message edges are then closed transitively and
a cycle is rejected.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .build import build_minimal_partial_rp_mu, EXACT_CLASS_CAP
from .errors import CausalCycle, DanglingReceive, DuplicateMessageId, MalformedInput
from .jsonio import family_to_json, relation_to_json
from .partial import ReprFamily
from .relation import GroundSet, Relation, transitive_closure, width
from .verify import verify_partial_rp_mu

KINDS = ("local", "send", "receive")


@dataclass(frozen=True)
class Event:
    proc: int
    seq: int
    kind: str
    msg: str | None = None
    id: str | None = None

    @property
    def label(self) -> str:
        return self.id if self.id is not None else f"p{self.proc}:{self.seq}"

    def as_dict(self) -> dict:
        d = {"proc": self.proc, "seq": self.seq, "kind": self.kind}
        if self.msg is not None:
            d["msg"] = self.msg
        if self.id is not None:
            d["id"] = self.id
        return d


@dataclass(frozen=True)
class Trace:
    processes: int
    events: tuple[Event, ...]

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        last: dict[int, int] = {}
        labels = set()
        sends: dict[str, Event] = {}
        receives: dict[str, Event] = {}
        for e in events:
            if not 0 <= e.proc < self.processes:
                raise MalformedInput(f"process {e.proc} outside 0..{self.processes - 1}")
            if e.kind not in KINDS:
                raise MalformedInput(f"unknown event kind {e.kind!r}")
            if (e.msg is None) != (e.kind == "local"):
                raise MalformedInput(f"event {e.label}: sends and receives carry a message id, locals do not")
            if e.proc in last and e.seq <= last[e.proc]:
                raise MalformedInput(f"event {e.label}: sequence numbers of process {e.proc} must increase")
            last[e.proc] = e.seq
            if e.label in labels:
                raise MalformedInput(f"duplicate event id {e.label!r}")
            labels.add(e.label)
            table = sends if e.kind == "send" else receives if e.kind == "receive" else None
            if table is not None:
                if e.msg in table:
                    raise DuplicateMessageId(f"message {e.msg!r} has two {e.kind} events")
                table[e.msg] = e
        for m, e in receives.items():
            if m not in sends:
                raise DanglingReceive(f"event {e.label} receives {m!r}, which is never sent")

    def ordered(self) -> list[Event]:
        return sorted(self.events, key=lambda e: (e.proc, e.seq))

    def to_jsonl(self) -> str:
        lines = [json.dumps({"processes": self.processes})]
        lines += [json.dumps(e.as_dict()) for e in self.events]
        return "\n".join(lines) + "\n"


def parse_trace(text: str) -> Trace:
    events = []
    declared = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"line {lineno}: invalid JSON ({exc.msg})") from None
        if not isinstance(rec, dict):
            raise MalformedInput(f"line {lineno}: expected an object")
        if set(rec) == {"processes"}:
            declared = rec["processes"]
            if isinstance(declared, bool) or not isinstance(declared, int) or declared < 1:
                raise MalformedInput(f"line {lineno}: processes must be a positive integer")
            continue
        try:
            proc, seq, kind = rec["proc"], rec["seq"], rec["kind"]
        except KeyError as exc:
            raise MalformedInput(f"line {lineno}: missing field {exc.args[0]!r}") from None
        for key, value in (("proc", proc), ("seq", seq)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise MalformedInput(f"line {lineno}: {key} must be an integer")
        msg, ident = rec.get("msg"), rec.get("id")
        if msg is not None and not isinstance(msg, str) or ident is not None and not isinstance(ident, str):
            raise MalformedInput(f"line {lineno}: msg and id must be strings")
        events.append(Event(proc, seq, kind, msg, ident))
    top = max((e.proc for e in events), default=-1) + 1
    if declared is not None and declared < top:
        raise MalformedInput(f"declared {declared} processes but process {top - 1} acts")
    return Trace(declared if declared is not None else max(top, 1), tuple(events))


def happened_before(t: Trace) -> Relation:
    """Reflexive-transitive closure of program order and send-before-receive."""
    events = t.ordered()
    ground = GroundSet(tuple(e.label for e in events))
    pos = {e.label: i for i, e in enumerate(events)}
    rows = [0] * len(events)
    for a, b in zip(events, events[1:]):
        if a.proc == b.proc:
            rows[pos[a.label]] |= 1 << pos[b.label]
    sends = {e.msg: e for e in events if e.kind == "send"}
    for e in events:
        if e.kind == "receive":
            rows[pos[sends[e.msg].label]] |= 1 << pos[e.label]
    closed = transitive_closure(Relation(ground, tuple(rows)))
    for i, row in enumerate(closed.rows):
        if row >> i & 1:
            raise CausalCycle(f"event {ground.names[i]} happens before itself")
    return closed.reflexive_closure()


def generate_trace(procs: int, events: int, msg_prob: float = 0.3, seed: int = 0) -> Trace:
    """Seeded random execution; every receive follows its send in logical time."""
    if procs < 1 or events < 0:
        raise MalformedInput("need at least one process and a nonnegative event count")
    if not 0 <= msg_prob <= 1:
        raise MalformedInput("message probability must lie in [0, 1]")
    rng = random.Random(seed)
    seq = [0] * procs
    inbox: list[list[str]] = [[] for _ in range(procs)]
    out = []
    sent = 0
    for _ in range(events):
        p = rng.randrange(procs)
        seq[p] += 1
        if inbox[p] and rng.random() < 0.5:
            out.append(Event(p, seq[p], "receive", inbox[p].pop(0)))
        elif procs > 1 and rng.random() < msg_prob:
            sent += 1
            m = f"m{sent}"
            dest = rng.choice([q for q in range(procs) if q != p])
            inbox[dest].append(m)
            out.append(Event(p, seq[p], "send", m))
        else:
            out.append(Event(p, seq[p], "local"))
    return Trace(procs, tuple(out))


@dataclass(frozen=True)
class ClockReport:
    relation: Relation
    family: ReprFamily
    functions: int
    processes: int
    width: int
    verified: bool
    optimal: bool
    mode: str
    stats: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "functions": self.functions,
            "vector_clock_components": self.processes,
            "width": self.width,
            "verified": self.verified,
            "optimal": self.optimal,
            "mode": self.mode,
            "stats": self.stats,
            "relation": relation_to_json(self.relation),
            "family": family_to_json(self.family),
        }


def clock_report(t: Trace, mode: str = "auto") -> ClockReport:
    """Partial clocks (chain-domain family) against vector-clock components.

    ``auto`` runs the exact search when the poset is within its cap and the
    greedy cover otherwise.
    """
    P = happened_before(t)
    if mode == "auto":
        mode = "exact" if P.n <= EXACT_CLASS_CAP else "greedy"
    built = build_minimal_partial_rp_mu(P, mode=mode)
    verdict = verify_partial_rp_mu(P, built.family)
    return ClockReport(P, built.family, len(built.family), t.processes, width(P).width,
                       verdict.ok, built.optimal, mode, built.stats)
