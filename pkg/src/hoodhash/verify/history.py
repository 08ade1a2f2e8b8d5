"""
History capture and per-key linearizability checking.

Keys of a set are independent, so a history is linearizable iff every per-key
sub-history is linearizable against a two-state (absent/present) machine.
"""

import threading
from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass
from enum import StrEnum
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict

from hoodhash.errors import MalformedHistoryError
from hoodhash.rng import SplitMix64
from hoodhash.table import RobinHoodTable

INFINITY = float("inf")


class OpKind(StrEnum):
    ADD = "add"
    REMOVE = "remove"
    CONTAINS = "contains"


class Phase(StrEnum):
    INVOKE = "invoke"
    RESPONSE = "response"


class HistoryEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    thread: int
    op: OpKind
    key: int
    phase: Phase
    result: bool | None = None
    index: int


class HistoryRecorder:
    """Collects invoke/response events stamped from one shared monotone counter."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._next_index = 0
        self._events: list[HistoryEvent] = []

    def _stamp(self, thread: int, op: OpKind, key: int, phase: Phase, result: bool | None = None) -> None:
        with self._lock:
            self._events.append(
                HistoryEvent(thread=thread, op=op, key=key, phase=phase, result=result, index=self._next_index)
            )
            self._next_index += 1

    def invoke(self, thread: int, op: OpKind, key: int) -> None:
        self._stamp(thread, op, key, Phase.INVOKE)

    def respond(self, thread: int, op: OpKind, key: int, result: bool) -> None:
        self._stamp(thread, op, key, Phase.RESPONSE, result)

    @property
    def events(self) -> list[HistoryEvent]:
        with self._lock:
            return list(self._events)

    def recorded(self, table: RobinHoodTable, thread: int) -> "RecordingTable":
        return RecordingTable(table, self, thread)


class RecordingTable:
    """Per-thread proxy that records every call made through it."""

    __slots__ = ("table", "recorder", "thread")

    def __init__(self, table: RobinHoodTable, recorder: HistoryRecorder, thread: int) -> None:
        self.table = table
        self.recorder = recorder
        self.thread = thread

    def _call(self, op: OpKind, key: int) -> bool:
        self.recorder.invoke(self.thread, op, key)
        result = getattr(self.table, op.value)(key)
        self.recorder.respond(self.thread, op, key, result)
        return result

    def add(self, key: int) -> bool:
        return self._call(OpKind.ADD, key)

    def remove(self, key: int) -> bool:
        return self._call(OpKind.REMOVE, key)

    def contains(self, key: int) -> bool:
        return self._call(OpKind.CONTAINS, key)


class Operation(NamedTuple):
    invoked: int
    responded: float
    op: OpKind
    result: bool | None


@dataclass(frozen=True, slots=True)
class KeyVerdict:
    key: int
    linearizable: bool
    operations: int


def pair_operations(events: Iterable[HistoryEvent]) -> dict[int, list[Operation]]:
    """Match invokes with responses per thread; operations without a response stay pending."""
    open_calls: dict[int, HistoryEvent] = {}
    per_key: dict[int, list[Operation]] = defaultdict(list)
    seen_indices: set[int] = set()
    for event in sorted(events, key=lambda e: e.index):
        if event.index in seen_indices:
            raise MalformedHistoryError(f"event index {event.index} appears twice")
        seen_indices.add(event.index)
        pending = open_calls.get(event.thread)
        if event.phase is Phase.INVOKE:
            if pending is not None:
                raise MalformedHistoryError(f"thread {event.thread} invoked twice without a response")
            open_calls[event.thread] = event
            continue
        if pending is None or pending.op is not event.op or pending.key != event.key:
            raise MalformedHistoryError(f"response at index {event.index} does not match an open invocation")
        if event.result is None:
            raise MalformedHistoryError(f"response at index {event.index} carries no result")
        per_key[event.key].append(Operation(pending.index, event.index, event.op, event.result))
        del open_calls[event.thread]
    for pending in open_calls.values():
        per_key[pending.key].append(Operation(pending.index, INFINITY, pending.op, None))
    return per_key


def _apply(op: Operation, present: bool) -> bool | None:
    """New state after linearizing ``op``, or None if its recorded result is impossible here."""
    if op.op is OpKind.CONTAINS:
        return present if op.result is None or op.result == present else None
    target = op.op is OpKind.ADD
    if op.result is None:
        return target
    changed = present != target
    return target if op.result == changed else None


def check_key(operations: list[Operation], initially_present: bool = False) -> bool:
    """
    Wing & Gong style search with memoisation.

    Operations are ordered by invocation; a search state is (first operation not
    yet linearized, linearized operations after it, set state). Concurrency is
    bounded by the thread count, so the second component stays small.
    """
    ops = sorted(operations, key=lambda o: o.invoked)
    n = len(ops)
    required = sum(1 for o in ops if o.result is not None)
    start = (0, frozenset(), initially_present, 0)
    stack = [start]
    visited: set[tuple[int, frozenset[int], bool]] = set()
    while stack:
        base, done, present, linearized = stack.pop()
        if linearized == required:
            return True
        state_key = (base, done, present)
        if state_key in visited:
            continue
        visited.add(state_key)

        horizon = INFINITY
        j = base
        candidates = []
        while j < n and ops[j].invoked < horizon:
            if j not in done:
                candidates.append(j)
                horizon = min(horizon, ops[j].responded)
            j += 1
        for j in candidates:
            if ops[j].invoked > horizon:
                continue
            after = _apply(ops[j], present)
            if after is None:
                continue
            new_done = done | {j}
            new_base = base
            while new_base in new_done:
                new_done = new_done - {new_base}
                new_base += 1
            counted = linearized + (ops[j].result is not None)
            stack.append((new_base, frozenset(new_done), after, counted))
    return False


def check_per_key_history(
    events: Iterable[HistoryEvent], initial_members: Iterable[int] = ()
) -> dict[int, KeyVerdict]:
    initial = set(initial_members)
    verdicts = {}
    for key, operations in sorted(pair_operations(events).items()):
        verdicts[key] = KeyVerdict(key, check_key(operations, key in initial), len(operations))
    return verdicts


def draw_op(rng: SplitMix64, update_ratio: float) -> OpKind:
    """Add and remove share ``update_ratio`` evenly; everything else is a lookup."""
    roll = rng.random()
    if roll < update_ratio / 2:
        return OpKind.ADD
    if roll < update_ratio:
        return OpKind.REMOVE
    return OpKind.CONTAINS
