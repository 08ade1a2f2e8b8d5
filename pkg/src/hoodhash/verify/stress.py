"""Multi-threaded stress drivers whose results are checked by the auditor and the history checker."""

import logging
import threading
import time
from collections.abc import Callable, Iterator
from contextlib import contextmanager

from pydantic import BaseModel, Field

from hoodhash.rng import SplitMix64
from hoodhash.table import RobinHoodTable
from hoodhash.verify.audit import AuditReport, audit_quiescent
from hoodhash.verify.history import HistoryRecorder, OpKind, RecordingTable, check_per_key_history, draw_op

logger = logging.getLogger(__name__)

JOIN_TIMEOUT_SECS = 30.0


class WorldStop:
    """Lets one sampler thread park every worker between two operations."""

    def __init__(self, workers: int) -> None:
        self._cond = threading.Condition()
        self._active = workers
        self._parked = 0
        self._stopping = False

    def checkpoint(self) -> None:
        if not self._stopping:
            return
        with self._cond:
            self._parked += 1
            self._cond.notify_all()
            while self._stopping:
                self._cond.wait()
            self._parked -= 1

    def leave(self) -> None:
        with self._cond:
            self._active -= 1
            self._cond.notify_all()

    @contextmanager
    def stopped(self) -> Iterator[None]:
        with self._cond:
            self._stopping = True
            while self._parked < self._active:
                self._cond.wait()
        try:
            yield
        finally:
            with self._cond:
                self._stopping = False
                self._cond.notify_all()


def prefill_random(table: RobinHoodTable, load_factor: float, seed: int) -> set[int]:
    """Add distinct uniform keys from ``[1, capacity]`` until the load factor is reached."""
    target = round(load_factor * table.capacity)
    rng = SplitMix64(seed)
    members: set[int] = set()
    while len(members) < target:
        key = rng.key(table.capacity)
        if table.add(key):
            members.add(key)
    return members


def run_workers(threads: int, seconds: float, body: Callable[[int, threading.Event], None]) -> None:
    """Start ``threads`` workers behind one barrier, let them run for ``seconds`` and join them."""
    barrier = threading.Barrier(threads + 1)
    stop = threading.Event()
    failures: list[BaseException] = []

    def target(tid: int) -> None:
        try:
            barrier.wait()
            body(tid, stop)
        except BaseException as e:
            failures.append(e)
            stop.set()

    workers = [threading.Thread(target=target, args=(tid,), name=f"hoodhash-worker-{tid}") for tid in range(threads)]
    for worker in workers:
        worker.start()
    barrier.wait()
    stop.wait(seconds)
    stop.set()
    for worker in workers:
        worker.join(JOIN_TIMEOUT_SECS)
    if failures:
        raise failures[0]


def _apply(table: RobinHoodTable | RecordingTable, op: OpKind, key: int) -> bool:
    if op is OpKind.ADD:
        return table.add(key)
    if op is OpKind.REMOVE:
        return table.remove(key)
    return table.contains(key)


class StressAuditResult(BaseModel):
    threads: int
    seconds: float
    capacity_log2: int
    operations: int = 0
    reports: list[AuditReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)


def stress_audit(
    threads: int = 8,
    seconds: float = 2.0,
    *,
    capacity_log2: int = 10,
    load_factor: float = 0.6,
    update_ratio: float = 0.5,
    seed: int = 0,
    sample_every_secs: float | None = None,
) -> StressAuditResult:
    """
    Hammer one table from ``threads`` workers, then audit it.

    With ``sample_every_secs`` the workers are also parked periodically and the
    table audited mid-run; every report, including the final one, must pass.
    """
    table = RobinHoodTable(capacity_log2)
    prefill_random(table, load_factor, seed)
    world = WorldStop(threads)
    counts = [0] * threads
    result = StressAuditResult(threads=threads, seconds=seconds, capacity_log2=capacity_log2)

    def body(tid: int, stop: threading.Event) -> None:
        rng = SplitMix64.for_thread(seed, tid + 1)
        done = 0
        try:
            while not stop.is_set():
                _apply(table, draw_op(rng, update_ratio), rng.key(table.capacity))
                done += 1
                world.checkpoint()
        finally:
            counts[tid] = done
            world.leave()

    sampler_stop = threading.Event()

    def sample() -> None:
        while not sampler_stop.wait(sample_every_secs):
            with world.stopped():
                result.reports.append(audit_quiescent(table))

    sampler = None
    if sample_every_secs:
        sampler = threading.Thread(target=sample, name="hoodhash-sampler")
        sampler.start()
    try:
        run_workers(threads, seconds, body)
    finally:
        sampler_stop.set()
        if sampler is not None:
            sampler.join(JOIN_TIMEOUT_SECS)

    result.reports.append(audit_quiescent(table))
    result.operations = sum(counts)
    for report in result.reports:
        if not report.passed:
            logger.error("stress audit failed: %s", report.summary())
    return result


class LinearizabilityResult(BaseModel):
    threads: int
    keys: int
    seconds: float
    events: int
    violations: list[int] = Field(default_factory=list, description="Keys whose history is not linearizable.")

    @property
    def passed(self) -> bool:
        return not self.violations


def linearizability_stress(
    threads: int = 8, keys: int = 8, seconds: float = 5.0, *, seed: int = 0, capacity_log2: int = 4
) -> LinearizabilityResult:
    """Record a contended run over a tiny key space and check every per-key history."""
    table = RobinHoodTable(capacity_log2)
    recorder = HistoryRecorder()

    def body(tid: int, stop: threading.Event) -> None:
        rng = SplitMix64.for_thread(seed, tid + 1)
        proxy = recorder.recorded(table, tid)
        while not stop.is_set():
            _apply(proxy, draw_op(rng, 2 / 3), rng.key(keys))

    started = time.perf_counter()
    run_workers(threads, seconds, body)
    events = recorder.events
    verdicts = check_per_key_history(events)
    logger.info("checked %d events over %d keys in %.2fs", len(events), len(verdicts), time.perf_counter() - started)
    violations = [key for key, verdict in verdicts.items() if not verdict.linearizable]
    if violations:
        logger.error("non-linearizable histories for keys %s", violations)
    return LinearizabilityResult(threads=threads, keys=keys, seconds=seconds, events=len(events), violations=violations)
