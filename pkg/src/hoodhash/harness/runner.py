import logging
import threading
import time
from collections.abc import Iterable, Iterator
from itertools import product

from pydantic import BaseModel, Field

from hoodhash.harness.affinity import pin_current_thread
from hoodhash.harness.workload import RunResult, WorkloadSpec, average, op_stream
from hoodhash.rng import SplitMix64
from hoodhash.table import OpStats, RobinHoodTable
from hoodhash.verify.audit import audit_quiescent
from hoodhash.verify.history import OpKind

logger = logging.getLogger(__name__)

JOIN_TIMEOUT_SECS = 60.0


def build_table(spec: WorkloadSpec) -> RobinHoodTable:
    return RobinHoodTable(spec.capacity_log2, spec.shard_log2, backoff=spec.backoff, max_entries=spec.max_entries)


def prefill(table: RobinHoodTable, spec: WorkloadSpec) -> set[int]:
    """Fill a fresh table with ``round(load_factor * capacity)`` distinct keys drawn from ``[1, capacity]``."""
    target = spec.prefill_size
    rng = SplitMix64(spec.seed)
    members: set[int] = set()
    while len(members) < target:
        key = rng.key(spec.key_space)
        if key not in members and table.add(key):
            members.add(key)
    return members


def run_trial(
    table: RobinHoodTable,
    spec: WorkloadSpec,
    trial: int = 0,
    *,
    verify: bool = False,
    pin: bool = True,
) -> RunResult:
    """
    Run ``spec.threads`` workers against ``table`` for ``spec.duration_secs``.

    Workers wait on one barrier, then execute their own deterministic op stream
    until the stop flag is set. Counts stay thread-local until the workers exit.
    """
    threads = spec.threads
    barrier = threading.Barrier(threads + 1)
    stop = threading.Event()
    per_thread = [OpStats() for _ in range(threads)]
    initial_members = len(table)
    failures: list[BaseException] = []

    def worker(tid: int) -> None:
        try:
            if pin:
                pin_current_thread(tid)
            stream = op_stream(spec, tid, trial)
            add, remove, contains = table.add, table.remove, table.contains
            table.reset_local_stats()
            barrier.wait()
            for op, key in stream:
                if stop.is_set():
                    break
                if op is OpKind.CONTAINS:
                    contains(key)
                elif op is OpKind.ADD:
                    add(key)
                else:
                    remove(key)
            per_thread[tid] = table.local_stats()
        except BaseException as e:
            failures.append(e)
            barrier.abort()

    workers = [threading.Thread(target=worker, args=(tid,), name=f"hoodhash-bench-{tid}") for tid in range(threads)]
    for w in workers:
        w.start()
    logger.info("trial %d: %d threads, load %.2f, updates %.2f", trial, threads, spec.load_factor, spec.update_ratio)
    try:
        barrier.wait()
    except threading.BrokenBarrierError:
        pass
    started = time.perf_counter()
    stop.wait(spec.duration_secs)
    stop.set()
    for w in workers:
        w.join(JOIN_TIMEOUT_SECS)
    elapsed = time.perf_counter() - started
    if failures:
        raise failures[0]

    totals = OpStats()
    for stats in per_thread:
        totals = totals.merge(stats)
    operations = totals.operations
    result = RunResult(
        spec=spec,
        trial=trial,
        seed=spec.trial_seed(trial),
        per_thread_ops=[s.operations for s in per_thread],
        total_ops=operations,
        elapsed_secs=elapsed,
        ops_per_us=operations / (elapsed * 1e6),
        retries_per_op=totals.retries / operations if operations else 0.0,
        mean_probe=totals.probes / operations if operations else 0.0,
        initial_members=initial_members,
        final_members=len(table),
    )
    if verify:
        report = audit_quiescent(table)
        result.audit_passed = report.passed
        if not report.passed:
            logger.error("trial %d audit failed: %s", trial, report.summary())
    logger.info("trial %d: %.3f ops/us, %.4f retries/op", trial, result.ops_per_us, result.retries_per_op)
    return result


class GridSpec(BaseModel):
    capacity_log2: int
    load_factors: list[float] = Field(default_factory=list)
    update_ratios: list[float] = Field(default_factory=list)
    thread_counts: list[int] = Field(default_factory=list)
    duration_secs: float
    trials: int = 1
    seed: int = 0
    shard_log2: int = 3
    backoff: bool = False
    max_entries: int | None = None

    def cells(self) -> Iterable[WorkloadSpec]:
        for load_factor, update_ratio, threads in product(self.load_factors, self.update_ratios, self.thread_counts):
            yield WorkloadSpec(
                capacity_log2=self.capacity_log2,
                load_factor=load_factor,
                update_ratio=update_ratio,
                threads=threads,
                duration_secs=self.duration_secs,
                trials=self.trials,
                seed=self.seed,
                shard_log2=self.shard_log2,
                backoff=self.backoff,
                max_entries=self.max_entries,
            )


def run_grid(grid: GridSpec, *, verify: bool = False, pin: bool = True) -> Iterator[RunResult]:
    """Every trial of every cell, each cell followed by its average record."""
    for spec in grid.cells():
        trials = []
        for trial in range(spec.trials):
            table = build_table(spec)
            prefill(table, spec)
            result = run_trial(table, spec, trial, verify=verify, pin=pin)
            trials.append(result)
            yield result
        yield average(trials)
