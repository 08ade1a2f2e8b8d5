import itertools
import logging
import threading
import time

from pydantic import BaseModel, Field

from hoodhash.errors import ConfigError
from hoodhash.kcas import KCas, KCasFault, WordArray, encode_value
from hoodhash.rng import SplitMix64
from hoodhash.verify.stress import JOIN_TIMEOUT_SECS, run_workers

logger = logging.getLogger(__name__)

# One entry list per descriptor: (cell, expected, new).
Operations = list[list[tuple[int, int, int]]]


class TortureResult(BaseModel):
    threads: int
    cells: int
    seconds: float
    successes: int
    failures: int
    helps: int
    counters: list[int]
    expected: list[int]

    @property
    def passed(self) -> bool:
        return self.counters == self.expected


def kcas_torture(
    threads: int = 8,
    cells: int = 4,
    seconds: float = 1.0,
    *,
    seed: int = 0,
    fault: KCasFault | None = None,
) -> TortureResult:
    """
    Increment shared counters with K-CAS from many threads and reconcile the totals.

    Half of the operations increment every counter at once, the rest a random
    non-empty subset, so descriptors overlap in all shapes. Each thread counts
    its own successful increments per counter; the final counters must equal the
    per-counter sums exactly.
    """
    kcas = KCas(fault=fault)
    if not 1 <= cells <= kcas.max_entries:
        raise ConfigError(f"cells must be in [1, {kcas.max_entries}], got {cells}")
    counters = WordArray(cells)
    tallies = [[0] * cells for _ in range(threads)]
    outcomes = [[0, 0] for _ in range(threads)]

    def body(tid: int, stop: threading.Event) -> None:
        rng = SplitMix64.for_thread(seed, tid + 1)
        mine = tallies[tid]
        outcome = outcomes[tid]
        everything = list(range(cells))
        while not stop.is_set():
            if rng.below(2):
                chosen = everything
            else:
                chosen = [i for i in everything if rng.below(2)] or [rng.below(cells)]
            desc = kcas.descriptor()
            for i in chosen:
                current = kcas.read(counters, i)
                desc.add(counters, i, current, current + 1)
            if kcas.kcas(desc):
                outcome[0] += 1
                for i in chosen:
                    mine[i] += 1
            else:
                outcome[1] += 1

    run_workers(threads, seconds, body)
    result = TortureResult(
        threads=threads,
        cells=cells,
        seconds=seconds,
        successes=sum(o[0] for o in outcomes),
        failures=sum(o[1] for o in outcomes),
        helps=kcas.help_count,
        counters=[kcas.read(counters, i) for i in range(cells)],
        expected=[sum(t[i] for t in tallies) for i in range(cells)],
    )
    if not result.passed:
        logger.error("K-CAS counters %s do not reconcile with %s", result.counters, result.expected)
    return result


class OverlapSchedule(BaseModel):
    initial: list[int]
    operations: Operations
    results: list[bool]
    final: list[int]


def sequential_outcomes(initial: list[int], operations: Operations) -> list[tuple[list[bool], list[int]]]:
    """Results and final cells of every sequential order of ``operations``."""
    outcomes = []
    for order in itertools.permutations(range(len(operations))):
        cells = list(initial)
        results = [False] * len(operations)
        for op in order:
            entries = operations[op]
            if all(cells[c] == expected for c, expected, _ in entries):
                for c, _, new in entries:
                    cells[c] = new
                results[op] = True
        outcomes.append((results, cells))
    return outcomes


def _random_schedule(rng: SplitMix64, descriptors: int, cells: int) -> tuple[list[int], Operations]:
    initial = [rng.below(3) for _ in range(cells)]
    operations = []
    for d in range(descriptors):
        chosen = [c for c in range(cells) if rng.below(2)] or [rng.below(cells)]
        # Expected values are the initial value most of the time so that descriptors really collide.
        entries = [(c, initial[c] if rng.below(4) else rng.below(3), 10 * (d + 1) + c) for c in chosen]
        operations.append(entries)
    return initial, operations


def run_overlap_schedule(
    initial: list[int], operations: Operations, *, jitter_seed: int = 0
) -> OverlapSchedule:
    """Run each descriptor on its own thread, with yields injected between installs."""
    local = threading.local()

    def interleave() -> None:
        rng = getattr(local, "rng", None)
        if rng is None:
            rng = local.rng = SplitMix64(jitter_seed ^ threading.get_ident())
        if rng.below(2):
            time.sleep(0)

    kcas = KCas(interleave=interleave)
    memory = WordArray(len(initial), [encode_value(v) for v in initial])
    results = [False] * len(operations)
    start = threading.Barrier(len(operations))

    def worker(d: int) -> None:
        start.wait()
        desc = kcas.descriptor()
        for c, expected, new in operations[d]:
            desc.add(memory, c, expected, new)
        results[d] = kcas.kcas(desc)

    workers = [threading.Thread(target=worker, args=(d,)) for d in range(len(operations))]
    for w in workers:
        w.start()
    for w in workers:
        w.join(JOIN_TIMEOUT_SECS)
    final = [kcas.read(memory, c) for c in range(len(initial))]
    return OverlapSchedule(initial=initial, operations=operations, results=results, final=final)


class OverlapReport(BaseModel):
    schedules: int
    mismatches: list[OverlapSchedule] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def overlap_enumeration(schedules: int = 1000, *, seed: int = 0, descriptors: int = 3, cells: int = 3) -> OverlapReport:
    """Every concurrent outcome must equal the outcome of some sequential order."""
    rng = SplitMix64(seed)
    report = OverlapReport(schedules=schedules)
    for n in range(schedules):
        initial, operations = _random_schedule(rng, descriptors, cells)
        observed = run_overlap_schedule(initial, operations, jitter_seed=seed + n)
        if (observed.results, observed.final) not in sequential_outcomes(initial, operations):
            logger.error("schedule %d matches no sequential order: %s", n, observed)
            report.mismatches.append(observed)
    return report
