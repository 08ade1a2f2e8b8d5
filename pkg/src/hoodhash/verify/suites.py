"""Named verification suites shared by the CLI and the functional tests."""

import logging
import time
from collections.abc import Callable
from enum import StrEnum
from typing import Any

from pydantic import BaseModel, Field

from hoodhash.kcas import KCasFault, Tag, encode_value
from hoodhash.kcas.words import make_ref
from hoodhash.oracle import ProbeStrategy, SerialTable, probe_stats
from hoodhash.rng import SplitMix64
from hoodhash.table import TableSnapshot, keys_with_home
from hoodhash.verify.audit import audit_quiescent
from hoodhash.verify.history import HistoryEvent, OpKind, Phase, check_per_key_history
from hoodhash.verify.races import SCENARIOS, run_directed_race
from hoodhash.verify.stress import linearizability_stress, stress_audit
from hoodhash.verify.torture import kcas_torture, overlap_enumeration

logger = logging.getLogger(__name__)

PROBE_LOAD_FACTOR = 0.8
PROBE_CAPACITY_LOG2 = 16
PROBE_SMALL_CAPACITY_LOG2 = 10
SUCCESSFUL_PROBE_RANGE = (2.0, 3.2)


class SuiteName(StrEnum):
    AUDIT = "audit"
    LINEARIZABILITY = "linearizability"
    RACES = "races"
    KCAS_TORTURE = "kcas-torture"
    PROBE_STATS = "probe-stats"
    MUTATIONS = "mutations"
    ALL = "all"


class SuiteOptions(BaseModel):
    threads: int = 8
    seconds: float = 2.0
    keys: int = 8
    capacity_log2: int = 10
    seeds: int = 5
    executions: int = 100
    seed: int = 0


class SuiteResult(BaseModel):
    name: SuiteName
    passed: bool
    elapsed_secs: float = 0.0
    details: dict[str, Any] = Field(default_factory=dict)


def _audit(options: SuiteOptions) -> SuiteResult:
    oracle = SerialTable(options.capacity_log2)
    rng = SplitMix64(options.seed)
    while len(oracle) < oracle.capacity // 2:
        oracle.seq_add(rng.key(oracle.capacity))
    snapshot = TableSnapshot(options.capacity_log2, 0, tuple(encode_value(k) for k in oracle.snapshot()), ())
    replay = audit_quiescent(snapshot, expected=oracle.members())
    stress = stress_audit(
        options.threads,
        options.seconds,
        capacity_log2=options.capacity_log2,
        seed=options.seed,
        sample_every_secs=options.seconds / 4,
    )
    return SuiteResult(
        name=SuiteName.AUDIT,
        passed=replay.passed and stress.passed,
        details={
            "oracle_replay": replay.summary(),
            "stress_operations": stress.operations,
            "stress_audits": len(stress.reports),
            "stress_failures": [r.summary() for r in stress.reports if not r.passed],
        },
    )


def _linearizability(options: SuiteOptions) -> SuiteResult:
    result = linearizability_stress(options.threads, options.keys, options.seconds, seed=options.seed)
    return SuiteResult(
        name=SuiteName.LINEARIZABILITY,
        passed=result.passed,
        details={"events": result.events, "violations": result.violations},
    )


def _races(options: SuiteOptions) -> SuiteResult:
    failures: dict[str, int] = {}
    for scenario in SCENARIOS:
        failed = sum(not run_directed_race(scenario).passed for _ in range(options.executions))
        failures[scenario] = failed
    return SuiteResult(
        name=SuiteName.RACES,
        passed=not any(failures.values()),
        details={"executions": options.executions, "failures": failures},
    )


def _kcas_torture(options: SuiteOptions) -> SuiteResult:
    counters = kcas_torture(options.threads, 4, options.seconds, seed=options.seed)
    overlap = overlap_enumeration(options.executions, seed=options.seed)
    return SuiteResult(
        name=SuiteName.KCAS_TORTURE,
        passed=counters.passed and overlap.passed,
        details={
            "successes": counters.successes,
            "failures": counters.failures,
            "helps": counters.helps,
            "counters": counters.counters,
            "expected": counters.expected,
            "overlap_schedules": overlap.schedules,
            "overlap_mismatches": len(overlap.mismatches),
        },
    )


def _probe_stats(options: SuiteOptions) -> SuiteResult:
    seeds = list(range(options.seed, options.seed + options.seeds))
    large = probe_stats(PROBE_LOAD_FACTOR, PROBE_CAPACITY_LOG2, seeds)
    # Same total number of cells at both sizes.
    small_seeds = 1 << (PROBE_CAPACITY_LOG2 - PROBE_SMALL_CAPACITY_LOG2)
    small_range = list(range(options.seed, options.seed + small_seeds))
    small = probe_stats(PROBE_LOAD_FACTOR, PROBE_SMALL_CAPACITY_LOG2, small_range)
    linear = probe_stats(PROBE_LOAD_FACTOR, PROBE_CAPACITY_LOG2, seeds, ProbeStrategy.LINEAR)
    low, high = SUCCESSFUL_PROBE_RANGE
    return SuiteResult(
        name=SuiteName.PROBE_STATS,
        passed=low <= large.mean_successful <= high and large.mean_unsuccessful > small.mean_unsuccessful,
        details={
            "mean_successful": large.mean_successful,
            "mean_unsuccessful": large.mean_unsuccessful,
            "mean_unsuccessful_small": small.mean_unsuccessful,
            "dfb_variance": large.dfb_variance,
            "linear_dfb_variance": linear.dfb_variance,
            "max_dfb": large.max_dfb,
        },
    )


def mutation_check(seed: int = 0) -> dict[str, bool]:
    """Plant one fault of every class the checkers guard against; each must be detected."""
    mask = 15
    (at_home,) = keys_with_home(0, mask)
    (two_behind,) = keys_with_home(15, mask, exclude=frozenset({at_home}))
    cells = [0] * (mask + 1)
    cells[0], cells[1] = encode_value(at_home), encode_value(two_behind)
    jumped = TableSnapshot(4, 3, tuple(cells), (0, 0))

    (lone,) = keys_with_home(5, mask)
    cells = [0] * (mask + 1)
    cells[5] = encode_value(lone)
    clean = TableSnapshot(4, 3, tuple(cells), (0, 0))
    cells[9] = make_ref(Tag.KCAS_REF, 0, 1)
    orphaned = TableSnapshot(4, 3, tuple(cells), (0, 0))

    impossible_read = [
        HistoryEvent(thread=0, op=OpKind.CONTAINS, key=lone, phase=Phase.INVOKE, index=0),
        HistoryEvent(thread=0, op=OpKind.CONTAINS, key=lone, phase=Phase.RESPONSE, result=True, index=1),
    ]
    skipped_write = kcas_torture(1, 2, 0.05, seed=seed, fault=KCasFault.SKIP_ENTRY_WRITE)

    detected = {
        "ordering-violation": bool(audit_quiescent(jumped).ordering_violations),
        "orphaned-reference": audit_quiescent(orphaned).orphaned_refs > 0,
        "membership-mismatch": bool(audit_quiescent(clean, expected={lone, lone + 1}).membership_mismatches),
        "impossible-read": not check_per_key_history(impossible_read)[lone].linearizable,
        "skipped-entry-write": skipped_write.successes > 0 and not skipped_write.passed,
    }
    for fault, caught in detected.items():
        if not caught:
            logger.error("planted fault %s went undetected", fault)
    return detected


def _mutations(options: SuiteOptions) -> SuiteResult:
    detected = mutation_check(options.seed)
    return SuiteResult(name=SuiteName.MUTATIONS, passed=all(detected.values()), details=detected)


SUITES: dict[SuiteName, Callable[[SuiteOptions], SuiteResult]] = {
    SuiteName.AUDIT: _audit,
    SuiteName.LINEARIZABILITY: _linearizability,
    SuiteName.RACES: _races,
    SuiteName.KCAS_TORTURE: _kcas_torture,
    SuiteName.PROBE_STATS: _probe_stats,
    SuiteName.MUTATIONS: _mutations,
}


def run_suite(name: SuiteName | str, options: SuiteOptions | None = None) -> list[SuiteResult]:
    """Run one suite, or every suite for ``all``; results come back in run order."""
    options = options or SuiteOptions()
    name = SuiteName(name)
    selected = list(SUITES) if name is SuiteName.ALL else [name]
    results = []
    for suite in selected:
        logger.info("running suite %s", suite)
        started = time.perf_counter()
        result = SUITES[suite](options)
        result.elapsed_secs = time.perf_counter() - started
        if result.passed:
            logger.info("suite %s passed in %.2fs", suite, result.elapsed_secs)
        else:
            logger.error("suite %s FAILED: %s", suite, result.details)
        results.append(result)
    return results
