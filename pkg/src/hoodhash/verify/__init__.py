from .audit import AuditReport, MembershipMismatch, MismatchKind, audit_quiescent
from .history import (
    HistoryEvent,
    HistoryRecorder,
    KeyVerdict,
    OpKind,
    Phase,
    RecordingTable,
    check_key,
    check_per_key_history,
    draw_op,
)
from .races import SCENARIOS, RaceOutcome, run_directed_race
from .stress import LinearizabilityResult, StressAuditResult, linearizability_stress, stress_audit
from .suites import SuiteName, SuiteOptions, SuiteResult, mutation_check, run_suite
from .torture import OverlapReport, TortureResult, kcas_torture, overlap_enumeration, sequential_outcomes

__all__ = [
    "AuditReport",
    "MembershipMismatch",
    "MismatchKind",
    "audit_quiescent",
    "HistoryEvent",
    "HistoryRecorder",
    "KeyVerdict",
    "OpKind",
    "Phase",
    "RecordingTable",
    "check_key",
    "check_per_key_history",
    "draw_op",
    "SCENARIOS",
    "RaceOutcome",
    "run_directed_race",
    "LinearizabilityResult",
    "StressAuditResult",
    "linearizability_stress",
    "stress_audit",
    "SuiteName",
    "SuiteOptions",
    "SuiteResult",
    "mutation_check",
    "run_suite",
    "OverlapReport",
    "TortureResult",
    "kcas_torture",
    "overlap_enumeration",
    "sequential_outcomes",
]
