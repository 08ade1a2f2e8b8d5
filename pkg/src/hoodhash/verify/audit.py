from collections import Counter
from enum import StrEnum

from pydantic import BaseModel, Field

from hoodhash.kcas import is_value, value_of
from hoodhash.oracle.serial import ordering_violations
from hoodhash.table import NIL, RobinHoodTable, TableSnapshot, calc_dist, home_bucket


class MismatchKind(StrEnum):
    UNREACHABLE = "unreachable"
    DUPLICATE = "duplicate"
    MISSING = "missing"
    UNEXPECTED = "unexpected"
    CONTAINS_FALSE = "contains-false"
    CONTAINS_TRUE = "contains-true"


class MembershipMismatch(BaseModel):
    key: int
    kind: MismatchKind


class AuditReport(BaseModel):
    ordering_violations: list[int] = Field(default_factory=list)
    orphaned_refs: int = 0
    membership_mismatches: list[MembershipMismatch] = Field(default_factory=list)
    probe_histogram: dict[int, int] = Field(default_factory=dict)
    members: int = 0

    @property
    def passed(self) -> bool:
        return not self.ordering_violations and not self.orphaned_refs and not self.membership_mismatches

    def summary(self) -> str:
        return (
            f"members={self.members} ordering_violations={len(self.ordering_violations)} "
            f"orphaned_refs={self.orphaned_refs} membership_mismatches={len(self.membership_mismatches)}"
        )


def _serial_find(cells: list[int], mask: int, key: int) -> bool:
    i = home_bucket(key, mask)
    for cur_dist in range(mask + 1):
        cur_key = cells[i]
        if cur_key == NIL:
            return False
        if cur_key == key:
            return True
        if cur_key > 0 and calc_dist(cur_key, i, mask) < cur_dist:
            return False
        i = (i + 1) & mask
    return False


def audit_quiescent(
    target: TableSnapshot | RobinHoodTable,
    *,
    expected: set[int] | None = None,
    absent_probes: list[int] | None = None,
) -> AuditReport:
    """
    Check a table with no running mutators.

    Verifies the Robin Hood ordering on every run, that no cell or timestamp
    still holds a descriptor reference, and that search finds exactly the stored
    keys. Given a live table, ``contains`` itself is queried as well; given
    ``expected``, stored membership is compared against it.
    """
    table = target if isinstance(target, RobinHoodTable) else None
    snapshot = target.snapshot() if isinstance(target, RobinHoodTable) else target
    mask = snapshot.mask
    report = AuditReport()

    report.orphaned_refs = sum(1 for raw in snapshot.cells + snapshot.timestamps if not is_value(raw))
    # A reference cell is treated as an opaque occupant (-1) so the ordering check still runs.
    cells = [value_of(raw) if is_value(raw) else -1 for raw in snapshot.cells]

    decodable = [k if k >= 0 else NIL for k in cells]
    report.ordering_violations = ordering_violations(decodable, mask)

    stored = Counter(k for k in cells if k > 0)
    report.members = len(stored)
    mismatches = report.membership_mismatches
    for key, copies in sorted(stored.items()):
        if copies > 1:
            mismatches.append(MembershipMismatch(key=key, kind=MismatchKind.DUPLICATE))
        if not _serial_find(cells, mask, key):
            mismatches.append(MembershipMismatch(key=key, kind=MismatchKind.UNREACHABLE))
        elif table is not None and not table.contains(key):
            mismatches.append(MembershipMismatch(key=key, kind=MismatchKind.CONTAINS_FALSE))

    if expected is not None:
        mismatches.extend(
            MembershipMismatch(key=k, kind=MismatchKind.MISSING) for k in sorted(expected - stored.keys())
        )
        mismatches.extend(
            MembershipMismatch(key=k, kind=MismatchKind.UNEXPECTED) for k in sorted(stored.keys() - expected)
        )
    if table is not None and absent_probes:
        for key in absent_probes:
            if key not in stored and table.contains(key):
                mismatches.append(MembershipMismatch(key=key, kind=MismatchKind.CONTAINS_TRUE))

    histogram: Counter[int] = Counter()
    for index, key in enumerate(cells):
        if key > 0:
            histogram[calc_dist(key, index, mask)] += 1
    report.probe_histogram = dict(sorted(histogram.items()))
    return report
