"""
Directed two-thread races.

Each scenario builds an exact table layout, parks a "victim" operation at a
pause point, runs a conflicting "mutator" operation to completion on a second
thread, then lets the victim resume. A scenario passes when the victim returns
the right answer, and in concurrent mode, only after at least one restart.
"""

import logging
import threading
from collections.abc import Callable
from dataclasses import dataclass, field

from pydantic import BaseModel

from hoodhash.errors import RaceTimeout, UnknownScenarioError
from hoodhash.table import PauseContext, PausePoint, PausePoints, RobinHoodTable, keys_with_home

logger = logging.getLogger(__name__)

RACE_CAPACITY_LOG2 = 4
RACE_SHARD_LOG2 = 3
PAUSE_TIMEOUT_SECS = 10.0


@dataclass(frozen=True, slots=True)
class Step:
    op: str
    key: int


@dataclass(frozen=True, slots=True)
class RaceSetup:
    layout: list[int]
    victim: Step
    pause_at: PausePoint
    pause_index: int | None
    mutator: Step
    expected: bool
    expected_members: frozenset[int]


@dataclass(slots=True)
class _RaceRun:
    result: bool | None = None
    retries: int = 0
    errors: list[BaseException] = field(default_factory=list)


class RaceOutcome(BaseModel):
    scenario: str
    concurrent: bool
    result: bool
    expected: bool
    retries: int
    members_ok: bool

    @property
    def passed(self) -> bool:
        restarted = self.retries >= 1 or not self.concurrent
        return self.result == self.expected and restarted and self.members_ok


def _pick(mask: int, *homes: int) -> list[int]:
    keys: list[int] = []
    for home in homes:
        keys += keys_with_home(home, mask, exclude=frozenset(keys))
    return keys


def reader_vs_remove_shift(mask: int) -> RaceSetup:
    # [X, Y, V, Z]: removing Y shifts V back past a reader parked on Y's cell.
    x, y, v, z = _pick(mask, 0, 0, 1, 2)
    return RaceSetup(
        layout=[x, y, v, z],
        victim=Step("contains", v),
        pause_at=PausePoint.CELL_READ,
        pause_index=1,
        mutator=Step("remove", y),
        expected=True,
        expected_members=frozenset({x, v, z}),
    )


def reader_vs_add_displacement(mask: int) -> RaceSetup:
    # [X, Y]: adding W pushes Y along while a lookup of an absent key is parked on X.
    x, y, u, w = _pick(mask, 0, 1, 0, 0)
    return RaceSetup(
        layout=[x, y],
        victim=Step("contains", u),
        pause_at=PausePoint.CELL_READ,
        pause_index=0,
        mutator=Step("add", w),
        expected=False,
        expected_members=frozenset({x, y, w}),
    )


def add_duplicate_vs_shift(mask: int) -> RaceSetup:
    # [Y, K]: removing Y moves K behind an add(K) parked on Y's cell.
    y, k = _pick(mask, 0, 0)
    return RaceSetup(
        layout=[y, k],
        victim=Step("add", k),
        pause_at=PausePoint.CELL_READ,
        pause_index=0,
        mutator=Step("remove", y),
        expected=False,
        expected_members=frozenset({k}),
    )


def stale_timestamp_add(mask: int) -> RaceSetup:
    # The add has planned its claim; an unrelated remove in the same shard invalidates it.
    x, q, a = _pick(mask, 0, 3, 0)
    return RaceSetup(
        layout=[x, q],
        victim=Step("add", a),
        pause_at=PausePoint.BEFORE_COMMIT,
        pause_index=None,
        mutator=Step("remove", q),
        expected=True,
        expected_members=frozenset({x, a}),
    )


SCENARIOS: dict[str, Callable[[int], RaceSetup]] = {
    "reader-vs-remove-shift": reader_vs_remove_shift,
    "reader-vs-add-displacement": reader_vs_add_displacement,
    "add-duplicate-vs-shift": add_duplicate_vs_shift,
    "stale-timestamp-add": stale_timestamp_add,
}


def _call(table: RobinHoodTable, step: Step) -> bool:
    return getattr(table, step.op)(step.key)


def run_directed_race(scenario: str, concurrent: bool = True) -> RaceOutcome:
    """Drive ``scenario`` once; with ``concurrent=False`` both operations run back to back on one thread."""
    try:
        build = SCENARIOS[scenario]
    except KeyError:
        raise UnknownScenarioError(scenario) from None

    pauses = PausePoints() if concurrent else None
    table = RobinHoodTable(RACE_CAPACITY_LOG2, RACE_SHARD_LOG2, pause_points=pauses)
    setup = build(table.mask)
    for key in setup.layout:
        table.add(key)

    if not concurrent:
        result = _call(table, setup.victim)
        retries = table.reset_local_stats().retries
        _call(table, setup.mutator)
        return _outcome(scenario, False, table, setup, result, retries)

    assert pauses is not None
    parked = threading.Event()
    resume = threading.Event()
    run = _RaceRun()

    def hook(ctx: PauseContext) -> None:
        if ctx.attempt or ctx.op != setup.victim.op or ctx.key != setup.victim.key:
            return
        if setup.pause_index is not None and ctx.index != setup.pause_index:
            return
        parked.set()
        if not resume.wait(PAUSE_TIMEOUT_SECS):
            raise RaceTimeout(f"{scenario}: victim was never resumed")

    pauses.on(setup.pause_at, hook)

    def victim() -> None:
        try:
            table.reset_local_stats()
            run.result = _call(table, setup.victim)
            run.retries = table.local_stats().retries
        except BaseException as e:
            run.errors.append(e)
            parked.set()

    def mutator() -> None:
        try:
            _call(table, setup.mutator)
        except BaseException as e:
            run.errors.append(e)

    victim_thread = threading.Thread(target=victim, name=f"race-victim-{scenario}")
    victim_thread.start()
    if not parked.wait(PAUSE_TIMEOUT_SECS):
        resume.set()
        raise RaceTimeout(f"{scenario}: victim never reached {setup.pause_at}")
    mutator_thread = threading.Thread(target=mutator, name=f"race-mutator-{scenario}")
    mutator_thread.start()
    mutator_thread.join(PAUSE_TIMEOUT_SECS)
    resume.set()
    victim_thread.join(PAUSE_TIMEOUT_SECS)

    if run.errors:
        raise run.errors[0]
    if run.result is None:
        raise RaceTimeout(f"{scenario}: victim did not finish")
    outcome = _outcome(scenario, True, table, setup, run.result, run.retries)
    if not outcome.passed:
        logger.error("race %s failed: %s", scenario, outcome)
    return outcome


def _outcome(
    scenario: str, concurrent: bool, table: RobinHoodTable, setup: RaceSetup, result: bool, retries: int
) -> RaceOutcome:
    return RaceOutcome(
        scenario=scenario,
        concurrent=concurrent,
        result=result,
        expected=setup.expected,
        retries=retries,
        members_ok=table.members() == setup.expected_members,
    )
