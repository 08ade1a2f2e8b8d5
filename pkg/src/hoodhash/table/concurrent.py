import logging
import threading
import time
from collections import Counter
from dataclasses import dataclass

from hoodhash.errors import CapacityError, ConfigError, ContractViolation, SaturatedError
from hoodhash.kcas import PAYLOAD_LIMIT, KCas, WordArray, is_value, value_of
from hoodhash.table.hashing import NIL, calc_dist, home_bucket
from hoodhash.table.hooks import PauseContext, PausePoint, PausePoints
from hoodhash.table.probe import CommitPlan, ProbeState

logger = logging.getLogger(__name__)

BACKOFF_BASE_SECS = 1e-6
BACKOFF_CAP_SECS = 1e-3


def descriptor_bound(capacity_log2: int, shard_log2: int) -> int:
    """Largest plan a table can build: every cell plus every shard, each at most once."""
    capacity = 1 << capacity_log2
    return capacity + (capacity >> shard_log2)


@dataclass(slots=True)
class OpStats:
    operations: int = 0
    retries: int = 0
    probes: int = 0

    def merge(self, other: "OpStats") -> "OpStats":
        return OpStats(self.operations + other.operations, self.retries + other.retries, self.probes + other.probes)


@dataclass(frozen=True, slots=True)
class TableSnapshot:
    """Raw words of a quiescent table; cells may still hold descriptor references if something went wrong."""

    capacity_log2: int
    shard_log2: int
    cells: tuple[int, ...]
    timestamps: tuple[int, ...]

    @property
    def capacity(self) -> int:
        return 1 << self.capacity_log2

    @property
    def mask(self) -> int:
        return self.capacity - 1


class RobinHoodTable:
    """
    Concurrent Robin Hood hash set of 62-bit keys.

    Cells and shard timestamps are K-CAS managed words. Add and Remove commit all
    of their relocations, timestamp increments and validations with one K-CAS and
    restart from scratch when it fails; Contains and the not-found path of Remove
    re-read the timestamps they observed and restart on any change.

    Without an explicit engine or ``max_entries`` the descriptor bound is
    ``descriptor_bound(capacity_log2, shard_log2)``, so only a walk over a full
    table raises ``SaturatedError``.
    """

    def __init__(
        self,
        capacity_log2: int,
        shard_log2: int | None = None,
        *,
        kcas: KCas | None = None,
        pause_points: PausePoints | None = None,
        backoff: bool | None = None,
        max_entries: int | None = None,
    ) -> None:
        from hoodhash.settings import settings

        shard_log2 = settings.SHARD_LOG2 if shard_log2 is None else shard_log2
        if capacity_log2 < 1:
            raise ConfigError("capacity_log2 must be at least 1")
        if not 0 <= shard_log2 <= capacity_log2:
            raise ConfigError(f"shard_log2 must be in [0, {capacity_log2}], got {shard_log2}")
        if kcas is not None and max_entries is not None:
            raise ConfigError("pass max_entries or a ready K-CAS engine, not both")

        self.capacity_log2 = capacity_log2
        self.shard_log2 = shard_log2
        self.capacity = 1 << capacity_log2
        self.mask = self.capacity - 1
        self.cells = WordArray(self.capacity)
        self.timestamps = WordArray(self.capacity >> shard_log2)
        self.kcas = kcas or KCas(max_entries or descriptor_bound(capacity_log2, shard_log2))
        self.backoff = settings.BACKOFF if backoff is None else backoff
        self._pause = pause_points
        self._stats = threading.local()

    def __repr__(self) -> str:
        return f"<RobinHoodTable capacity=2**{self.capacity_log2} shards={len(self.timestamps)}>"

    def __len__(self) -> int:
        return sum(1 for raw in self.cells.snapshot() if raw != NIL)

    def __contains__(self, key: int) -> bool:
        return self.contains(key)

    # Statistics

    def local_stats(self) -> OpStats:
        stats = getattr(self._stats, "value", None)
        if stats is None:
            stats = self._stats.value = OpStats()
        return stats

    def reset_local_stats(self) -> OpStats:
        stats = self.local_stats()
        self._stats.value = OpStats()
        return stats

    # Building blocks

    def _check_key(self, key: int) -> None:
        if not 1 <= key < PAYLOAD_LIMIT:
            raise ContractViolation(f"key {key} is outside [1, 2**62)")

    def home(self, key: int) -> int:
        return home_bucket(key, self.mask)

    def calc_dist(self, key: int, index: int) -> int:
        return calc_dist(key, index, self.mask)

    def shard_of(self, index: int) -> int:
        return index >> self.shard_log2

    def read_timestamp(self, index: int) -> tuple[int, int]:
        shard = index >> self.shard_log2
        return shard, self.kcas.read(self.timestamps, shard)

    def add_timestamp_increment(self, plan: CommitPlan, index: int, observed: int) -> None:
        plan.bump(index >> self.shard_log2, observed)

    def _pause_at(self, point: PausePoint, op: str, key: int, index: int, value: int, attempt: int) -> None:
        if self._pause is not None:
            self._pause.fire(PauseContext(point, op, key, index, value, attempt))

    def _retry(self, stats: OpStats, op: str, key: int, attempt: int) -> None:
        stats.retries += 1
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("%s(%d) restarting, attempt %d", op, key, attempt + 1)
        if self.backoff:
            time.sleep(min(BACKOFF_BASE_SECS * (1 << min(attempt, 20)), BACKOFF_CAP_SECS))

    def _commit(self, plan: CommitPlan) -> bool:
        desc = self.kcas.descriptor()
        plan.fill(desc, self.cells, self.timestamps)
        return self.kcas.kcas(desc)

    # Search shared by Contains and Remove

    def _search(self, key: int, state: ProbeState, op: str, attempt: int, stats: OpStats) -> int | None:
        """Index holding ``key``, or None once Nil or the Robin Hood invariant ends the probe."""
        i = state.start_bucket
        for cur_dist in range(self.capacity):
            state.cur_dist = cur_dist
            shard, counter = self.read_timestamp(i)
            state.observe(shard, counter)
            cur_key = self.kcas.read(self.cells, i)
            stats.probes += 1
            self._pause_at(PausePoint.CELL_READ, op, key, i, cur_key, attempt)
            if cur_key == NIL:
                return None
            if cur_key == key:
                return i
            if calc_dist(cur_key, i, self.mask) < cur_dist:
                return None
            i = (i + 1) & self.mask
        return None

    def _timestamps_unchanged(self, state: ProbeState) -> bool:
        read = self.kcas.read
        return all(read(self.timestamps, shard) == counter for shard, counter in state.observed_timestamps)

    # Public operations

    def contains(self, key: int) -> bool:
        self._check_key(key)
        stats = self.local_stats()
        stats.operations += 1
        start = self.home(key)
        attempt = 0
        while True:
            state = ProbeState(start)
            if self._search(key, state, "contains", attempt, stats) is not None:
                return True
            if self._timestamps_unchanged(state):
                return False
            self._retry(stats, "contains", key, attempt)
            attempt += 1

    def add(self, key: int) -> bool:
        self._check_key(key)
        stats = self.local_stats()
        stats.operations += 1
        start = self.home(key)
        attempt = 0
        while True:
            try:
                outcome = self._try_add(key, start, attempt, stats)
            except CapacityError as e:
                raise SaturatedError(key, f"displacement needs more than {e.limit} descriptor entries") from e
            if outcome is not None:
                return outcome
            self._retry(stats, "add", key, attempt)
            attempt += 1

    def _try_add(self, key: int, start: int, attempt: int, stats: OpStats) -> bool | None:
        plan = CommitPlan(self.kcas.max_entries)
        state = ProbeState(start, active_key=key)
        i = start
        for _ in range(self.capacity):
            shard, counter = self.read_timestamp(i)
            # Every shard walked through is validated so a concurrent shift cannot hide a duplicate.
            plan.validate(shard, counter)
            cur_key = self.kcas.read(self.cells, i)
            stats.probes += 1
            self._pause_at(PausePoint.CELL_READ, "add", key, i, cur_key, attempt)
            if cur_key == NIL:
                plan.cell(i, NIL, state.active_key)
                self.add_timestamp_increment(plan, i, counter)
                self._pause_at(PausePoint.BEFORE_COMMIT, "add", key, i, cur_key, attempt)
                return True if self._commit(plan) else None
            if cur_key == key:
                return False
            distance = calc_dist(cur_key, i, self.mask)
            if distance < state.active_dist:
                plan.cell(i, cur_key, state.active_key)
                self.add_timestamp_increment(plan, i, counter)
                state.active_key = cur_key
                state.active_dist = distance
            i = (i + 1) & self.mask
            state.active_dist += 1
        raise SaturatedError(key, "probe visited every cell without finding Nil")

    def remove(self, key: int) -> bool:
        self._check_key(key)
        stats = self.local_stats()
        stats.operations += 1
        start = self.home(key)
        attempt = 0
        while True:
            state = ProbeState(start)
            found_at = self._search(key, state, "remove", attempt, stats)
            if found_at is None:
                if self._timestamps_unchanged(state):
                    return False
            else:
                plan = CommitPlan(self.kcas.max_entries)
                try:
                    self.shuffle_items(found_at, key, plan)
                except CapacityError as e:
                    raise SaturatedError(key, f"backward shift needs more than {e.limit} descriptor entries") from e
                self._pause_at(PausePoint.BEFORE_COMMIT, "remove", key, found_at, key, attempt)
                if self._commit(plan):
                    return True
            self._retry(stats, "remove", key, attempt)
            attempt += 1

    def shuffle_items(self, found_at: int, key: int, plan: CommitPlan) -> None:
        """
        Plan the backward shift that physically deletes ``key`` from ``found_at``.

        Each following entry moves back one cell until a Nil cell or an entry at
        its home bucket; the last vacated cell becomes Nil. Shards of moved cells
        are incremented, the shard of the stopping cell is validated.
        """
        shard, counter = self.read_timestamp(found_at)
        self.add_timestamp_increment(plan, found_at, counter)
        prev_index, prev_key = found_at, key
        j = (found_at + 1) & self.mask
        while j != found_at:
            shard, counter = self.read_timestamp(j)
            cur_key = self.kcas.read(self.cells, j)
            if cur_key == NIL or calc_dist(cur_key, j, self.mask) == 0:
                plan.cell(prev_index, prev_key, NIL)
                plan.validate(shard, counter)
                return
            plan.cell(prev_index, prev_key, cur_key)
            self.add_timestamp_increment(plan, j, counter)
            prev_index, prev_key = j, cur_key
            j = (j + 1) & self.mask
        raise SaturatedError(key, "backward shift wrapped around the whole table")

    # Quiescent introspection

    def snapshot(self) -> TableSnapshot:
        return TableSnapshot(
            self.capacity_log2,
            self.shard_log2,
            tuple(self.cells.snapshot()),
            tuple(self.timestamps.snapshot()),
        )

    def members(self) -> set[int]:
        return {value_of(raw) for raw in self.cells.snapshot() if raw != NIL and is_value(raw)}

    def dfb_of(self, key: int) -> int | None:
        for index, raw in enumerate(self.cells.snapshot()):
            if is_value(raw) and raw != NIL and value_of(raw) == key:
                return calc_dist(key, index, self.mask)
        return None

    def probe_histogram(self) -> Counter[int]:
        """DFB -> number of stored keys at that distance."""
        histogram: Counter[int] = Counter()
        for index, raw in enumerate(self.cells.snapshot()):
            if raw != NIL and is_value(raw):
                histogram[calc_dist(value_of(raw), index, self.mask)] += 1
        return histogram

    def timestamps_snapshot(self) -> list[int]:
        return [value_of(raw) if is_value(raw) else -1 for raw in self.timestamps.snapshot()]
