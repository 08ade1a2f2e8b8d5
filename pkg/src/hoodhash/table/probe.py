from dataclasses import dataclass, field
from typing import NamedTuple

from hoodhash.errors import CapacityError
from hoodhash.kcas import KCasDescriptor, WordArray


@dataclass(slots=True)
class ProbeState:
    start_bucket: int
    cur_dist: int = 0
    active_key: int = 0
    active_dist: int = 0
    _timestamps: dict[int, int] = field(default_factory=dict)

    def observe(self, shard: int, counter: int) -> None:
        # First read wins: later reads of the same shard are covered by re-validating it.
        self._timestamps.setdefault(shard, counter)

    @property
    def observed_timestamps(self) -> list[tuple[int, int]]:
        return list(self._timestamps.items())


class CellChange(NamedTuple):
    index: int
    expected: int
    new: int


class CommitPlan:
    """
    Everything one Add or Remove attempt will commit with a single K-CAS.

    Cell entries are kept in probe order. Shard entries are coalesced: each shard
    appears once, either as a validation (new == observed) or as an increment.
    """

    __slots__ = ("max_entries", "cells", "_shards")

    def __init__(self, max_entries: int) -> None:
        self.max_entries = max_entries
        self.cells: list[CellChange] = []
        self._shards: dict[int, tuple[int, bool]] = {}

    def __len__(self) -> int:
        return len(self.cells) + len(self._shards)

    def _check_room(self) -> None:
        if len(self) >= self.max_entries:
            raise CapacityError(len(self) + 1, self.max_entries)

    def cell(self, index: int, expected: int, new: int) -> None:
        self._check_room()
        self.cells.append(CellChange(index, expected, new))

    def validate(self, shard: int, observed: int) -> None:
        if shard not in self._shards:
            self._check_room()
            self._shards[shard] = (observed, False)

    def bump(self, shard: int, observed: int) -> None:
        if shard in self._shards:
            first_observed, _ = self._shards[shard]
            self._shards[shard] = (first_observed, True)
            return
        self._check_room()
        self._shards[shard] = (observed, True)

    @property
    def shard_entries(self) -> list[tuple[int, int, int]]:
        return [(shard, seen, seen + 1 if bumped else seen) for shard, (seen, bumped) in self._shards.items()]

    @property
    def bumped_shards(self) -> list[int]:
        return [shard for shard, (_, bumped) in self._shards.items() if bumped]

    def fill(self, desc: KCasDescriptor, cells: WordArray, timestamps: WordArray) -> KCasDescriptor:
        for change in self.cells:
            desc.add(cells, change.index, change.expected, change.new)
        for shard, expected, new in self.shard_entries:
            desc.add(timestamps, shard, expected, new)
        return desc
