from dataclasses import dataclass
from enum import IntEnum

from hoodhash.errors import CapacityError, ContractViolation
from hoodhash.kcas.memory import WordArray
from hoodhash.kcas.words import SEQ_MASK, Tag, encode_value, make_ref


class Status(IntEnum):
    UNDECIDED = 0
    SUCCEEDED = 1
    FAILED = 2


_STATUS_BITS = 2
_STATUS_MASK = (1 << _STATUS_BITS) - 1


def _pack(seq: int, status: Status) -> int:
    return (seq << _STATUS_BITS) | int(status)


@dataclass(frozen=True, slots=True)
class KCasEntry:
    array: WordArray
    index: int
    expected: int
    new: int

    @property
    def address(self) -> tuple[int, int]:
        return self.array.uid, self.index


class KCasDescriptor:
    """
    A reusable multi-word compare-and-swap descriptor owned by one thread.

    The owner builds the pending entry list with :meth:`add` and commits it with
    ``KCas.kcas``. Publishing advances ``seq`` *before* the new entries become
    visible, so a helper holding a reference to an older epoch always sees a
    sequence mismatch and backs off.
    """

    __slots__ = ("slot", "max_entries", "_mutables", "_published", "_pending", "_locations")

    def __init__(self, slot: int, max_entries: int) -> None:
        self.slot = slot
        self.max_entries = max_entries
        # seq and status share one word so a decision is stamped with its epoch.
        self._mutables = WordArray(1, _pack(0, Status.FAILED), stripes=1)
        self._published: tuple[int, tuple[KCasEntry, ...]] = (0, ())
        self._pending: list[KCasEntry] = []
        self._locations: set[tuple[int, int]] = set()

    def __len__(self) -> int:
        return len(self._pending)

    def __repr__(self) -> str:
        return f"<KCasDescriptor slot={self.slot} seq={self.seq} pending={len(self._pending)}>"

    @property
    def seq(self) -> int:
        return self._mutables.load(0) >> _STATUS_BITS

    @property
    def entries(self) -> tuple[KCasEntry, ...]:
        return tuple(self._pending)

    def reset(self) -> "KCasDescriptor":
        self._pending.clear()
        self._locations.clear()
        return self

    def add(self, array: WordArray, index: int, expected: int, new: int) -> None:
        """Queue ``array[index]: expected -> new``; both values are plain VALUE payloads."""
        if not 0 <= index < len(array):
            raise ContractViolation(f"index {index} is outside {array!r}")
        address = (array.uid, index)
        if address in self._locations:
            raise ContractViolation(f"location {address} is already in the descriptor")
        if len(self._pending) >= self.max_entries:
            raise CapacityError(len(self._pending) + 1, self.max_entries)
        self._pending.append(KCasEntry(array, index, encode_value(expected), encode_value(new)))
        self._locations.add(address)

    def publish(self) -> int:
        """Open a new epoch for the pending entries and return its KCAS reference word."""
        seq = (self.seq + 1) & SEQ_MASK
        self._mutables.store(0, _pack(seq, Status.UNDECIDED))
        self._published = (seq, tuple(sorted(self._pending, key=lambda e: e.address)))
        return make_ref(Tag.KCAS_REF, self.slot, seq)

    def read(self, seq: int) -> tuple[Status, tuple[KCasEntry, ...]] | None:
        """Status and entries of epoch ``seq``, or None if the descriptor has moved on."""
        if self._mutables.load(0) >> _STATUS_BITS != seq:
            return None
        published_seq, entries = self._published
        mutables = self._mutables.load(0)
        if mutables >> _STATUS_BITS != seq or published_seq != seq:
            return None
        return Status(mutables & _STATUS_MASK), entries

    def published_entries(self, seq: int) -> tuple[KCasEntry, ...] | None:
        published_seq, entries = self._published
        return entries if published_seq == seq else None

    def status(self, seq: int) -> Status | None:
        mutables = self._mutables.load(0)
        if mutables >> _STATUS_BITS != seq:
            return None
        return Status(mutables & _STATUS_MASK)

    def decide(self, seq: int, outcome: Status) -> bool:
        ok, _ = self._mutables.compare_exchange(0, _pack(seq, Status.UNDECIDED), _pack(seq, outcome))
        return ok


class RdcssDescriptor:
    """
    Per-thread restricted double-compare single-swap descriptor.

    It installs one KCAS reference into one cell, but only while the owning K-CAS
    epoch is still undecided.
    """

    __slots__ = ("slot", "_seq", "_published")

    def __init__(self, slot: int) -> None:
        self.slot = slot
        self._seq = WordArray(1, 0, stripes=1)
        self._published: tuple[int, WordArray, int, int, int, int, int] | None = None

    @property
    def seq(self) -> int:
        return self._seq.load(0)

    def publish(self, array: WordArray, index: int, expected: int, kcas_ref: int, kcas_slot: int, kcas_seq: int) -> int:
        seq = (self.seq + 1) & SEQ_MASK
        self._seq.store(0, seq)
        self._published = (seq, array, index, expected, kcas_ref, kcas_slot, kcas_seq)
        return make_ref(Tag.RDCSS_REF, self.slot, seq)

    def read(self, seq: int) -> tuple[WordArray, int, int, int, int, int] | None:
        if self._seq.load(0) != seq:
            return None
        published = self._published
        if published is None or published[0] != seq or self._seq.load(0) != seq:
            return None
        return published[1:]
