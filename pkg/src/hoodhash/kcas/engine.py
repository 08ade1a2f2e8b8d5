import logging
import threading
from collections.abc import Callable
from enum import Enum

from hoodhash.errors import ConfigError, ContractViolation
from hoodhash.kcas.descriptors import KCasDescriptor, KCasEntry, RdcssDescriptor, Status
from hoodhash.kcas.memory import WordArray
from hoodhash.kcas.words import SLOT_MASK, TAG_BITS, Tag, encode_value, ref_of, tag_of

logger = logging.getLogger(__name__)

_KCAS = int(Tag.KCAS_REF)
_RDCSS = int(Tag.RDCSS_REF)


class KCasFault(Enum):
    """Planted faults, used to prove the torture suite can fail."""

    SKIP_ENTRY_WRITE = "skip-entry-write"


class KCas:
    """
    Obstruction-free (in fact lock-free) multi-word compare-and-swap over ``WordArray`` cells.

    Every thread gets one ``KCasDescriptor`` and one ``RdcssDescriptor`` on first
    use; both are reused for the thread's lifetime. Readers and writers that meet
    a descriptor reference help the pending operation before retrying.
    """

    def __init__(
        self,
        max_entries: int | None = None,
        max_thread_slots: int | None = None,
        *,
        fault: KCasFault | None = None,
        interleave: Callable[[], None] | None = None,
        check_epochs: bool = False,
    ) -> None:
        from hoodhash.settings import settings

        self.max_entries = max_entries or settings.MAX_ENTRIES
        self.max_thread_slots = min(max_thread_slots or settings.MAX_THREAD_SLOTS, SLOT_MASK + 1)
        self.fault = fault
        self._interleave = interleave
        self._check_epochs = check_epochs

        self._local = threading.local()
        self._slot_lock = threading.Lock()
        self._next_slot = 0
        self._descriptors: dict[int, KCasDescriptor] = {}
        self._rdcss: dict[int, RdcssDescriptor] = {}
        self._help_lock = threading.Lock()
        self._help_count = 0

    @property
    def help_count(self) -> int:
        """Number of times any thread helped an operation it did not own."""
        return self._help_count

    @property
    def threads_seen(self) -> int:
        return self._next_slot

    def _slot(self) -> int:
        slot = getattr(self._local, "slot", None)
        if slot is None:
            with self._slot_lock:
                slot = self._next_slot
                if slot >= self.max_thread_slots:
                    raise ConfigError(f"more than {self.max_thread_slots} threads used one K-CAS engine")
                self._next_slot += 1
                self._descriptors[slot] = KCasDescriptor(slot, self.max_entries)
                self._rdcss[slot] = RdcssDescriptor(slot)
            self._local.slot = slot
        return slot

    def descriptor(self) -> KCasDescriptor:
        """The calling thread's descriptor, emptied and ready to be filled."""
        return self._descriptors[self._slot()].reset()

    def read(self, array: WordArray, index: int) -> int:
        while True:
            raw = array.load(index)
            if not raw & 0b11:
                return raw >> TAG_BITS
            self._help_foreign(raw)

    def write(self, array: WordArray, index: int, value: int) -> None:
        new = encode_value(value)
        while True:
            raw = array.load(index)
            if raw & 0b11:
                self._help_foreign(raw)
                continue
            ok, _ = array.compare_exchange(index, raw, new)
            if ok:
                return

    def kcas(self, desc: KCasDescriptor) -> bool:
        if self._descriptors.get(desc.slot) is not desc:
            raise ContractViolation("descriptor does not belong to this engine")
        ref = desc.publish()
        outcome = self._help_kcas(ref)
        desc.reset()
        return bool(outcome)

    def help(self, ref: int) -> None:
        if tag_of(ref) not in (_KCAS, _RDCSS):
            raise ContractViolation(f"word {ref:#x} is not a descriptor reference")
        self._help_foreign(ref)

    def _help_foreign(self, ref: int) -> None:
        with self._help_lock:
            self._help_count += 1
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("helping %s %s", Tag(tag_of(ref)).name, ref_of(ref))
        if tag_of(ref) == _KCAS:
            self._help_kcas(ref)
        else:
            self._complete_rdcss(ref)

    def _help_kcas(self, ref: int) -> bool | None:
        """Drive the K-CAS named by ``ref`` to completion; None if its epoch is already over."""
        slot, seq = ref_of(ref)
        desc = self._descriptors.get(slot)
        if desc is None:
            return None
        snapshot = desc.read(seq)
        if snapshot is None:
            return None
        status, entries = snapshot

        if status is Status.UNDECIDED:
            outcome = Status.SUCCEEDED
            for entry in entries:
                if self._interleave is not None:
                    self._interleave()
                if not self._install(entry, ref, slot, seq):
                    outcome = Status.FAILED
                    break
            desc.decide(seq, outcome)

        decided = desc.status(seq)
        if decided is None:
            return None
        succeeded = decided is Status.SUCCEEDED
        if self._check_epochs:
            published = desc.published_entries(seq)
            if published is not None and published is not entries:
                raise AssertionError(f"descriptor {slot} epoch {seq} entries changed under a helper")

        last = len(entries) - 1
        for position, entry in enumerate(entries):
            final = entry.new if succeeded else entry.expected
            if self.fault is KCasFault.SKIP_ENTRY_WRITE and succeeded and position == last:
                final = entry.expected
            self._write_back(entry, ref, final)
        return succeeded

    def _install(self, entry: KCasEntry, ref: int, slot: int, seq: int) -> bool:
        while True:
            seen = self._rdcss_install(entry, ref, slot, seq)
            if seen == entry.expected or seen == ref:
                return True
            if tag_of(seen) == _KCAS:
                self._help_foreign(seen)
                continue
            return False

    def _write_back(self, entry: KCasEntry, ref: int, final: int) -> None:
        array, index = entry.array, entry.index
        while True:
            current = array.load(index)
            if current == ref:
                ok, _ = array.compare_exchange(index, ref, final)
                if ok:
                    return
                continue
            if tag_of(current) == _RDCSS:
                # A late RDCSS completion could otherwise plant ``ref`` after the decision.
                self._complete_rdcss(current)
                continue
            return

    def _rdcss_install(self, entry: KCasEntry, ref: int, slot: int, seq: int) -> int:
        rdesc = self._rdcss[self._slot()]
        rref = rdesc.publish(entry.array, entry.index, entry.expected, ref, slot, seq)
        while True:
            ok, seen = entry.array.compare_exchange(entry.index, entry.expected, rref)
            if ok:
                self._complete_rdcss(rref)
                return entry.expected
            if tag_of(seen) == _RDCSS:
                self._complete_rdcss(seen)
                continue
            return seen

    def _complete_rdcss(self, rref: int) -> None:
        slot, seq = ref_of(rref)
        rdesc = self._rdcss.get(slot)
        if rdesc is None:
            return
        fields = rdesc.read(seq)
        if fields is None:
            return
        array, index, expected, kcas_ref, kcas_slot, kcas_seq = fields
        kdesc = self._descriptors.get(kcas_slot)
        undecided = kdesc is not None and kdesc.status(kcas_seq) is Status.UNDECIDED
        array.compare_exchange(index, rref, kcas_ref if undecided else expected)
