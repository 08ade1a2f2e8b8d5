from collections import Counter

from hoodhash.errors import ContractViolation, SaturatedError
from hoodhash.kcas import PAYLOAD_LIMIT
from hoodhash.table.hashing import NIL, calc_dist, home_bucket


class SerialTable:
    """
    Single-threaded Robin Hood hash set.

    Same hash, Nil encoding and DFB definition as ``RobinHoodTable`` so the two
    produce identical layouts for the same operation sequence. Optimised for
    being obviously right, not for speed.
    """

    def __init__(self, capacity_log2: int, *, check_invariant: bool = False) -> None:
        self.capacity_log2 = capacity_log2
        self.capacity = 1 << capacity_log2
        self.mask = self.capacity - 1
        self.cells: list[int] = [NIL] * self.capacity
        self.count = 0
        self.check_invariant = check_invariant

    def __len__(self) -> int:
        return self.count

    def __contains__(self, key: int) -> bool:
        return self.seq_contains(key)

    def __repr__(self) -> str:
        return f"<SerialTable capacity=2**{self.capacity_log2} count={self.count}>"

    def _check_key(self, key: int) -> None:
        if not 1 <= key < PAYLOAD_LIMIT:
            raise ContractViolation(f"key {key} is outside [1, 2**62)")

    def dist(self, key: int, index: int) -> int:
        return calc_dist(key, index, self.mask)

    def find(self, key: int) -> tuple[int | None, int]:
        """(index of key or None, number of cells probed)."""
        i = home_bucket(key, self.mask)
        for cur_dist in range(self.capacity):
            cur_key = self.cells[i]
            if cur_key == NIL:
                return None, cur_dist + 1
            if cur_key == key:
                return i, cur_dist + 1
            if self.dist(cur_key, i) < cur_dist:
                return None, cur_dist + 1
            i = (i + 1) & self.mask
        return None, self.capacity

    def seq_contains(self, key: int) -> bool:
        self._check_key(key)
        return self.find(key)[0] is not None

    def seq_add(self, key: int) -> bool:
        self._check_key(key)
        if self.find(key)[0] is not None:
            return False
        if self.count >= self.capacity:
            raise SaturatedError(key, "serial table is full")
        active_key, active_dist = key, 0
        i = home_bucket(key, self.mask)
        while True:
            cur_key = self.cells[i]
            if cur_key == NIL:
                self.cells[i] = active_key
                break
            distance = self.dist(cur_key, i)
            # Ties keep the incumbent in place.
            if distance < active_dist:
                self.cells[i], active_key = active_key, cur_key
                active_dist = distance
            i = (i + 1) & self.mask
            active_dist += 1
        self.count += 1
        self._audit()
        return True

    def seq_remove(self, key: int) -> bool:
        self._check_key(key)
        found_at, _ = self.find(key)
        if found_at is None:
            return False
        prev = found_at
        j = (found_at + 1) & self.mask
        while j != found_at:
            cur_key = self.cells[j]
            if cur_key == NIL or self.dist(cur_key, j) == 0:
                break
            self.cells[prev] = cur_key
            prev = j
            j = (j + 1) & self.mask
        self.cells[prev] = NIL
        self.count -= 1
        self._audit()
        return True

    def _audit(self) -> None:
        if self.check_invariant:
            violations = ordering_violations(self.cells, self.mask)
            if violations:
                raise AssertionError(f"Robin Hood ordering broken at cells {violations}")
            if self.count != sum(1 for k in self.cells if k != NIL):
                raise AssertionError("occupancy count drifted from the cell array")

    def snapshot(self) -> list[int]:
        return list(self.cells)

    def members(self) -> set[int]:
        return {k for k in self.cells if k != NIL}

    def dfb_of(self, key: int) -> int | None:
        found_at, _ = self.find(key)
        return None if found_at is None else self.dist(key, found_at)

    def probe_histogram(self) -> Counter[int]:
        return Counter(self.dist(k, i) for i, k in enumerate(self.cells) if k != NIL)


class LinearProbeTable:
    """First-fit linear probing with no relocation; the baseline Robin Hood improves on."""

    def __init__(self, capacity_log2: int) -> None:
        self.capacity = 1 << capacity_log2
        self.mask = self.capacity - 1
        self.cells: list[int] = [NIL] * self.capacity
        self.count = 0

    def __len__(self) -> int:
        return self.count

    def find(self, key: int) -> tuple[int | None, int]:
        i = home_bucket(key, self.mask)
        for probes in range(1, self.capacity + 1):
            cur_key = self.cells[i]
            if cur_key == key:
                return i, probes
            if cur_key == NIL:
                return None, probes
            i = (i + 1) & self.mask
        return None, self.capacity

    def seq_add(self, key: int) -> bool:
        if self.find(key)[0] is not None:
            return False
        if self.count >= self.capacity:
            raise SaturatedError(key, "serial table is full")
        i = home_bucket(key, self.mask)
        while self.cells[i] != NIL:
            i = (i + 1) & self.mask
        self.cells[i] = key
        self.count += 1
        return True

    def probe_histogram(self) -> Counter[int]:
        return Counter(calc_dist(k, i, self.mask) for i, k in enumerate(self.cells) if k != NIL)


def ordering_violations(cells: list[int], mask: int) -> list[int]:
    """
    Indices ``j`` where a run breaks ``DFB(j) <= DFB(j - 1) + 1``.

    A non-Nil cell after a Nil cell must sit at its home bucket, which is the
    same rule with the Nil cell counted as DFB -1.
    """
    violations = []
    for j, key in enumerate(cells):
        if key == NIL:
            continue
        prev = cells[(j - 1) & mask]
        prev_dist = -1 if prev == NIL else calc_dist(prev, (j - 1) & mask, mask)
        if calc_dist(key, j, mask) > prev_dist + 1:
            violations.append(j)
    return violations
