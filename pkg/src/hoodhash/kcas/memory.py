import itertools
import threading
from collections.abc import Iterable

from hoodhash.errors import ContractViolation
from hoodhash.kcas.words import WORD_MASK

_uids = itertools.count()

LOCK_STRIPES = 64


class WordArray:
    """
    A fixed-length array of 64-bit words supporting single-word atomics.

    Loads read the backing list directly (an item read is atomic); stores and
    compare-exchange take the stripe lock of the index so they are atomic with
    respect to each other. All operations behave as sequentially consistent.
    """

    __slots__ = ("uid", "_words", "_locks", "_stripe_mask")

    def __init__(self, length: int, initial: int | Iterable[int] = 0, stripes: int = LOCK_STRIPES) -> None:
        if length < 0:
            raise ContractViolation("length must be non-negative")
        if stripes & (stripes - 1):
            raise ContractViolation("stripes must be a power of two")
        self.uid = next(_uids)
        if isinstance(initial, int):
            self._words = [initial & WORD_MASK] * length
        else:
            self._words = [w & WORD_MASK for w in initial]
            if len(self._words) != length:
                raise ContractViolation("initial contents do not match length")
        self._locks = tuple(threading.Lock() for _ in range(stripes))
        self._stripe_mask = stripes - 1

    def __len__(self) -> int:
        return len(self._words)

    def __repr__(self) -> str:
        return f"<WordArray uid={self.uid} len={len(self._words)}>"

    def load(self, index: int) -> int:
        return self._words[index]

    def store(self, index: int, raw: int) -> None:
        with self._locks[index & self._stripe_mask]:
            self._words[index] = raw

    def compare_exchange(self, index: int, expected: int, desired: int) -> tuple[bool, int]:
        """Install ``desired`` iff the word equals ``expected``; returns (success, witnessed value)."""
        with self._locks[index & self._stripe_mask]:
            current = self._words[index]
            if current == expected:
                self._words[index] = desired
                return True, current
            return False, current

    def snapshot(self) -> list[int]:
        """Copy of all words. Only meaningful while no thread mutates the array."""
        return list(self._words)
