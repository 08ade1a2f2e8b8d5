"""
SplitMix64: a small counter-based generator with 64-bit state.

Constants are the published ones: the golden-ratio increment 0x9E3779B97F4A7C15
and the two finalizer multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
Every stream is a pure function of its seed, which is what makes harness runs
reproducible per thread.
"""

MASK_64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULTIPLIER_1 = 0xBF58476D1CE4E5B9
MIX_MULTIPLIER_2 = 0x94D049BB133111EB


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK_64

    @classmethod
    def for_thread(cls, seed: int, thread_id: int) -> "SplitMix64":
        return cls(seed ^ thread_id)

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK_64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX_MULTIPLIER_1) & MASK_64
        z = ((z ^ (z >> 27)) * MIX_MULTIPLIER_2) & MASK_64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` (multiply-shift; bias is below 2**-64 * n)."""
        return (self.next_u64() * n) >> 64

    def random(self) -> float:
        """Uniform float in ``[0, 1)`` with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def key(self, key_space: int) -> int:
        """Uniform key in ``[1, key_space]``."""
        return self.below(key_space) + 1
