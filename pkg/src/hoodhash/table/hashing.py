WORD_MASK = (1 << 64) - 1

MIX_SHIFT = 33
MIX_MULTIPLIER_1 = 0xFF51AFD7ED558CCD
MIX_MULTIPLIER_2 = 0xC4CEB9FE1A85EC53

NIL = 0


def mix64(x: int) -> int:
    """64-bit avalanche finalizer; bit-exact with the usual C implementation."""
    x &= WORD_MASK
    x ^= x >> MIX_SHIFT
    x = (x * MIX_MULTIPLIER_1) & WORD_MASK
    x ^= x >> MIX_SHIFT
    x = (x * MIX_MULTIPLIER_2) & WORD_MASK
    x ^= x >> MIX_SHIFT
    return x


def home_bucket(key: int, mask: int) -> int:
    return mix64(key) & mask


def calc_dist(key: int, index: int, mask: int) -> int:
    """Distance From expected Bucket of ``key`` sitting at ``index``."""
    return (index - (mix64(key) & mask)) & mask


def keys_with_home(
    bucket: int, mask: int, count: int = 1, *, start: int = 1, exclude: frozenset[int] = frozenset()
) -> list[int]:
    """The first ``count`` keys ``>= start`` whose home bucket is ``bucket``; used to build exact layouts."""
    keys = []
    key = start
    while len(keys) < count:
        if key not in exclude and mix64(key) & mask == bucket:
            keys.append(key)
        key += 1
    return keys
