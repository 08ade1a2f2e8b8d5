import pytest

from hoodhash.table import calc_dist, home_bucket, keys_with_home, mix64


def test_mix64_fixes_zero_and_stays_in_64_bits() -> None:
    assert mix64(0) == 0
    for x in (1, 2, 0xDEADBEEF, (1 << 64) - 1):
        assert 0 <= mix64(x) < 1 << 64


def test_mix64_spreads_consecutive_keys() -> None:
    buckets = {home_bucket(k, 255) for k in range(1, 1025)}
    assert len(buckets) > 200


@pytest.mark.parametrize(
    "home,index,expected",
    [
        (5, 5, 0),
        (5, 7, 2),
        (6, 1, 3),
    ],
)
def test_calc_dist_capacity_8(home: int, index: int, expected: int) -> None:
    (key,) = keys_with_home(home, 7)
    assert calc_dist(key, index, 7) == expected


def test_keys_with_home() -> None:
    keys = keys_with_home(3, 15, count=4)
    assert len(set(keys)) == 4
    assert all(home_bucket(k, 15) == 3 for k in keys)
    assert keys == sorted(keys)
    assert not set(keys_with_home(3, 15, count=2, exclude=frozenset(keys[:2]))) & set(keys[:2])
