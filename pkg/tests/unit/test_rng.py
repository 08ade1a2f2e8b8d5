from hoodhash.rng import SplitMix64


def test_reference_output_for_seed_zero() -> None:
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_streams_are_pure_functions_of_the_seed() -> None:
    a, b = SplitMix64(7), SplitMix64(7)
    assert [a.next_u64() for _ in range(10)] == [b.next_u64() for _ in range(10)]


def test_thread_streams_differ() -> None:
    assert SplitMix64.for_thread(5, 1).next_u64() != SplitMix64.for_thread(5, 2).next_u64()
    assert SplitMix64.for_thread(5, 1).state == 5 ^ 1


def test_ranges() -> None:
    rng = SplitMix64(1)
    for _ in range(1000):
        assert 0 <= rng.below(10) < 10
        assert 1 <= rng.key(16) <= 16
        assert 0.0 <= rng.random() < 1.0


def test_below_covers_the_range() -> None:
    rng = SplitMix64(3)
    assert {rng.below(4) for _ in range(200)} == {0, 1, 2, 3}
