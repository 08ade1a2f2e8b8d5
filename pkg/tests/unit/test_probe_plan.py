import pytest

from hoodhash.errors import CapacityError
from hoodhash.kcas import KCas, WordArray, encode_value
from hoodhash.table import CommitPlan, ProbeState


def test_probe_state_keeps_first_observation() -> None:
    state = ProbeState(3)
    state.observe(0, 5)
    state.observe(1, 2)
    state.observe(0, 6)
    assert state.observed_timestamps == [(0, 5), (1, 2)]


def test_same_shard_twice_is_one_entry() -> None:
    plan = CommitPlan(8)
    plan.bump(2, 7)
    plan.bump(2, 9)
    assert plan.shard_entries == [(2, 7, 8)]
    assert len(plan) == 1


def test_two_shards_are_two_entries() -> None:
    plan = CommitPlan(8)
    plan.bump(0, 1)
    plan.bump(1, 4)
    assert plan.shard_entries == [(0, 1, 2), (1, 4, 5)]


def test_validation_upgrades_to_increment() -> None:
    plan = CommitPlan(8)
    plan.validate(0, 3)
    assert plan.shard_entries == [(0, 3, 3)]
    assert plan.bumped_shards == []
    plan.bump(0, 4)
    assert plan.shard_entries == [(0, 3, 4)]
    assert plan.bumped_shards == [0]


def test_increment_is_not_downgraded() -> None:
    plan = CommitPlan(8)
    plan.bump(0, 3)
    plan.validate(0, 3)
    assert plan.shard_entries == [(0, 3, 4)]


def test_overflow_raises_capacity_error() -> None:
    plan = CommitPlan(2)
    plan.cell(0, 0, 5)
    plan.bump(0, 0)
    with pytest.raises(CapacityError):
        plan.cell(1, 0, 6)
    with pytest.raises(CapacityError):
        plan.validate(1, 0)


def test_fill_then_commit() -> None:
    kcas = KCas()
    cells, timestamps = WordArray(4), WordArray(1)
    plan = CommitPlan(kcas.max_entries)
    plan.cell(1, 0, 42)
    plan.bump(0, 0)
    desc = plan.fill(kcas.descriptor(), cells, timestamps)
    assert len(desc) == 2
    assert kcas.kcas(desc)
    assert cells.load(1) == encode_value(42)
    assert kcas.read(timestamps, 0) == 1
