import pytest

from hoodhash.errors import ContractViolation, SaturatedError
from hoodhash.kcas import PAYLOAD_LIMIT
from hoodhash.oracle import LinearProbeTable, SerialTable, ordering_violations
from hoodhash.table import NIL
from tests.functional.fixtures import SMALL_MASK
from tests.utils.layouts import build, pick_keys


def test_add_contains_remove(small_oracle: SerialTable) -> None:
    assert small_oracle.seq_add(11)
    assert not small_oracle.seq_add(11)
    assert small_oracle.seq_contains(11)
    assert len(small_oracle) == 1
    assert small_oracle.seq_remove(11)
    assert not small_oracle.seq_remove(11)
    assert not small_oracle.seq_contains(11)
    assert len(small_oracle) == 0


@pytest.mark.parametrize("key", [NIL, PAYLOAD_LIMIT])
def test_keys_outside_domain(small_oracle: SerialTable, key: int) -> None:
    with pytest.raises(ContractViolation):
        small_oracle.seq_add(key)


def test_equal_dfb_keeps_incumbent(small_oracle: SerialTable) -> None:
    x, y = pick_keys(SMALL_MASK, 0, 0)
    build(small_oracle, [x, y])
    assert small_oracle.cells[:2] == [x, y]
    assert small_oracle.dfb_of(y) == 1


def test_no_swaps_when_residents_are_never_richer(small_oracle: SerialTable) -> None:
    # Each resident's DFB equals the newcomer's probe distance, so it walks to the first Nil.
    a, b, c, v = pick_keys(SMALL_MASK, 0, 0, 0, 0)
    build(small_oracle, [a, b, c, v])
    assert small_oracle.cells[:4] == [a, b, c, v]
    assert small_oracle.dfb_of(v) == 3


def test_full_table_is_saturated() -> None:
    table = SerialTable(2)
    build(table, [1, 2, 3, 4])
    with pytest.raises(SaturatedError):
        table.seq_add(5)


def test_remove_restores_layout(small_oracle: SerialTable) -> None:
    keys = pick_keys(SMALL_MASK, 0, 0, 1, 2, 1)
    build(small_oracle, keys[:-1])
    before = small_oracle.snapshot()
    small_oracle.seq_add(keys[-1])
    small_oracle.seq_remove(keys[-1])
    assert small_oracle.snapshot() == before


def test_invariant_holds_after_every_call() -> None:
    table = SerialTable(5, check_invariant=True)
    for key in range(1, 200):
        if key % 3 and len(table) < 28:
            table.seq_add(key)
        else:
            table.seq_remove(key // 2 or 1)
    assert ordering_violations(table.snapshot(), table.mask) == []


def test_ordering_violations_detects_jump() -> None:
    (at_home,) = pick_keys(SMALL_MASK, 0)
    (two_back,) = pick_keys(SMALL_MASK, 15)
    cells = [NIL] * 16
    cells[0], cells[1] = at_home, two_back
    assert ordering_violations(cells, SMALL_MASK) == [1]
    cells[0] = NIL
    assert ordering_violations(cells, SMALL_MASK) == [1]


def test_histogram_counts_dfbs(small_oracle: SerialTable) -> None:
    build(small_oracle, pick_keys(SMALL_MASK, 0, 0, 0))
    assert small_oracle.probe_histogram() == {0: 1, 1: 1, 2: 1}


def test_linear_probe_first_fit() -> None:
    table = LinearProbeTable(4)
    a, b, c = pick_keys(15, 0, 1, 0)
    for key in (a, b, c):
        assert table.seq_add(key)
    assert not table.seq_add(a)
    assert table.cells[:3] == [a, b, c]
    assert table.find(c) == (2, 3)
