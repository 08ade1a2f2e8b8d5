import pytest

from hoodhash.errors import ContractViolation
from hoodhash.oracle import ProbeStrategy, probe_stats


@pytest.mark.parametrize("load", [0.0, 1.0, -0.2])
def test_load_factor_range(load: float) -> None:
    with pytest.raises(ContractViolation):
        probe_stats(load, capacity_log2=8)


def test_nearly_empty_table_probes_once() -> None:
    stats = probe_stats(0.01, capacity_log2=10, seeds=[1, 2])
    assert stats.members == 20
    assert 1.0 <= stats.mean_successful < 1.1


def test_robin_hood_narrows_dfb_spread() -> None:
    robin_hood = probe_stats(0.8, capacity_log2=12, seeds=[0, 1])
    linear = probe_stats(0.8, capacity_log2=12, seeds=[0, 1], strategy=ProbeStrategy.LINEAR)
    assert robin_hood.dfb_variance < linear.dfb_variance
    assert robin_hood.max_dfb < linear.max_dfb


@pytest.mark.slow
def test_successful_probes_at_load_0_8() -> None:
    stats = probe_stats(0.8, capacity_log2=16, seeds=[0, 1, 2, 3, 4])
    assert 2.0 <= stats.mean_successful <= 3.2


@pytest.mark.slow
def test_unsuccessful_probes_grow_with_size() -> None:
    large = probe_stats(0.8, capacity_log2=16, seeds=[0, 1, 2, 3, 4])
    small = probe_stats(0.8, capacity_log2=10, seeds=list(range(64)))
    assert large.mean_unsuccessful > small.mean_unsuccessful
