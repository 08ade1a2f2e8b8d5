import os
import sys

import pytest

from hoodhash.harness import AVERAGE_TRIAL, GridSpec, WorkloadSpec, build_table, prefill, run_grid, run_trial
from hoodhash.verify import audit_quiescent

TINY_RUN_SECS = 0.05


def _spec(**overrides) -> WorkloadSpec:
    fields = dict(capacity_log2=10, load_factor=0.5, update_ratio=0.2, threads=1, duration_secs=TINY_RUN_SECS)
    fields.update(overrides)
    return WorkloadSpec(**fields)


def test_prefill_hits_target_size() -> None:
    spec = _spec()
    table = build_table(spec)
    members = prefill(table, spec)
    assert len(members) == len(table) == 512
    assert all(1 <= key <= spec.capacity for key in members)
    assert audit_quiescent(table, expected=members).passed


def test_prefill_is_seeded() -> None:
    spec = _spec(seed=11)
    assert prefill(build_table(spec), spec) == prefill(build_table(spec), spec)


def test_zero_load_prefills_nothing() -> None:
    spec = _spec(load_factor=0.0)
    table = build_table(spec)
    assert prefill(table, spec) == set()
    assert len(table) == 0


def test_read_only_single_thread_never_retries() -> None:
    spec = _spec(update_ratio=0.0)
    table = build_table(spec)
    members = prefill(table, spec)
    result = run_trial(table, spec, pin=False)
    assert result.total_ops > 0
    assert result.retries_per_op == 0.0
    assert result.final_members == len(members)
    assert result.mean_probe >= 1.0


def test_trial_totals_sum_threads() -> None:
    spec = _spec(threads=3)
    table = build_table(spec)
    prefill(table, spec)
    result = run_trial(table, spec, trial=2, verify=True, pin=False)
    assert len(result.per_thread_ops) == 3
    assert result.total_ops == sum(result.per_thread_ops)
    assert result.seed == spec.seed + 2
    assert result.audit_passed is True


def test_grid_emits_trials_and_averages() -> None:
    grid = GridSpec(
        capacity_log2=8,
        load_factors=[0.2, 0.6],
        update_ratios=[0.0, 0.5],
        thread_counts=[1, 2],
        duration_secs=TINY_RUN_SECS,
        trials=2,
    )
    results = list(run_grid(grid, verify=True, pin=False))
    assert len(results) == 2 * 2 * 2 * (2 + 1)
    averages = [r for r in results if r.is_average]
    assert len(averages) == 8
    assert all(r.trial == AVERAGE_TRIAL for r in results[2::3])
    assert all(r.audit_passed for r in results)


def test_empty_range_runs_nothing() -> None:
    grid = GridSpec(capacity_log2=8, load_factors=[], update_ratios=[0.1], thread_counts=[1], duration_secs=1.0)
    assert list(run_grid(grid, pin=False)) == []


def test_shards_cannot_exceed_table() -> None:
    with pytest.raises(ValueError):
        _spec(capacity_log2=2, shard_log2=3)


def _free_threaded() -> bool:
    return not getattr(sys, "_is_gil_enabled", lambda: True)()


@pytest.mark.parametrize("capacity_log2", [8, 12])
def test_prefill_to_eighty_percent(capacity_log2: int) -> None:
    spec = _spec(capacity_log2=capacity_log2, load_factor=0.8)
    table = build_table(spec)
    members = prefill(table, spec)
    assert len(members) == spec.prefill_size
    assert audit_quiescent(table, expected=members).passed


@pytest.mark.slow
def test_large_prefill_to_eighty_percent() -> None:
    spec = _spec(capacity_log2=16, load_factor=0.8)
    table = build_table(spec)
    members = prefill(table, spec)
    assert len(members) == 52429
    assert audit_quiescent(table, expected=members).passed


def test_explicit_descriptor_cap_is_used() -> None:
    assert build_table(_spec(max_entries=32)).kcas.max_entries == 32
    assert build_table(_spec()).kcas.max_entries == 1024 + 128


def test_half_updates_keep_occupancy_stationary() -> None:
    spec = _spec(capacity_log2=14, load_factor=0.5, update_ratio=0.5, threads=2, duration_secs=0.2)
    table = build_table(spec)
    prefill(table, spec)
    result = run_trial(table, spec, verify=True, pin=False)
    assert result.initial_members == 8192
    assert abs(result.occupancy_drift) <= 0.05
    assert result.audit_passed is True


@pytest.mark.slow
@pytest.mark.skipif((os.cpu_count() or 1) < 4, reason="needs at least four cores")
@pytest.mark.skipif(not _free_threaded(), reason="threads only scale on a free-threaded interpreter")
def test_threads_scale_past_one_core() -> None:
    def throughput(threads: int) -> float:
        spec = _spec(capacity_log2=16, load_factor=0.6, update_ratio=0.1, threads=threads, duration_secs=1.0)
        table = build_table(spec)
        prefill(table, spec)
        return run_trial(table, spec).ops_per_us

    assert throughput(4) >= 1.3 * throughput(1)
