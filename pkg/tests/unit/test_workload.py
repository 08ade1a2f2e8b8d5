from itertools import islice

import pytest
from pydantic import ValidationError

from hoodhash.harness import AVERAGE_TRIAL, RunResult, WorkloadSpec, average, op_stream
from hoodhash.verify import OpKind


@pytest.fixture
def spec() -> WorkloadSpec:
    return WorkloadSpec(capacity_log2=10, load_factor=0.5, update_ratio=0.2, threads=2, duration_secs=0.1, seed=11)


def test_key_space_is_capacity(spec: WorkloadSpec) -> None:
    assert spec.key_space == 1024
    assert spec.prefill_size == 512


def test_streams_are_deterministic(spec: WorkloadSpec) -> None:
    first = list(islice(op_stream(spec, 0), 500))
    assert first == list(islice(op_stream(spec, 0), 500))
    assert first != list(islice(op_stream(spec, 1), 500))
    assert first != list(islice(op_stream(spec, 0, trial=1), 500))
    assert all(1 <= key <= spec.key_space for _, key in first)


def test_updates_split_evenly(spec: WorkloadSpec) -> None:
    ops = [op for op, _ in islice(op_stream(spec, 0), 20000)]
    adds, removes = ops.count(OpKind.ADD), ops.count(OpKind.REMOVE)
    assert 1600 < adds < 2400
    assert 1600 < removes < 2400


def test_read_only_stream() -> None:
    spec = WorkloadSpec(capacity_log2=4, load_factor=0.0, update_ratio=0.0, threads=1, duration_secs=1)
    assert {op for op, _ in islice(op_stream(spec, 0), 1000)} == {OpKind.CONTAINS}


@pytest.mark.parametrize(
    "overrides",
    [{"load_factor": 1.0}, {"update_ratio": 1.5}, {"threads": 0}, {"shard_log2": 11}, {"duration_secs": 0}],
)
def test_invalid_specs(overrides: dict) -> None:
    values = dict(capacity_log2=10, load_factor=0.5, update_ratio=0.1, threads=1, duration_secs=1.0)
    values.update(overrides)
    with pytest.raises(ValidationError):
        WorkloadSpec(**values)


def test_total_must_match_threads(spec: WorkloadSpec) -> None:
    common = dict(spec=spec, trial=0, seed=11, elapsed_secs=1.0, ops_per_us=0.0, retries_per_op=0.0, mean_probe=1.0)
    RunResult(per_thread_ops=[3, 4], total_ops=7, **common)
    with pytest.raises(ValidationError):
        RunResult(per_thread_ops=[3, 4], total_ops=8, **common)


def test_average_is_flagged(spec: WorkloadSpec) -> None:
    common = dict(spec=spec, seed=11, elapsed_secs=1.0, retries_per_op=0.0, mean_probe=1.0)
    trials = [
        RunResult(trial=0, per_thread_ops=[10], total_ops=10, ops_per_us=1.0, **common),
        RunResult(trial=1, per_thread_ops=[20], total_ops=20, ops_per_us=3.0, **common),
    ]
    mean = average(trials)
    assert mean.trial == AVERAGE_TRIAL
    assert mean.is_average
    assert mean.total_ops == 15
    assert mean.ops_per_us == 2.0


def test_trial_counts_stay_integers(spec: WorkloadSpec) -> None:
    common = dict(spec=spec, seed=11, elapsed_secs=1.0, retries_per_op=0.0, mean_probe=1.0, ops_per_us=1.0)
    trials = [
        RunResult(trial=0, per_thread_ops=[10], total_ops=10, **common),
        RunResult(trial=1, per_thread_ops=[11], total_ops=11, **common),
    ]
    assert isinstance(trials[0].record().total_ops, int)
    assert average(trials).record().total_ops == 10.5


def test_occupancy_drift(spec: WorkloadSpec) -> None:
    common = dict(spec=spec, trial=0, seed=11, elapsed_secs=1.0, ops_per_us=0.0, retries_per_op=0.0, mean_probe=1.0)
    result = RunResult(per_thread_ops=[5], total_ops=5, initial_members=200, final_members=210, **common)
    assert result.occupancy_drift == pytest.approx(0.05)
    assert RunResult(per_thread_ops=[5], total_ops=5, **common).occupancy_drift is None
