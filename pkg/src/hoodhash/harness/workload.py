from collections.abc import Iterator

from pydantic import BaseModel, ConfigDict, Field, model_validator

from hoodhash.rng import SplitMix64
from hoodhash.verify.history import OpKind, draw_op

AVERAGE_TRIAL = -1

COLUMNS = (
    "capacity_log2",
    "load_factor",
    "update_ratio",
    "threads",
    "trial",
    "seed",
    "total_ops",
    "ops_per_us",
    "retries_per_op",
    "mean_probe",
)


class WorkloadSpec(BaseModel):
    """One benchmark cell. The key space always equals the table capacity."""

    model_config = ConfigDict(frozen=True)

    capacity_log2: int = Field(ge=1, le=40)
    load_factor: float = Field(ge=0.0, lt=1.0)
    update_ratio: float = Field(ge=0.0, le=1.0)
    threads: int = Field(ge=1)
    duration_secs: float = Field(gt=0)
    trials: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0)
    shard_log2: int = Field(default=3, ge=0)
    backoff: bool = False
    max_entries: int | None = Field(default=None, ge=1, description="Descriptor bound; None sizes it to the table.")

    @model_validator(mode="after")
    def _shards_fit(self) -> "WorkloadSpec":
        if self.shard_log2 > self.capacity_log2:
            raise ValueError("shard_log2 cannot exceed capacity_log2")
        return self

    @property
    def capacity(self) -> int:
        return 1 << self.capacity_log2

    @property
    def key_space(self) -> int:
        return self.capacity

    @property
    def prefill_size(self) -> int:
        return round(self.load_factor * self.capacity)

    def trial_seed(self, trial: int) -> int:
        return self.seed + trial


def op_stream(spec: WorkloadSpec, thread_id: int, trial: int = 0) -> Iterator[tuple[OpKind, int]]:
    """Endless deterministic stream of (operation, key) for one worker of one trial."""
    rng = SplitMix64.for_thread(spec.trial_seed(trial), thread_id + 1)
    key_space = spec.key_space
    update_ratio = spec.update_ratio
    while True:
        op = draw_op(rng, update_ratio)
        yield op, rng.key(key_space)


class ResultRecord(BaseModel):
    """The emitted columns of a ``RunResult``."""

    capacity_log2: int
    load_factor: float
    update_ratio: float
    threads: int
    trial: int
    seed: int
    total_ops: int | float = Field(description="An operation count on trial rows, a mean on average rows.")
    ops_per_us: float
    retries_per_op: float
    mean_probe: float


class RunResult(BaseModel):
    spec: WorkloadSpec
    trial: int
    seed: int
    per_thread_ops: list[int] = Field(default_factory=list)
    total_ops: int | float
    elapsed_secs: float
    ops_per_us: float
    retries_per_op: float
    mean_probe: float
    initial_members: int | None = None
    final_members: int | None = None
    audit_passed: bool | None = None

    @model_validator(mode="after")
    def _total_matches_threads(self) -> "RunResult":
        if self.trial != AVERAGE_TRIAL and self.total_ops != sum(self.per_thread_ops):
            raise ValueError("total_ops must equal the sum of per-thread counts")
        return self

    @property
    def is_average(self) -> bool:
        return self.trial == AVERAGE_TRIAL

    @property
    def occupancy_drift(self) -> float | None:
        """Relative change in member count over the trial."""
        if not self.initial_members or self.final_members is None:
            return None
        return (self.final_members - self.initial_members) / self.initial_members

    def record(self) -> ResultRecord:
        return ResultRecord(
            capacity_log2=self.spec.capacity_log2,
            load_factor=self.spec.load_factor,
            update_ratio=self.spec.update_ratio,
            threads=self.spec.threads,
            trial=self.trial,
            seed=self.seed,
            total_ops=self.total_ops,
            ops_per_us=self.ops_per_us,
            retries_per_op=self.retries_per_op,
            mean_probe=self.mean_probe,
        )


def average(results: list[RunResult]) -> RunResult:
    """Mean of the trials of one cell, flagged with ``trial = -1``."""
    n = len(results)
    audits = [r.audit_passed for r in results if r.audit_passed is not None]
    return RunResult(
        spec=results[0].spec,
        trial=AVERAGE_TRIAL,
        seed=results[0].spec.seed,
        total_ops=sum(r.total_ops for r in results) / n,
        elapsed_secs=sum(r.elapsed_secs for r in results) / n,
        ops_per_us=sum(r.ops_per_us for r in results) / n,
        retries_per_op=sum(r.retries_per_op for r in results) / n,
        mean_probe=sum(r.mean_probe for r in results) / n,
        audit_passed=all(audits) if audits else None,
    )
