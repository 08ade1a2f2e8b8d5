from collections.abc import Iterator
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError
from typer import Exit, Option, echo

from hoodhash.errors import HoodhashError
from hoodhash.harness import GridSpec, OutputFormat, RunResult, emit, run_grid

DEFAULT_LOAD_FACTORS = [0.2, 0.4, 0.6, 0.8]
DEFAULT_UPDATE_RATIOS = [0.1, 0.2]
DEFAULT_THREADS = [1, 2, 4]


def bench(
    capacity_log2: Optional[int] = Option(None, "--capacity-log2", help="Table size as a power of two"),
    load_factor: Optional[List[float]] = Option(None, "--load-factor", help="Prefill load factor (repeatable)"),
    update_ratio: Optional[List[float]] = Option(None, "--update-ratio", help="Share of add+remove (repeatable)"),
    threads: Optional[List[int]] = Option(None, "--threads", help="Worker thread count (repeatable)"),
    duration_secs: Optional[float] = Option(None, "--duration-secs", help="Length of one trial"),
    trials: Optional[int] = Option(None, "--trials", help="Trials per grid cell"),
    seed: Optional[int] = Option(None, "--seed", help="Base seed of the workload generator"),
    shard_log2: Optional[int] = Option(None, "--shard-log2", help="Cells per timestamp shard as a power of two"),
    backoff: Optional[bool] = Option(None, "--backoff/--no-backoff", help="Exponential backoff on retry"),
    max_entries: Optional[int] = Option(
        None, "--max-entries", help="Cap on K-CAS descriptor entries (default: sized to the table)"
    ),
    verify: bool = Option(False, "--verify", help="Audit the table after every trial"),
    pin: bool = Option(True, "--pin/--no-pin", help="Pin worker threads to cores when possible"),
    fmt: OutputFormat = Option(OutputFormat.CSV, "--format", help="Output format"),
    out: Optional[Path] = Option(None, "--out", help="Write records here instead of stdout"),
):
    """
    Run the throughput grid: load factors x update ratios x thread counts.

    Every trial emits one record; every grid cell adds one average record with
    trial = -1. With --verify the exit code is 1 if any audit fails.

    Examples:
      hoodhash bench --capacity-log2 16 --load-factor 0.6 --threads 1 --threads 4
      hoodhash bench --verify --format json-lines --out results.jsonl
    """
    from hoodhash.settings import settings

    try:
        grid = GridSpec(
            capacity_log2=settings.CAPACITY_LOG2 if capacity_log2 is None else capacity_log2,
            load_factors=load_factor or DEFAULT_LOAD_FACTORS,
            update_ratios=update_ratio or DEFAULT_UPDATE_RATIOS,
            thread_counts=threads or DEFAULT_THREADS,
            duration_secs=settings.DURATION_SECS if duration_secs is None else duration_secs,
            trials=settings.TRIALS if trials is None else trials,
            seed=settings.SEED if seed is None else seed,
            shard_log2=settings.SHARD_LOG2 if shard_log2 is None else shard_log2,
            backoff=settings.BACKOFF if backoff is None else backoff,
            max_entries=max_entries,
        )
        failed_audits: list[RunResult] = []

        def checked() -> Iterator[RunResult]:
            for result in run_grid(grid, verify=verify, pin=pin):
                if result.audit_passed is False and not result.is_average:
                    failed_audits.append(result)
                yield result

        emit(checked(), fmt, out)
    except (HoodhashError, ValidationError) as e:
        echo(f"Error: {e}", err=True)
        raise Exit(1)
    except OSError as e:
        echo(f"Error: cannot write results: {e}", err=True)
        raise Exit(1)

    if failed_audits:
        echo(f"Error: {len(failed_audits)} trial audit(s) failed", err=True)
        raise Exit(1)
