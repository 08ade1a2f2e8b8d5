from typing import Optional

from typer import Context, Exit, Option, Typer, echo

from hoodhash.errors import HoodhashError
from hoodhash.verify.suites import SuiteName, SuiteOptions, SuiteResult, run_suite

app = Typer(help="Correctness suites: audit, linearizability, races, kcas-torture, probe-stats, mutations")


def _print_text(result: SuiteResult) -> None:
    status = "PASS" if result.passed else "FAIL"
    echo(f"{status} {result.name} ({result.elapsed_secs:.2f}s)")
    for key, value in result.details.items():
        echo(f"    {key}: {value}")


@app.callback(invoke_without_command=True)
def verify(
    ctx: Context,
    suite: SuiteName = Option(SuiteName.ALL, "--suite", help="Suite to run"),
    threads: int = Option(8, "--threads", help="Worker threads for stress suites"),
    seconds: float = Option(2.0, "--seconds", help="Duration of each stress run"),
    keys: int = Option(8, "--keys", help="Key space of the linearizability stress"),
    capacity_log2: int = Option(10, "--capacity-log2", help="Table size of the audit stress"),
    seeds: int = Option(5, "--seeds", help="Seeds pooled by probe-stats"),
    executions: int = Option(100, "--executions", help="Runs per directed race, overlap schedules"),
    seed: Optional[int] = Option(None, "--seed", help="Base seed (default: HOODHASH_SEED)"),
    json_lines: bool = Option(False, "--json-lines", help="Print one JSON record per suite"),
):
    """
    Run a verification suite; exit code 0 iff every check passes.

    Examples:
      hoodhash verify --suite races --executions 100
      hoodhash verify --suite linearizability --threads 8 --keys 8 --seconds 5
    """
    if ctx.invoked_subcommand is not None:
        return
    from hoodhash.settings import settings

    options = SuiteOptions(
        threads=threads,
        seconds=seconds,
        keys=keys,
        capacity_log2=capacity_log2,
        seeds=seeds,
        executions=executions,
        seed=settings.SEED if seed is None else seed,
    )
    try:
        results = run_suite(suite, options)
    except HoodhashError as e:
        echo(f"Error: {e}", err=True)
        raise Exit(1)

    for result in results:
        if json_lines:
            echo(result.model_dump_json())
        else:
            _print_text(result)
    if not all(result.passed for result in results):
        raise Exit(1)


@app.command(name="scenarios")
def scenarios():
    """
    List the directed race scenarios.
    """
    from hoodhash.verify.races import SCENARIOS

    for name in SCENARIOS:
        echo(name)
