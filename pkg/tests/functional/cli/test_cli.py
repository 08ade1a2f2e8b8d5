import json

from typer.testing import CliRunner

from hoodhash.cli.main import app
from hoodhash.harness import AVERAGE_TRIAL, COLUMNS, load_csv
from tests.functional import SCENARIO_IDS

TINY_BENCH = [
    "bench",
    "--capacity-log2",
    "8",
    "--load-factor",
    "0.5",
    "--update-ratio",
    "0.2",
    "--threads",
    "1",
    "--threads",
    "2",
    "--duration-secs",
    "0.05",
    "--no-pin",
]


def test_version(cli_runner: CliRunner) -> None:
    result = cli_runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert "hoodhash version" in result.stdout


def test_log_level_is_case_insensitive(cli_runner: CliRunner) -> None:
    result = cli_runner.invoke(app, ["--log-level", "debug", "version"])
    assert result.exit_code == 0, result.output


def test_unknown_log_level_is_a_usage_error(cli_runner: CliRunner) -> None:
    result = cli_runner.invoke(app, ["--log-level", "verbose", "version"])
    assert result.exit_code == 2
    assert "verbose" in result.output


def test_bench_json_lines(cli_runner: CliRunner) -> None:
    result = cli_runner.invoke(app, TINY_BENCH + ["--trials", "1", "--format", "json-lines", "--verify"])
    assert result.exit_code == 0, result.output
    records = [json.loads(line) for line in result.stdout.splitlines()]
    assert [r["threads"] for r in records] == [1, 1, 2, 2]
    assert [r["trial"] for r in records] == [0, AVERAGE_TRIAL, 0, AVERAGE_TRIAL]
    assert tuple(records[0]) == COLUMNS


def test_bench_csv_to_file(cli_runner: CliRunner, tmp_path) -> None:
    out = tmp_path / "results.csv"
    result = cli_runner.invoke(app, TINY_BENCH + ["--trials", "2", "--out", str(out)])
    assert result.exit_code == 0, result.output
    records = load_csv(out)
    assert len(records) == 2 * 3
    assert records[0].capacity_log2 == 8


def test_bench_rejects_oversized_shards(cli_runner: CliRunner) -> None:
    result = cli_runner.invoke(app, ["bench", "--capacity-log2", "2", "--shard-log2", "3", "--no-pin"])
    assert result.exit_code == 1
    assert "Error" in result.output


def test_verify_mutations(cli_runner: CliRunner) -> None:
    result = cli_runner.invoke(app, ["verify", "--suite", "mutations", "--json-lines"])
    assert result.exit_code == 0, result.output
    (record,) = [json.loads(line) for line in result.stdout.splitlines()]
    assert record["name"] == "mutations"
    assert record["passed"] is True


def test_verify_races_text(cli_runner: CliRunner) -> None:
    result = cli_runner.invoke(app, ["verify", "--suite", "races", "--executions", "2"])
    assert result.exit_code == 0, result.output
    assert result.stdout.startswith("PASS races")


def test_verify_scenarios(cli_runner: CliRunner) -> None:
    result = cli_runner.invoke(app, ["verify", "scenarios"])
    assert result.exit_code == 0
    assert result.stdout.split() == SCENARIO_IDS


def test_verify_unknown_suite(cli_runner: CliRunner) -> None:
    result = cli_runner.invoke(app, ["verify", "--suite", "everything"])
    assert result.exit_code != 0


def test_bench_at_eighty_percent_load(cli_runner: CliRunner) -> None:
    args = ["bench", "--capacity-log2", "12", "--load-factor", "0.8", "--update-ratio", "0.1", "--threads", "1"]
    result = cli_runner.invoke(app, args + ["--trials", "1", "--duration-secs", "0.05", "--verify", "--no-pin"])
    assert result.exit_code == 0, result.output
    assert len(load_csv(result.stdout)) == 2
