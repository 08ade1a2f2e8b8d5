import io
from pathlib import Path

import pytest

from hoodhash.harness import COLUMNS, OutputFormat, ResultRecord, emit, load_csv, load_json_lines, write_records


@pytest.fixture
def records() -> list[ResultRecord]:
    return [
        ResultRecord(
            capacity_log2=10,
            load_factor=0.6,
            update_ratio=0.1,
            threads=2,
            trial=0,
            seed=7,
            total_ops=1000,
            ops_per_us=0.25,
            retries_per_op=0.01,
            mean_probe=1.75,
        ),
        ResultRecord(
            capacity_log2=10,
            load_factor=0.6,
            update_ratio=0.1,
            threads=2,
            trial=-1,
            seed=7,
            total_ops=1000,
            ops_per_us=0.25,
            retries_per_op=0.01,
            mean_probe=1.75,
        ),
    ]


def test_csv_header_and_row(records: list[ResultRecord]) -> None:
    sink = io.StringIO()
    assert write_records(records[:1], OutputFormat.CSV, sink) == 1
    lines = sink.getvalue().splitlines()
    assert len(lines) == 2
    assert lines[0] == ",".join(COLUMNS)


def test_formats_agree(records: list[ResultRecord]) -> None:
    as_csv, as_json = io.StringIO(), io.StringIO()
    write_records(records, OutputFormat.CSV, as_csv)
    write_records(records, OutputFormat.JSON_LINES, as_json)
    assert load_csv(as_csv.getvalue()) == load_json_lines(as_json.getvalue())


def test_json_lines_round_trip(records: list[ResultRecord], tmp_path: Path) -> None:
    out = tmp_path / "results.jsonl"
    assert emit(records, "json-lines", out) == 2
    assert load_json_lines(out) == records
    assert [r.trial for r in load_json_lines(out)] == [0, -1]


def test_empty_stream_writes_only_a_header() -> None:
    sink = io.StringIO()
    assert write_records([], OutputFormat.CSV, sink) == 0
    assert sink.getvalue() == ",".join(COLUMNS) + "\n"


def test_unwritable_sink(records: list[ResultRecord], tmp_path: Path) -> None:
    with pytest.raises(OSError):
        emit(records, OutputFormat.CSV, tmp_path / "missing" / "out.csv")


def test_columns_follow_the_record_fields() -> None:
    assert tuple(ResultRecord.model_fields) == COLUMNS


def test_counts_are_written_as_integers(records: list[ResultRecord]) -> None:
    mean = records[1].model_copy(update={"total_ops": 1000.5})
    sink = io.StringIO()
    write_records([records[0], mean], OutputFormat.CSV, sink)
    rows = [line.split(",") for line in sink.getvalue().splitlines()[1:]]
    total = COLUMNS.index("total_ops")
    assert [row[total] for row in rows] == ["1000", "1000.5"]
    assert [r.total_ops for r in load_csv(sink.getvalue())] == [1000, 1000.5]
