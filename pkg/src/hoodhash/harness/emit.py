import csv
import sys
from collections.abc import Iterable
from enum import StrEnum
from pathlib import Path
from typing import TextIO

from hoodhash.harness.workload import COLUMNS, ResultRecord, RunResult


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON_LINES = "json-lines"


def _record(result: RunResult | ResultRecord) -> ResultRecord:
    return result.record() if isinstance(result, RunResult) else result


def write_records(results: Iterable[RunResult | ResultRecord], fmt: OutputFormat, sink: TextIO) -> int:
    """Write records to an open text stream; returns how many were written."""
    written = 0
    if fmt is OutputFormat.CSV:
        writer = csv.DictWriter(sink, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        for result in results:
            writer.writerow(_record(result).model_dump())
            written += 1
    else:
        for result in results:
            sink.write(_record(result).model_dump_json() + "\n")
            written += 1
    sink.flush()
    return written


def emit(results: Iterable[RunResult | ResultRecord], fmt: OutputFormat | str, out: Path | None = None) -> int:
    """Write records to ``out`` (stdout when None) in a fixed column order; averages carry ``trial = -1``."""
    fmt = OutputFormat(fmt)
    if out is None:
        return write_records(results, fmt, sys.stdout)
    with open(out, "w", newline="") as sink:
        return write_records(results, fmt, sink)


def load_json_lines(source: Path | str) -> list[ResultRecord]:
    """Parse emitted json-lines back; ``source`` is a path or the text itself."""
    text = source.read_text() if isinstance(source, Path) else source
    return [ResultRecord.model_validate_json(line) for line in text.splitlines() if line.strip()]


def load_csv(source: Path | str) -> list[ResultRecord]:
    text = source.read_text() if isinstance(source, Path) else source
    return [ResultRecord.model_validate(row) for row in csv.DictReader(text.splitlines())]
