from .affinity import core_order, pin_current_thread
from .emit import OutputFormat, emit, load_csv, load_json_lines, write_records
from .runner import GridSpec, build_table, prefill, run_grid, run_trial
from .workload import AVERAGE_TRIAL, COLUMNS, ResultRecord, RunResult, WorkloadSpec, average, op_stream

__all__ = [
    "core_order",
    "pin_current_thread",
    "OutputFormat",
    "emit",
    "load_csv",
    "load_json_lines",
    "write_records",
    "GridSpec",
    "build_table",
    "prefill",
    "run_grid",
    "run_trial",
    "AVERAGE_TRIAL",
    "COLUMNS",
    "ResultRecord",
    "RunResult",
    "WorkloadSpec",
    "average",
    "op_stream",
]
