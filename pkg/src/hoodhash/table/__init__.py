from .concurrent import OpStats, RobinHoodTable, TableSnapshot, descriptor_bound
from .hashing import NIL, calc_dist, home_bucket, keys_with_home, mix64
from .hooks import PauseContext, PausePoint, PausePoints
from .probe import CellChange, CommitPlan, ProbeState

__all__ = [
    "RobinHoodTable",
    "TableSnapshot",
    "OpStats",
    "descriptor_bound",
    "NIL",
    "calc_dist",
    "home_bucket",
    "mix64",
    "keys_with_home",
    "PausePoint",
    "PausePoints",
    "PauseContext",
    "ProbeState",
    "CommitPlan",
    "CellChange",
]
