from .serial import LinearProbeTable, SerialTable, ordering_violations
from .stats import ProbeStats, ProbeStrategy, fill, probe_stats

__all__ = [
    "SerialTable",
    "LinearProbeTable",
    "ordering_violations",
    "ProbeStats",
    "ProbeStrategy",
    "fill",
    "probe_stats",
]
