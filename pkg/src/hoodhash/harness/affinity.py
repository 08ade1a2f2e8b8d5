"""
Best-effort thread pinning.

CPUs are ordered so that every physical core gets one thread before any core
gets a second one (hyper-threads are used last). Where the platform does not
let us read the topology or set affinity, pinning degrades to a no-op after one
warning.
"""

import logging
import os
import threading
from functools import lru_cache
from pathlib import Path

logger = logging.getLogger(__name__)

SYS_CPU = Path("/sys/devices/system/cpu")

_warned = threading.Event()


def _read_int(path: Path) -> int | None:
    try:
        return int(path.read_text().strip())
    except (OSError, ValueError):
        return None


@lru_cache(maxsize=1)
def core_order() -> tuple[int, ...]:
    """Usable CPUs, one per physical core first, then the remaining siblings."""
    if not hasattr(os, "sched_getaffinity"):
        return ()
    usable = sorted(os.sched_getaffinity(0))
    first: list[int] = []
    siblings: list[int] = []
    seen_cores: set[tuple[int | None, int | None]] = set()
    for cpu in usable:
        topology = SYS_CPU / f"cpu{cpu}" / "topology"
        core = (_read_int(topology / "physical_package_id"), _read_int(topology / "core_id"))
        if core == (None, None) or core not in seen_cores:
            seen_cores.add(core)
            first.append(cpu)
        else:
            siblings.append(cpu)
    return tuple(first + siblings)


def pin_current_thread(worker: int) -> int | None:
    """Pin the calling thread to the ``worker``-th CPU of :func:`core_order`; returns the CPU or None."""
    order = core_order()
    if not order:
        _warn_once("thread pinning is not supported on this platform")
        return None
    cpu = order[worker % len(order)]
    try:
        os.sched_setaffinity(0, {cpu})
    except OSError as e:
        _warn_once(f"thread pinning unavailable: {e}")
        return None
    return cpu


def _warn_once(message: str) -> None:
    if not _warned.is_set():
        _warned.set()
        logger.warning(message)
