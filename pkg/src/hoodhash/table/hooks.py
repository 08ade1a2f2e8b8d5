"""
Test-only pause points.

A table built without ``PausePoints`` skips every hook behind a single ``is None``
check; nothing here changes what an operation does, only when it does it.
"""

import threading
from collections.abc import Callable
from enum import StrEnum
from typing import NamedTuple


class PausePoint(StrEnum):
    CELL_READ = "cell-read"
    BEFORE_COMMIT = "before-commit"


class PauseContext(NamedTuple):
    point: PausePoint
    op: str
    key: int
    index: int
    value: int
    attempt: int


Hook = Callable[[PauseContext], None]


class PausePoints:
    def __init__(self) -> None:
        self._hooks: dict[PausePoint, Hook] = {}
        self._lock = threading.Lock()

    def on(self, point: PausePoint, hook: Hook) -> None:
        with self._lock:
            self._hooks[point] = hook

    def clear(self) -> None:
        with self._lock:
            self._hooks.clear()

    def fire(self, context: PauseContext) -> None:
        hook = self._hooks.get(context.point)
        if hook is not None:
            hook(context)
