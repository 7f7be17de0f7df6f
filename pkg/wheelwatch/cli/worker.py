from __future__ import annotations

import logging
import threading
import time
from typing import Callable, Generic, TypeVar

from wheelwatch.core.errors import CommandTimeout

logger = logging.getLogger(__name__)

T = TypeVar("T")


class CommandWorker(Generic[T]):
    """Runs one command body on a daemon thread and joins it with a timeout.

    The thread is a daemon so an expired brute-force search does not keep the
    process alive after ``main`` returns.
    """

    def __init__(self, name: str, task: Callable[[], T]) -> None:
        self._name = name
        self._task = task
        self._result: T | None = None
        self._error: BaseException | None = None
        self._thread = threading.Thread(target=self.run, name=f"wheelwatch-{name}", daemon=True)
        self.elapsed = 0.0

    def run(self) -> None:
        try:
            self._result = self._task()
        except Exception as exc:  # noqa: BLE001
            self._error = exc

    def execute(self, timeout: float | None) -> T:
        started = time.monotonic()
        self._thread.start()
        self._thread.join(timeout)
        self.elapsed = time.monotonic() - started
        if self._thread.is_alive():
            logger.debug("%s still running after %.1fs, abandoning", self._name, self.elapsed)
            raise CommandTimeout(f"{self._name} exceeded the {timeout:g}s timeout")
        if self._error is not None:
            raise self._error
        return self._result  # type: ignore[return-value]
