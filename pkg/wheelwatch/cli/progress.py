from __future__ import annotations

import sys
import time

from tqdm.auto import tqdm


class TqdmProgress:
    """Adapts ``progress_callback(stage, percent, detail)`` to one tqdm bar per stage on stderr."""

    def __init__(self, enabled: bool = True, min_interval: float = 0.2) -> None:
        self._enabled = enabled
        self._min_interval = min_interval
        self._bar: tqdm | None = None
        self._stage: str | None = None
        self._last_emit = 0.0

    def __call__(self, stage: str, percent: int, detail: str) -> None:
        if not self._enabled:
            return
        if stage != self._stage:
            self.close()
            self._stage = stage
            self._bar = tqdm(total=100, desc=stage, unit="%", file=sys.stderr, leave=False)
        now = time.monotonic()
        if percent < 100 and now - self._last_emit < self._min_interval:
            return
        self._last_emit = now
        assert self._bar is not None
        self._bar.n = max(0, min(100, percent))
        self._bar.set_postfix_str(detail, refresh=False)
        self._bar.refresh()

    def close(self) -> None:
        if self._bar is not None:
            self._bar.close()
        self._bar = None
        self._stage = None

    def __enter__(self) -> TqdmProgress:
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
