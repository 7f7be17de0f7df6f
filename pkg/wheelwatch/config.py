from __future__ import annotations

import os

APP_NAME = "Wheel Watch"

DEFAULT_TIMEOUT_SECONDS = 60.0
TIMEOUT_ENV_VAR = "WHEEL_WATCH_TIMEOUT"

DEFAULT_HARDEN_K = 7
SUBDIVISION_PLAN_MAX = 2

CENSUS_MAX_ORDER = 9
SMALL_PIBAR_MAX_ORDER = 8

# C_n or its complement holds a wheel; regenerate with scripts/compute_hole_constants.py
HOLE_GRAPH_ANSWERS = {5: False, 6: False, 7: True}


def default_timeout() -> float | None:
    """Timeout for brute-force commands; ``None`` when disabled."""
    raw = os.environ.get(TIMEOUT_ENV_VAR, "").strip()
    if not raw:
        return DEFAULT_TIMEOUT_SECONDS
    try:
        seconds = float(raw)
    except ValueError:
        return DEFAULT_TIMEOUT_SECONDS
    return seconds if seconds > 0 else None
