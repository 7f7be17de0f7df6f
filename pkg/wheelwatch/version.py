from __future__ import annotations

APP_VERSION = "1.0.0"
