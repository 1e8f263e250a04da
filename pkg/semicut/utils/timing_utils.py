"""
Timing utilities for consistent wall-time reporting.

Reports carry wall times in milliseconds. When timings are disabled in the
settings every measurement reads 0 so reruns produce byte-identical output.
"""

import time
from datetime import datetime, timezone
from typing import Optional

from semicut.config import get_settings


def utc_now() -> datetime:
    """
    Return current UTC time.

    Use this instead of datetime.utcnow() which is deprecated in Python 3.12+.
    """
    return datetime.now(timezone.utc)


class Stopwatch:
    """Monotonic stopwatch reporting elapsed milliseconds."""

    def __init__(self, enabled: Optional[bool] = None):
        self.enabled = get_settings().record_timings if enabled is None else enabled
        self._start = time.perf_counter()

    def elapsed_ms(self) -> float:
        if not self.enabled:
            return 0.0
        return round((time.perf_counter() - self._start) * 1000.0, 3)
