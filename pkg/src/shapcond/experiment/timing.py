"""Per-phase timing for experiment runs.

Phases follow the benchmark's decomposition: training (fitting samplers or
regressors), generating (drawing Monte Carlo samples), predicting (model
calls, contribution reduction and the Shapley solve).  With a single
worker thread the preferred clock is process CPU time; with several
threads, or on kernels whose CPU clock ticks too coarsely to attribute
sub-millisecond phases, wall-clock deltas are accumulated instead and the
mode is flagged in the manifest.
"""

from __future__ import annotations

import functools
import threading
import time
from contextlib import contextmanager

__all__ = ["PhaseTimer", "NULL_TIMER", "cpu_clock_usable"]

PHASES = ("training", "generating", "predicting")


@functools.lru_cache(maxsize=1)
def cpu_clock_usable(max_tick: float = 1e-3) -> bool:
    """Whether process CPU time advances finely enough for phase accounting.

    Some sandboxed kernels quantize CLOCK_PROCESS_CPUTIME_ID to ~10 ms,
    which would swallow the short per-coalition intervals entirely.
    """
    deadline = time.perf_counter() + 0.02
    changes = 0
    prev = time.process_time()
    while time.perf_counter() < deadline:
        cur = time.process_time()
        if cur != prev:
            if cur - prev > max_tick:
                return False
            changes += 1
            prev = cur
        if changes >= 3:
            return True
    return changes >= 3


class PhaseTimer:
    def __init__(self, mode: str = "cpu"):
        if mode not in ("cpu", "wall"):
            raise ValueError(f"unknown timer mode {mode!r}")
        if mode == "cpu" and not cpu_clock_usable():
            mode = "wall"
        self.mode = mode
        self._clock = time.process_time if mode == "cpu" else time.perf_counter
        self._lock = threading.Lock()
        self.totals = {name: 0.0 for name in PHASES}

    @contextmanager
    def phase(self, name: str):
        start = self._clock()
        try:
            yield
        finally:
            delta = self._clock() - start
            with self._lock:
                self.totals[name] = self.totals.get(name, 0.0) + delta


class _NullTimer:
    @contextmanager
    def phase(self, name: str):
        yield


NULL_TIMER = _NullTimer()
