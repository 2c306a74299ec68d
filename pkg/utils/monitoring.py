"""Run timing for experiment commands.

Timings are logged, never written into artifacts, so outputs stay byte-stable.
"""

import logging
import threading
import time
from collections import defaultdict
from contextlib import contextmanager
from functools import wraps
from typing import Any, Dict, List, Optional

log = logging.getLogger(__name__)


class TimingCollector:
    """
    per-operation wall-clock samples, thread-safe
    """

    def __init__(self, max_samples=1000):
        self._lock = threading.RLock()
        self._samples: Dict[str, List[float]] = defaultdict(list)
        self._failures: Dict[str, int] = defaultdict(int)
        self._max_samples = max_samples

    def record(self, operation: str, duration: float):
        with self._lock:
            samples = self._samples[operation]
            samples.append(duration)
            if len(samples) > self._max_samples:
                del samples[:-self._max_samples]

    def record_failure(self, operation: str):
        with self._lock:
            self._failures[operation] += 1

    def get_stats(self, operation: str) -> Dict[str, Any]:
        with self._lock:
            samples = list(self._samples.get(operation, []))
            failures = self._failures.get(operation, 0)
        if not samples:
            return {'operation': operation, 'runs': 0, 'failures': failures, 'total': 0.0, 'max': 0.0}
        return {
            'operation': operation,
            'runs': len(samples),
            'failures': failures,
            'total': sum(samples),
            'avg': sum(samples) / len(samples),
            'max': max(samples),
        }

    def get_all_stats(self) -> List[Dict[str, Any]]:
        with self._lock:
            names = sorted(set(self._samples) | set(self._failures))
            return [self.get_stats(name) for name in names]

    def reset(self):
        with self._lock:
            self._samples.clear()
            self._failures.clear()


_collector: Optional[TimingCollector] = None


def get_collector() -> TimingCollector:
    """grab or create the process-wide collector"""
    global _collector
    if _collector is None:
        _collector = TimingCollector()
    return _collector


@contextmanager
def track_performance(operation: str):
    """
    time a block

    usage:
        with track_performance("certify"):
            run_suite()
    """
    collector = get_collector()
    start = time.perf_counter()
    try:
        yield
    except Exception:
        collector.record_failure(operation)
        raise
    finally:
        duration = time.perf_counter() - start
        collector.record(operation, duration)
        log.debug(f"{operation} took {duration:.3f}s")


def timed(operation: Optional[str] = None):
    """decorator form of track_performance"""
    def decorator(func):
        name = operation or f"{func.__module__}.{func.__name__}"

        @wraps(func)
        def wrapper(*args, **kwargs):
            with track_performance(name):
                return func(*args, **kwargs)
        return wrapper
    return decorator
