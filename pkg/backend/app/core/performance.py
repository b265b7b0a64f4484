"""
Timing utilities for the verification harness.
"""

import time
from functools import wraps
from typing import Callable, Optional

from .logging import app_logger


class Stopwatch:
    """
    Context manager measuring wall time in milliseconds.

    Example:
        with Stopwatch() as sw:
            run_case()
        report["wall_ms"] = sw.elapsed_ms
    """

    def __init__(self):
        self._start: Optional[float] = None
        self.elapsed_ms: float = 0.0

    def __enter__(self) -> "Stopwatch":
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        self.elapsed_ms = round((time.perf_counter() - self._start) * 1000.0, 3)
        return False


def measure_performance(func: Callable) -> Callable:
    """
    Decorator to measure function execution time.

    Usage:
        @measure_performance
        def run_suite(...):
            ...
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        try:
            result = func(*args, **kwargs)
            execution_time = time.perf_counter() - start_time
            app_logger.debug(f"{func.__name__} executed in {execution_time:.3f}s")
            return result
        except Exception as e:
            execution_time = time.perf_counter() - start_time
            app_logger.error(f"{func.__name__} failed after {execution_time:.3f}s: {e}")
            raise

    return wrapper
