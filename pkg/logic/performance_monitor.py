"""Wall-clock timing of CLI operations and simulation runs."""
import threading
import time
from collections import defaultdict
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional

from logic.logging_config import configured_logger as logger


@dataclass
class OperationTiming:
    """One timed operation."""
    operation_name: str
    execution_time: float
    timestamp: datetime = field(default_factory=datetime.now)
    success: bool = True
    error_message: Optional[str] = None
    work_items: Optional[int] = None


class PerformanceMonitor:
    """Collect execution times per operation name (estimate, simulate, sweep runs)."""

    def __init__(self, max_history: int = 1000):
        """
        Initialize the performance monitor.

        Args:
            max_history: Maximum number of timings kept
        """
        self.max_history = max_history
        self.history: List[OperationTiming] = []
        self.operation_stats: Dict[str, List[float]] = defaultdict(list)
        # re-entrant: summaries call success_rate while holding the lock
        self.lock = threading.RLock()

    def record_operation(
        self,
        operation_name: str,
        execution_time: float,
        success: bool = True,
        error_message: Optional[str] = None,
        work_items: Optional[int] = None,
    ) -> None:
        with self.lock:
            self.history.append(
                OperationTiming(
                    operation_name=operation_name,
                    execution_time=execution_time,
                    success=success,
                    error_message=error_message,
                    work_items=work_items,
                )
            )
            if len(self.history) > self.max_history:
                self.history = self.history[-self.max_history:]
            if success:
                self.operation_stats[operation_name].append(execution_time)
            logger.debug(f"Timed {operation_name}: {execution_time:.4f}s, success={success}")

    def track(self, operation_name: str, work_items: Optional[int] = None) -> "PerformanceTimer":
        """
        Time a block with a context manager.

        Args:
            operation_name: Name of the operation being timed
            work_items: Number of items processed (ops, seeds), if known

        Returns:
            PerformanceTimer context manager
        """
        return PerformanceTimer(self, operation_name, work_items)

    def get_average_time(self, operation_name: str) -> Optional[float]:
        with self.lock:
            times = self.operation_stats.get(operation_name, [])
            return sum(times) / len(times) if times else None

    def get_success_rate(self, operation_name: str) -> float:
        """Share of successful runs of an operation, in percent."""
        with self.lock:
            runs = [m for m in self.history if m.operation_name == operation_name]
            if not runs:
                return 100.0
            return 100.0 * sum(1 for m in runs if m.success) / len(runs)

    def get_operation_summary(self) -> Dict[str, Dict[str, Any]]:
        with self.lock:
            summary = {}
            for operation_name, times in self.operation_stats.items():
                if times:
                    summary[operation_name] = {
                        "average_time": sum(times) / len(times),
                        "min_time": min(times),
                        "max_time": max(times),
                        "total_executions": len(times),
                        "success_rate": self.get_success_rate(operation_name),
                    }
            return summary

    def log_summary(self) -> None:
        for name, stats in sorted(self.get_operation_summary().items()):
            logger.info(
                f"{name}: {stats['total_executions']} runs, avg {stats['average_time']:.4f}s "
                f"(min {stats['min_time']:.4f}s, max {stats['max_time']:.4f}s)"
            )

    def clear_history(self) -> None:
        with self.lock:
            self.history.clear()
            self.operation_stats.clear()


class PerformanceTimer:
    """Context manager recording one operation on exit."""

    def __init__(self, monitor: PerformanceMonitor, operation_name: str, work_items: Optional[int] = None):
        self.monitor = monitor
        self.operation_name = operation_name
        self.work_items = work_items
        self.start_time: Optional[float] = None

    def __enter__(self) -> "PerformanceTimer":
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if self.start_time is None:
            return
        self.monitor.record_operation(
            operation_name=self.operation_name,
            execution_time=time.perf_counter() - self.start_time,
            success=exc_type is None,
            error_message=str(exc_val) if exc_type is not None else None,
            work_items=self.work_items,
        )


# Global performance monitor instance
performance_monitor = PerformanceMonitor()


def get_global_monitor() -> PerformanceMonitor:
    return performance_monitor
