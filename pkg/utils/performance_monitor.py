# utils/performance_monitor.py
import csv
import os
import threading
import time
from datetime import datetime
from typing import Any, Dict, List, Optional


class PerformanceMonitor:
    """Wall-clock timings of sweep checks, saved as CSV next to the sweep report"""

    def __init__(self, output_file: str):
        self.metrics: List[Dict[str, Any]] = []
        self.output_file = output_file
        self._lock = threading.Lock()

    def ensure_directory(self):
        """Ensure the directory exists"""
        directory = os.path.dirname(self.output_file)
        if directory:
            os.makedirs(directory, exist_ok=True)

    def start_timer(self, name: str) -> Dict[str, Any]:
        """Start timing an operation"""
        return {
            "name": name,
            "start": time.perf_counter(),
            "timestamp": datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
        }

    def end_timer(self, timer: Dict[str, Any], success: bool = True,
                  metadata: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """End timing and record the metric"""
        metric = {
            "name": timer["name"],
            "seconds": round(time.perf_counter() - timer["start"], 6),
            "success": success,
            "timestamp": timer["timestamp"],
        }
        if metadata:
            metric.update(metadata)
        with self._lock:
            self.metrics.append(metric)
        return metric

    def save_metrics(self) -> Optional[str]:
        """Write every recorded metric; returns the path, or None when nothing was timed"""
        with self._lock:
            metrics = list(self.metrics)
        if not metrics:
            return None
        fieldnames = set()
        for metric in metrics:
            fieldnames.update(metric.keys())
        self.ensure_directory()
        with open(self.output_file, 'w', newline='') as csvfile:
            writer = csv.DictWriter(csvfile, fieldnames=sorted(fieldnames))
            writer.writeheader()
            writer.writerows(metrics)
        return self.output_file
