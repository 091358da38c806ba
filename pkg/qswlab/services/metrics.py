from collections import defaultdict
from threading import Lock
from typing import Any

# In-memory counters; survey grid points may record from worker threads.

COUNTERS = (
    "eigensolves",
    "expm_calls",
    "graphs_sampled",
    "graphs_rejected",
    "listener_errors",
    "null_space_discrepancies",
    "omega_0_bound_violations",
    "stationarity_cap_hits",
)

_counts: dict[str, int] = defaultdict(int)
_lock = Lock()


def record(metric_name: str, value: int = 1) -> None:
    with _lock:
        _counts[metric_name] += value


def snapshot() -> dict[str, Any]:
    with _lock:
        out = {name: _counts.get(name, 0) for name in COUNTERS}
        out.update({k: v for k, v in _counts.items() if k not in out})
    return out


def reset() -> None:
    with _lock:
        _counts.clear()
