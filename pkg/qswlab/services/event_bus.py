import logging
from collections import defaultdict
from contextlib import contextmanager
from threading import Lock
from typing import Any, Callable, Iterator

from . import metrics

logger = logging.getLogger(__name__)

Listener = Callable[[Any], None]


class ProgressBus:
    """Synchronous in-process pub/sub for experiment progress.

    Survey workers publish from pool threads, so listeners must be thread-safe.
    A listener that raises is logged and counted, never propagated to the
    experiment.
    """

    def __init__(self):
        self._listeners: dict[str, list[Listener]] = defaultdict(list)
        self._lock = Lock()

    def subscribe(self, topic: str, listener: Listener) -> Callable[[], None]:
        with self._lock:
            self._listeners[topic].append(listener)
        return lambda: self._drop(topic, listener)

    def _drop(self, topic: str, listener: Listener) -> None:
        with self._lock:
            listeners = self._listeners.get(topic)
            if listeners and listener in listeners:
                listeners.remove(listener)
            if not listeners:
                self._listeners.pop(topic, None)

    @contextmanager
    def listening(self, topic: str, listener: Listener) -> Iterator[None]:
        unsubscribe = self.subscribe(topic, listener)
        try:
            yield
        finally:
            unsubscribe()

    def subscriber_count(self, topic: str) -> int:
        with self._lock:
            return len(self._listeners.get(topic, ()))

    def publish(self, topic: str, event: Any) -> None:
        with self._lock:
            listeners = list(self._listeners.get(topic, ()))
        for listener in listeners:
            try:
                listener(event)
            except Exception as ex:
                metrics.record("listener_errors")
                logger.warning(f"[PROGRESS] listener failed on {topic}: {ex}")


event_bus = ProgressBus()
