from dataclasses import dataclass

PROGRESS_TOPIC = "experiments.progress"

@dataclass
class GridPointDone:
    experiment: str
    index: int
    total: int
    omega: float | None = None

@dataclass
class GraphAccepted:
    task: int
    seed: int
    attempts: int
