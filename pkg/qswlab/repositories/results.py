"""CSV, JSON and SVG emission.

Column orders are fixed per output so files from equal seeds and configs are
byte-identical.
"""
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Iterable, Sequence

from pydantic import BaseModel

SURVEY_COLUMNS = ("n", "p", "seed", "omega", "model", "verdict", "null_dim", "attempts")
THRESHOLD_COLUMNS = ("graph", "omega", "verdict", "null_dim", "omega_t")
OBSERVANCE_COLUMNS = ("graph", "model", "omega", "start_vertex", "p_sink", "mu_sink", "horizon")
OMEGA_0_COLUMNS = ("graph", "omega_0", "samples")
HISTOGRAM_COLUMNS = ("lower", "upper", "count")
PERIODICITY_COLUMNS = ("case", "omega", "k", "period", "max_deviation", "measure_t0", "measure_half")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if hasattr(value, "value"):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_text(columns: Sequence[str], rows: Iterable[dict | BaseModel]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        data = row.model_dump() if isinstance(row, BaseModel) else row
        writer.writerow([_cell(data.get(c)) for c in columns])
    return buf.getvalue()


def json_text(payload: BaseModel | list | dict) -> str:
    if isinstance(payload, BaseModel):
        return payload.model_dump_json(indent=2) + "\n"
    if isinstance(payload, list):
        payload = [p.model_dump(mode="json") if isinstance(p, BaseModel) else p for p in payload]
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


class ResultsRepository:
    """Writes to `out` when given, otherwise to stdout."""

    def __init__(self, out: Path | str | None = None):
        self.out = Path(out) if out else None

    def _emit(self, text: str, path: Path | None) -> Path | None:
        if path is None:
            sys.stdout.write(text)
            return None
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return path

    def write_csv(self, columns: Sequence[str], rows: Iterable[dict | BaseModel]) -> Path | None:
        return self._emit(csv_text(columns, rows), self.out)

    def write_json(self, payload: BaseModel | list | dict) -> Path | None:
        return self._emit(json_text(payload), self.out)

    def write_sidecar(self, suffix: str, text: str) -> Path | None:
        """Companion file next to `out` (skipped when writing to stdout)."""
        if self.out is None:
            return None
        return self._emit(text, self.out.with_name(self.out.stem + suffix))

    @staticmethod
    def write_svg(svg: str, path: Path | str) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(svg, encoding="utf-8")
        return target
