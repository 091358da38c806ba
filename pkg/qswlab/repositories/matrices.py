"""Plain-text complex matrices for exchanging states and superoperators.

First line "rows cols", then one line per row of space-separated "re,im" pairs.
"""
from pathlib import Path

import numpy as np

from ..errors import GraphParseError


class MatrixRepository:
    def __init__(self, root: Path | str | None = None):
        self.root = Path(root) if root is not None else None

    def _path(self, path: Path | str) -> Path:
        path = Path(path)
        return self.root / path if self.root is not None and not path.is_absolute() else path

    def dump(self, matrix: np.ndarray) -> str:
        m = np.atleast_2d(np.asarray(matrix, dtype=complex))
        lines = [f"{m.shape[0]} {m.shape[1]}"]
        for row in m:
            lines.append(" ".join(f"{z.real!r},{z.imag!r}" for z in (complex(x) for x in row)))
        return "\n".join(lines) + "\n"

    def parse(self, text: str) -> np.ndarray:
        lines = [(i, raw.strip()) for i, raw in enumerate(text.splitlines(), start=1) if raw.strip()]
        if not lines:
            raise GraphParseError(1, "missing 'rows cols' header")
        lineno, header = lines[0]
        try:
            rows, cols = (int(x) for x in header.split())
        except ValueError:
            raise GraphParseError(lineno, "header must read 'rows cols'") from None
        if len(lines) - 1 != rows:
            raise GraphParseError(lines[-1][0], f"expected {rows} rows, found {len(lines) - 1}")
        out = np.zeros((rows, cols), dtype=complex)
        for r, (lineno, body) in enumerate(lines[1:]):
            tokens = body.split()
            if len(tokens) != cols:
                raise GraphParseError(lineno, f"expected {cols} entries, found {len(tokens)}")
            for c, token in enumerate(tokens):
                try:
                    re, im = token.split(",")
                    out[r, c] = complex(float(re), float(im))
                except ValueError:
                    raise GraphParseError(lineno, f"entry '{token}' is not a 're,im' pair") from None
        return out

    def read(self, path: Path | str) -> np.ndarray:
        return self.parse(self._path(path).read_text(encoding="utf-8"))

    def write(self, matrix: np.ndarray, path: Path | str) -> Path:
        target = self._path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.dump(matrix), encoding="utf-8")
        return target
