"""Edge-list text format.

    # name: <optional graph name>
    n m directed|undirected
    u v [re,im]
    ...

Vertices are 0-indexed. Undirected files list each edge once and it becomes
two opposite arcs. The optional third column is the complex arc weight.
"""
from pathlib import Path

from ..errors import GraphParseError, InvalidGraph
from ..models import Digraph

NAME_PREFIX = "# name:"
KINDS = ("directed", "undirected")


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(line, f"{what} must be an integer, got '{token}'") from None


def _parse_weight(token: str, line: int) -> complex:
    parts = token.split(",")
    if len(parts) != 2:
        raise GraphParseError(line, f"weight must be written 're,im', got '{token}'")
    try:
        c = complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise GraphParseError(line, f"weight components must be numbers, got '{token}'") from None
    if c == 0:
        raise GraphParseError(line, "arc weight must be nonzero")
    return c


def _format_weight(c: complex) -> str:
    return f"{c.real!r},{c.imag!r}"


class EdgeListRepository:
    def __init__(self, root: Path | str | None = None):
        self.root = Path(root) if root is not None else None

    def _path(self, path: Path | str) -> Path:
        path = Path(path)
        return self.root / path if self.root is not None and not path.is_absolute() else path

    def parse(self, text: str) -> Digraph:
        name = ""
        header = None
        arcs: list[tuple[int, int]] = []
        weights: dict[tuple[int, int], complex] = {}
        seen: set[tuple[int, int]] = set()
        n = m = 0
        directed = True
        entries = 0
        last_line = 0

        for lineno, raw in enumerate(text.splitlines(), start=1):
            last_line = lineno
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if line.startswith(NAME_PREFIX) and header is None:
                    name = line[len(NAME_PREFIX):].strip()
                continue
            tokens = line.split()

            if header is None:
                if len(tokens) not in (2, 3):
                    raise GraphParseError(lineno, "header must read 'n m [directed|undirected]'")
                n = _parse_int(tokens[0], lineno, "vertex count")
                m = _parse_int(tokens[1], lineno, "edge count")
                kind = tokens[2] if len(tokens) == 3 else "directed"
                if kind not in KINDS:
                    raise GraphParseError(lineno, f"graph kind must be directed or undirected, got '{kind}'")
                if n < 1 or m < 0:
                    raise GraphParseError(lineno, f"invalid sizes n={n}, m={m}")
                directed = kind == "directed"
                header = lineno
                continue

            if len(tokens) not in (2, 3):
                raise GraphParseError(lineno, f"expected 'u v [re,im]', got {len(tokens)} fields")
            u = _parse_int(tokens[0], lineno, "source vertex")
            v = _parse_int(tokens[1], lineno, "target vertex")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(lineno, f"vertex out of range 0..{n - 1}")
            if u == v:
                raise GraphParseError(lineno, f"self-loop at vertex {u}")
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in seen:
                raise GraphParseError(lineno, f"duplicate {'arc' if directed else 'edge'} {u} {v}")
            seen.add(key)
            entries += 1
            if entries > m:
                raise GraphParseError(lineno, f"more than the {m} declared {'arcs' if directed else 'edges'}")

            c = _parse_weight(tokens[2], lineno) if len(tokens) == 3 else 1
            arcs.append((u, v))
            if c != 1:
                weights[(u, v)] = c
            if not directed:
                arcs.append((v, u))
                if c != 1:
                    weights[(v, u)] = c

        if header is None:
            raise GraphParseError(max(last_line, 1), "missing header line")
        if entries != m:
            raise GraphParseError(last_line + 1, f"expected {m} entries, found {entries}")
        try:
            return Digraph.from_arcs(n, arcs, weights=weights, name=name)
        except InvalidGraph as ex:
            raise GraphParseError(last_line, str(ex)) from None

    def dump(self, g: Digraph) -> str:
        undirected = g.is_symmetric()
        if undirected:
            entries = [(v, w) for v, w in g.arcs if v < w]
        else:
            entries = list(g.arcs)
        lines = []
        if g.name:
            lines.append(f"{NAME_PREFIX} {g.name}")
        lines.append(f"{g.n} {len(entries)} {'undirected' if undirected else 'directed'}")
        for v, w in entries:
            c = g.weight(v, w)
            lines.append(f"{v} {w}" if c == 1 else f"{v} {w} {_format_weight(c)}")
        return "\n".join(lines) + "\n"

    def read(self, path: Path | str) -> Digraph:
        return self.parse(self._path(path).read_text(encoding="utf-8"))

    def write(self, g: Digraph, path: Path | str) -> Path:
        target = self._path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.dump(g), encoding="utf-8")
        return target
