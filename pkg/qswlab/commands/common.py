import argparse
import logging
from pathlib import Path

import numpy as np

from ..errors import InvalidGraph, InvalidState
from ..models import DensityMatrix, Digraph, QswGenerator
from ..repositories.edge_lists import EdgeListRepository
from ..repositories.matrices import MatrixRepository
from ..schemas import EdgeListSource, ErdosRenyiSource, NamedGraphSource
from ..services.constructors import build_named
from ..services.graphs import sample_erdos_renyi
from ..settings import get_settings
from ..utils.enums import ModelMode

logger = logging.getLogger(__name__)


# ------------------------------
# Graph sources
# ------------------------------

def graph_from_source(source: NamedGraphSource | EdgeListSource | ErdosRenyiSource) -> Digraph:
    if isinstance(source, NamedGraphSource):
        return build_named(source.name, *source.params)
    if isinstance(source, EdgeListSource):
        return EdgeListRepository().read(source.path)
    g = sample_erdos_renyi(source.n, source.p, directed=source.directed, seed=source.seed)
    kind = "directed" if source.directed else "undirected"
    return g.with_name(f"er(n={source.n},p={source.p},{kind},seed={source.seed})")


def parse_graph_arg(text: str) -> Digraph:
    """--graph value: an edge-list path, `er:n,p,seed[,undirected]`, or `name[:p1,p2]`."""
    if Path(text).is_file():
        return graph_from_source(EdgeListSource(path=text))
    name, _, params = text.partition(":")
    if name == "er":
        fields = params.split(",")
        if len(fields) not in (3, 4):
            raise InvalidGraph("random graphs are written er:n,p,seed[,undirected]")
        try:
            source = ErdosRenyiSource(
                n=int(fields[0]),
                p=float(fields[1]),
                seed=int(fields[2]),
                directed=not (len(fields) == 4 and fields[3] == "undirected"),
            )
        except ValueError as ex:
            raise InvalidGraph(f"bad random graph parameters '{params}': {ex}") from None
        return graph_from_source(source)
    try:
        ints = [int(p) for p in params.split(",")] if params else []
    except ValueError:
        raise InvalidGraph(f"graph parameters must be integers, got '{params}'") from None
    return graph_from_source(NamedGraphSource(name=name, params=ints))


# ------------------------------
# Grids
# ------------------------------

def parse_grid(text: str) -> list[float]:
    """'a,b,c' or an inclusive range 'start:stop:step'."""
    text = text.strip()
    if ":" in text:
        try:
            start, stop, step = (float(x) for x in text.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"range must read start:stop:step, got '{text}'") from None
        if step <= 0 or stop < start:
            raise argparse.ArgumentTypeError(f"empty or backwards range '{text}'")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated numbers, got '{text}'") from None
    if not values:
        raise argparse.ArgumentTypeError("grid is empty")
    return values


def omega_values(args: argparse.Namespace) -> list[float]:
    if getattr(args, "omega_grid", None):
        return args.omega_grid
    return [args.omega]


# ------------------------------
# States
# ------------------------------

def initial_state(gen: QswGenerator, start: str) -> DensityMatrix:
    """A vertex index (first basis state of its subspace) or a matrix file."""
    if start.isdigit():
        v = int(start)
        if v >= gen.n_vertices:
            raise InvalidState(f"start vertex {v} outside 0..{gen.n_vertices - 1}")
        return DensityMatrix.basis(gen.dim, gen.vertex_subspaces[v].start)
    s = get_settings()
    rho = DensityMatrix(MatrixRepository().read(start))
    return rho.validate(s.state_tol, s.positivity_tol)


# ------------------------------
# Shared arguments
# ------------------------------

def add_graph_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", required=True, help="edge-list path, er:n,p,seed[,undirected] or name[:params]")


def add_model_arguments(parser: argparse.ArgumentParser, spectral: bool = True) -> None:
    parser.add_argument("--model", type=ModelMode, choices=list(ModelMode), default=ModelMode.LOCAL)
    parser.add_argument("--omega", type=float, default=0.5)
    if spectral:
        parser.add_argument("--omega-grid", type=parse_grid, default=None, help="'a,b,c' or start:stop:step")
        parser.add_argument("--tol", type=float, default=None, help="relative zero tolerance for eigenvalues")


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="output file (stdout when omitted)")
