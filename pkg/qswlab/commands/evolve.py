import argparse
import logging

from ..repositories.results import ResultsRepository
from ..schemas import EnlargedSpaceLayout
from ..services.dynamics import evolve, limit_state, vertex_distribution
from ..services.generators import assemble_superoperator, build_generator
from ..services.nonmoralizing import enlarge
from ..utils.enums import ModelMode
from .common import (
    add_graph_argument,
    add_model_arguments,
    add_output_arguments,
    initial_state,
    parse_graph_arg,
    parse_grid,
)

logger = logging.getLogger(__name__)


def cmd_evolve(args: argparse.Namespace) -> int:
    """One CSV row per time: t followed by the probability of every vertex."""
    g = parse_graph_arg(args.graph)
    gen = build_generator(g, args.model, args.omega)
    F = assemble_superoperator(gen)
    rho0 = initial_state(gen, args.start)

    columns = ("t", *(f"p{v}" for v in range(g.n)))
    rows = []
    for t in args.times:
        dist = vertex_distribution(gen, evolve(F, rho0, t))
        rows.append({"t": float(t), **{f"p{v}": float(p) for v, p in enumerate(dist)}})
    if args.limit:
        rho_inf, horizon = limit_state(F, rho0)
        dist = vertex_distribution(gen, rho_inf)
        rows.append({"t": float(horizon), **{f"p{v}": float(p) for v, p in enumerate(dist)}})

    results = ResultsRepository(args.out)
    results.write_csv(columns, rows)
    if args.model == ModelMode.NONMORALIZING:
        results.write_sidecar(".layout.json", EnlargedSpaceLayout.from_space(enlarge(g)).model_dump_json(indent=2) + "\n")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("evolve", help="vertex distributions along a trajectory")
    add_graph_argument(parser)
    add_model_arguments(parser, spectral=False)
    add_output_arguments(parser)
    parser.add_argument("--start", default="0", help="start vertex index or a matrix file")
    parser.add_argument("--times", type=parse_grid, default=[0.0, 1.0, 2.0, 5.0, 10.0])
    parser.add_argument("--limit", action="store_true", help="append the empirical t -> infinity row")
    parser.set_defaults(handler=cmd_evolve)
