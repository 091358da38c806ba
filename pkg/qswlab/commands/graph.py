import argparse
import logging

from ..models import Digraph
from ..repositories.edge_lists import EdgeListRepository
from ..repositories.results import ResultsRepository
from ..schemas import GraphSummary
from ..services.graphs import condense, connectivity, moral_closure
from .common import add_graph_argument, add_output_arguments, parse_graph_arg

logger = logging.getLogger(__name__)


def summarize(g: Digraph) -> GraphSummary:
    cond = condense(g)
    added = sorted(set(moral_closure(g).arcs) - set(g.arcs))
    return GraphSummary(
        name=g.name,
        n=g.n,
        arcs=len(g.arcs),
        connectivity=connectivity(g).value,
        blocks=[list(b) for b in cond.blocks],
        sink_blocks=[list(b) for b in cond.sink_blocks],
        moral_added_arcs=added,
    )


def cmd_graph(args: argparse.Namespace) -> int:
    g = parse_graph_arg(args.graph)
    summary = summarize(g)
    if args.write_edges:
        EdgeListRepository().write(g, args.write_edges)
        logger.info(f"[CLI] wrote edge list to {args.write_edges}")
    if not args.json:
        print(f"{summary.name or 'graph'}: {summary.n} vertices, {summary.arcs} arcs")
        print(summary.describe())
        print(f"moral closure adds {len(summary.moral_added_arcs)} arcs")
    if args.json or args.out:
        ResultsRepository(args.out).write_json(summary)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("graph", help="connectivity, condensation, sinks and moral closure")
    add_graph_argument(parser)
    add_output_arguments(parser)
    parser.add_argument("--json", action="store_true", help="print only the JSON summary")
    parser.add_argument("--write-edges", default=None, help="also save the graph as an edge list")
    parser.set_defaults(handler=cmd_graph)
