import argparse
import logging

from ..repositories.matrices import MatrixRepository
from ..repositories.results import ResultsRepository
from ..schemas import SpectralReportOut
from ..services.generators import assemble_superoperator, build_generator
from ..services.spectral import spectrum
from .common import (
    add_graph_argument,
    add_model_arguments,
    add_output_arguments,
    omega_values,
    parse_graph_arg,
)

logger = logging.getLogger(__name__)


def cmd_classify(args: argparse.Namespace) -> int:
    g = parse_graph_arg(args.graph)
    reports = []
    for omega in omega_values(args):
        F = assemble_superoperator(build_generator(g, args.model, omega))
        if args.dump_superoperator:
            MatrixRepository().write(F.matrix, args.dump_superoperator)
        report = spectrum(F, tol_zero=args.tol)
        logger.info(f"[CLASSIFY] {g.name or 'graph'} {args.model.value} omega={omega}: {report.verdict.value}")
        reports.append(SpectralReportOut.from_report(report, graph=g.name, model=args.model, omega=omega))
    ResultsRepository(args.out).write_json(reports[0] if len(reports) == 1 else reports)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="spectral verdict of the superoperator per omega")
    add_graph_argument(parser)
    add_model_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--dump-superoperator", default=None, help="write F in the matrix text format")
    parser.set_defaults(handler=cmd_classify)
