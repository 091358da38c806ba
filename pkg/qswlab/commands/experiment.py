import argparse
import logging
from pathlib import Path

from ..repositories.results import (
    HISTOGRAM_COLUMNS,
    OBSERVANCE_COLUMNS,
    OMEGA_0_COLUMNS,
    PERIODICITY_COLUMNS,
    SURVEY_COLUMNS,
    THRESHOLD_COLUMNS,
    ResultsRepository,
    csv_text,
)
from ..schemas import RunConfig
from ..services import experiments, plots
from ..services.constructors import bidirected_path
from ..utils.enums import ExperimentKind
from .common import graph_from_source

logger = logging.getLogger(__name__)


def load_config(path: str) -> RunConfig:
    return RunConfig.model_validate_json(Path(path).read_text(encoding="utf-8"))


def _threshold_scan(cfg: RunConfig, results: ResultsRepository) -> None:
    if cfg.graph is not None:
        g = graph_from_source(cfg.graph)
        graphs = [(g.n, g)]
    else:
        graphs = [(n, bidirected_path(n)) for n in cfg.n_list]
    rows = []
    thresholds = []
    for size, g in graphs:
        res = experiments.scan_omega_threshold(g, cfg.model, cfg.omega_grid, tol_zero=cfg.tol_zero)
        thresholds.append((size, res.omega_t))
        for omega, verdict, null_dim in zip(res.omega_grid, res.verdicts, res.null_dims):
            rows.append({
                "graph": res.graph,
                "omega": omega,
                "verdict": verdict,
                "null_dim": null_dim,
                "omega_t": res.omega_t,
            })
    results.write_csv(THRESHOLD_COLUMNS, rows)
    if cfg.svg:
        results.write_svg(plots.threshold_plot_svg(thresholds), cfg.svg)


def _er_survey(cfg: RunConfig, results: ResultsRepository) -> None:
    rows = experiments.er_survey(
        cfg.n_list,
        cfg.p,
        cfg.count,
        cfg.omega_grid,
        cfg.model,
        survey_filter=cfg.filter,
        seed=cfg.seed,
        directed=cfg.directed,
        tol_zero=cfg.tol_zero,
        include_timings=cfg.include_timings,
    )
    columns = SURVEY_COLUMNS + ("wall_time",) if cfg.include_timings else SURVEY_COLUMNS
    results.write_csv(columns, rows)


def _periodicity(cfg: RunConfig, results: ResultsRepository) -> None:
    reports = [experiments.periodicity_demo(cfg.case, omega, k=cfg.k) for omega in cfg.omega_grid]
    results.write_csv(PERIODICITY_COLUMNS, reports)


def _observance(cfg: RunConfig, results: ResultsRepository) -> None:
    g = graph_from_source(cfg.graph)
    start = experiments.farthest_from_sinks(g) if cfg.start_vertex is None else cfg.start_vertex
    rows = experiments.observance_scan(g, cfg.omega_grid, start, model=cfg.model)
    results.write_csv(OBSERVANCE_COLUMNS, rows)
    if cfg.svg:
        results.write_svg(plots.observance_plot_svg(rows), cfg.svg)


def _omega_0_histogram(cfg: RunConfig, results: ResultsRepository) -> None:
    if cfg.graph is not None:
        graphs = [graph_from_source(cfg.graph)]
    else:
        tasks = [n for n in cfg.n_list for _ in range(cfg.count)]
        graphs = [
            experiments.sample_accepted(n, cfg.p, cfg.directed, cfg.filter, cfg.seed + i)[0]
            for i, n in enumerate(tasks)
        ]
    per_graph, bins = experiments.omega_0_histogram(
        graphs, step=cfg.step, bins=cfg.bins, start_vertex=cfg.start_vertex, model=cfg.model
    )
    results.write_csv(HISTOGRAM_COLUMNS, bins)
    results.write_sidecar(
        ".omega_0.csv",
        csv_text(OMEGA_0_COLUMNS, [
            {"graph": r.graph, "omega_0": r.omega_0, "samples": len(r.omega_grid)} for r in per_graph
        ]),
    )
    if cfg.svg:
        results.write_svg(plots.histogram_svg(bins), cfg.svg)


DISPATCH = {
    ExperimentKind.THRESHOLD_SCAN: _threshold_scan,
    ExperimentKind.ER_SURVEY: _er_survey,
    ExperimentKind.PERIODICITY: _periodicity,
    ExperimentKind.OBSERVANCE: _observance,
    ExperimentKind.OMEGA_0_HISTOGRAM: _omega_0_histogram,
}


def cmd_experiment(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    overrides = {}
    if args.out:
        overrides["out"] = args.out
    if args.svg:
        overrides["svg"] = args.svg
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        cfg = cfg.model_copy(update=overrides)
    logger.info(f"[CLI] experiment {cfg.kind.value} (seed={cfg.seed})")
    DISPATCH[cfg.kind](cfg, ResultsRepository(cfg.out))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("experiment", help="run an experiment described by a JSON config")
    parser.add_argument("config", help="path to the RunConfig JSON document")
    parser.add_argument("--out", default=None, help="CSV output path (overrides the config)")
    parser.add_argument("--svg", default=None, help="SVG plot path (overrides the config)")
    parser.add_argument("--seed", type=int, default=None, help="base seed (overrides the config)")
    parser.set_defaults(handler=cmd_experiment)
