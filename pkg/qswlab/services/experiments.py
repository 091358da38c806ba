"""Scripted studies: relaxation thresholds, random-graph surveys, periodicity
demos and digraph-structure observance."""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from ..errors import FilterExhausted, Unreachable
from ..models import DensityMatrix, Digraph
from ..schemas import (
    HistogramBin,
    ObservanceMetrics,
    PeriodicityReport,
    SurveyRow,
    ThresholdResult,
)
from ..settings import get_settings
from ..utils.enums import ModelMode, PeriodicityCase, SurveyFilter, Verdict
from . import metrics
from .constructors import circulant_chord_graph, fig6_graph
from .dynamics import evolve, limit_state, vertex_distribution
from .event_bus import event_bus
from .events import PROGRESS_TOPIC, GraphAccepted, GridPointDone
from .generators import assemble_superoperator, build_generator, build_global
from .graphs import passes_filter, sample_erdos_renyi, sink_distances
from .nonmoralizing import build_nonmoralizing, canonical_measurement, rotating_block
from .spectral import circulant_eigenvector, spectrum

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# tolerance on the monotonicity comparisons of the omega_0 sweep
_MONOTONE_EPS = 1e-9


def _run_tasks(fn: Callable[[T], R], items: Sequence[T], threads: int | None = None) -> list[R]:
    """Map fn over items, in parallel when allowed; results keep item order."""
    workers = min(threads or get_settings().threads, max(len(items), 1))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _graph_id(g: Digraph) -> str:
    return g.name or f"graph(n={g.n})"


# ------------------------------
# Relaxation threshold
# ------------------------------

def scan_omega_threshold(
    g: Digraph,
    model: ModelMode,
    omega_grid: Iterable[float],
    tol_zero: float | None = None,
) -> ThresholdResult:
    """Verdict at every grid point; omega_t is the top of the relaxing run that
    starts at the smallest sampled omega."""
    grid = sorted(float(w) for w in omega_grid)
    if not grid:
        raise ValueError("omega grid is empty")
    if grid[0] <= 0 or grid[-1] > 1:
        raise ValueError("threshold scans sample omega in (0, 1]")

    def one(indexed: tuple[int, float]):
        index, omega = indexed
        report = spectrum(
            assemble_superoperator(build_generator(g, model, omega)),
            tol_zero=tol_zero,
            cross_check=False,
            with_states=False,
        )
        event_bus.publish(PROGRESS_TOPIC, GridPointDone("threshold_scan", index, len(grid), omega))
        return report.verdict, report.null_dim

    outcomes = _run_tasks(one, list(enumerate(grid)))
    verdicts = [v for v, _ in outcomes]

    omega_t = None
    for omega, verdict in zip(grid, verdicts):
        if verdict != Verdict.RELAXING:
            break
        omega_t = omega
    logger.info(f"[SCAN] {_graph_id(g)} {model.value}: omega_t={omega_t}")
    return ThresholdResult(
        graph=_graph_id(g),
        model=model,
        omega_grid=grid,
        verdicts=verdicts,
        null_dims=[d for _, d in outcomes],
        omega_t=omega_t,
    )


# ------------------------------
# Random-graph surveys
# ------------------------------

def sample_accepted(
    n: int,
    p: float,
    directed: bool,
    survey_filter: SurveyFilter,
    seed: int,
) -> tuple[Digraph, int]:
    """First sample from a seeded stream that passes the filter, with the attempt count."""
    limit = get_settings().max_resample_attempts
    rng = np.random.default_rng(seed)
    for attempt in range(1, limit + 1):
        g = sample_erdos_renyi(n, p, directed=directed, rng=rng)
        metrics.record("graphs_sampled")
        if passes_filter(g, survey_filter):
            return g.with_name(f"er(n={n},p={p},seed={seed})"), attempt
        metrics.record("graphs_rejected")
    raise FilterExhausted(
        f"no {survey_filter.value} graph in {limit} samples of G({n}, {p}) from seed {seed}"
    )


def er_survey(
    n_list: Sequence[int],
    p: float,
    count: int,
    omega_grid: Sequence[float],
    model: ModelMode,
    survey_filter: SurveyFilter = SurveyFilter.WEAKLY_CONNECTED,
    seed: int = 0,
    directed: bool = True,
    tol_zero: float | None = None,
    include_timings: bool = False,
) -> list[SurveyRow]:
    """Classify `count` filtered samples per n at every omega.

    Task i (counted across all n) samples from seed + i, so the rows depend
    only on the arguments.
    """
    tasks = [(n, seed + i) for i, n in enumerate(n for n in n_list for _ in range(count))]

    def one(indexed: tuple[int, tuple[int, int]]) -> list[SurveyRow]:
        index, (n, task_seed) = indexed
        g, attempts = sample_accepted(n, p, directed, survey_filter, task_seed)
        event_bus.publish(PROGRESS_TOPIC, GraphAccepted(index, task_seed, attempts))
        rows = []
        for omega in omega_grid:
            started = time.perf_counter()
            report = spectrum(
                assemble_superoperator(build_generator(g, model, omega)),
                tol_zero=tol_zero,
                cross_check=False,
                with_states=False,
            )
            rows.append(SurveyRow(
                n=n,
                p=p,
                seed=task_seed,
                omega=float(omega),
                model=model,
                verdict=report.verdict,
                null_dim=report.null_dim,
                attempts=attempts,
                wall_time=time.perf_counter() - started if include_timings else None,
            ))
        event_bus.publish(PROGRESS_TOPIC, GridPointDone("er_survey", index, len(tasks)))
        return rows

    per_task = _run_tasks(one, list(enumerate(tasks)))
    rows = [row for chunk in per_task for row in chunk]
    relaxing = sum(r.verdict == Verdict.RELAXING for r in rows)
    logger.info(f"[SURVEY] {model.value}: {len(rows)} rows, {relaxing} relaxing")
    return rows


# ------------------------------
# Periodicity
# ------------------------------

def fig6_periodic_vector(space_dim: int, block_dim: int) -> np.ndarray:
    """Equal superposition of the rotating-block eigenvectors for +sqrt(3) and
    -sqrt(3), placed in the first vertex subspace."""
    vals, vecs = np.linalg.eigh(rotating_block(block_dim))
    up = vecs[:, int(np.argmin(np.abs(vals - np.sqrt(3))))]
    down = vecs[:, int(np.argmin(np.abs(vals + np.sqrt(3))))]
    psi = np.zeros(space_dim, dtype=complex)
    psi[:block_dim] = (up + down) / np.sqrt(2)
    return psi


def periodicity_demo(case: PeriodicityCase, omega: float, k: int = 2) -> PeriodicityReport:
    if case == PeriodicityCase.CIRCULANT:
        if not 0.0 < omega < 1.0:
            raise ValueError(f"the circulant demo needs omega in (0, 1), got {omega}")
        g = circulant_chord_graph(k)
        n = g.n
        F = assemble_superoperator(build_global(g, omega))
        psi = circulant_eigenvector(n, k) + circulant_eigenvector(n, 2 * k)
        rho0 = DensityMatrix(0.5 * np.outer(psi, psi.conj()))
        period = np.pi / (1.0 - omega)

        def measure(rho: DensityMatrix) -> float:
            return float(np.real(rho.matrix[0, 0]))
    else:
        if not 0.0 < omega <= 1.0:
            raise ValueError(f"the fig6 demo needs omega in (0, 1], got {omega}")
        nm = build_nonmoralizing(fig6_graph(), omega)
        F = assemble_superoperator(nm.to_generator())
        rho0 = DensityMatrix.pure(fig6_periodic_vector(nm.space.total_dim, nm.space.vertex_dims[0]))
        period = np.pi / (np.sqrt(3) * omega)

        def measure(rho: DensityMatrix) -> float:
            return float(canonical_measurement(nm.space, rho)[0])

    rho_half = evolve(F, rho0, period / 2)
    rho_full = evolve(F, rho0, period)
    deviation = float(np.linalg.norm(rho_full.matrix - rho0.matrix))
    logger.info(f"[PERIODIC] {case.value} omega={omega}: T={period:.6g} deviation={deviation:.3e}")
    return PeriodicityReport(
        case=case,
        omega=omega,
        k=k if case == PeriodicityCase.CIRCULANT else None,
        period=period,
        max_deviation=deviation,
        measure_t0=measure(rho0),
        measure_half=measure(rho_half),
    )


# ------------------------------
# Digraph-structure observance
# ------------------------------

def _distances_or_raise(g: Digraph) -> dict[int, int]:
    distances = sink_distances(g)
    missing = [v for v in range(g.n) if v not in distances]
    if missing:
        raise Unreachable(f"vertices {missing} reach no sink block of {_graph_id(g)}")
    return distances


def farthest_from_sinks(g: Digraph) -> int:
    """Smallest-index vertex with the largest sink distance."""
    distances = _distances_or_raise(g)
    return max(range(g.n), key=lambda v: (distances[v], -v))


def observance(
    g: Digraph,
    omega: float,
    start_vertex: int,
    model: ModelMode = ModelMode.NONMORALIZING,
    distances: dict[int, int] | None = None,
) -> ObservanceMetrics:
    """p_S and mu_S of the empirical limit reached from the start vertex."""
    distances = _distances_or_raise(g) if distances is None else distances
    if not 0 <= start_vertex < g.n:
        raise ValueError(f"start vertex {start_vertex} outside 0..{g.n - 1}")
    d = np.array([distances[v] for v in range(g.n)], dtype=float)

    if not d.any():
        return ObservanceMetrics(
            graph=_graph_id(g), model=model, omega=omega, start_vertex=start_vertex,
            p_sink=1.0, mu_sink=0.0, horizon=0.0,
        )

    gen = build_generator(g, model, omega)
    rho0 = DensityMatrix.basis(gen.dim, gen.vertex_subspaces[start_vertex].start)
    rho_inf, horizon = limit_state(assemble_superoperator(gen), rho0)
    dist = vertex_distribution(gen, rho_inf)
    p_sink = float(np.clip(dist[d == 0].sum(), 0.0, 1.0))
    mu_sink = float(max(np.dot(dist, d ** 2), 0.0))
    return ObservanceMetrics(
        graph=_graph_id(g), model=model, omega=omega, start_vertex=start_vertex,
        p_sink=p_sink, mu_sink=mu_sink, horizon=horizon,
    )


def observance_scan(
    g: Digraph,
    omega_grid: Sequence[float],
    start_vertex: int,
    model: ModelMode = ModelMode.NONMORALIZING,
) -> list[ObservanceMetrics]:
    distances = _distances_or_raise(g)

    def one(indexed: tuple[int, float]) -> ObservanceMetrics:
        index, omega = indexed
        result = observance(g, float(omega), start_vertex, model, distances)
        event_bus.publish(PROGRESS_TOPIC, GridPointDone("observance", index, len(omega_grid), float(omega)))
        return result

    return _run_tasks(one, list(enumerate(omega_grid)))


def descending_grid(step: float) -> list[float]:
    """1, 1 - step, ... down to the last value not below step."""
    count = int(np.floor(1.0 / step + _MONOTONE_EPS))
    return [round(1.0 - i * step, 12) for i in range(count)]


def find_omega_0(
    g: Digraph,
    step: float = 0.02,
    start_vertex: int | None = None,
    model: ModelMode = ModelMode.NONMORALIZING,
) -> ThresholdResult:
    """Sweep omega downward from 1 and stop at the first sample where p_S rises
    or mu_S falls against the previous one; that sample is omega_0."""
    distances = _distances_or_raise(g)
    start = farthest_from_sinks(g) if start_vertex is None else start_vertex
    sampled: list[float] = []
    p_values: list[float] = []
    mu_values: list[float] = []
    omega_0 = None
    for omega in descending_grid(step):
        m = observance(g, omega, start, model, distances)
        broke = bool(p_values) and (
            m.p_sink > p_values[-1] + _MONOTONE_EPS or m.mu_sink < mu_values[-1] - _MONOTONE_EPS
        )
        sampled.append(omega)
        p_values.append(m.p_sink)
        mu_values.append(m.mu_sink)
        omega_0 = omega
        if broke:
            break
    logger.info(f"[OMEGA0] {_graph_id(g)} start={start}: omega_0={omega_0}")
    return ThresholdResult(
        graph=_graph_id(g),
        model=model,
        omega_grid=sampled,
        p_sink=p_values,
        mu_sink=mu_values,
        omega_0=omega_0,
    )


def omega_0_bound_violations(
    results: Sequence[ThresholdResult],
    bound: float | None = None,
) -> list[ThresholdResult]:
    """Results whose omega_0 lies above the bound; each one is logged and counted."""
    limit = get_settings().omega_0_bound if bound is None else bound
    flagged = [r for r in results if r.omega_0 is not None and r.omega_0 > limit + _MONOTONE_EPS]
    for r in flagged:
        metrics.record("omega_0_bound_violations")
        logger.warning(f"[OMEGA0] {r.graph}: omega_0={r.omega_0} above {limit}")
    return flagged


def omega_0_bins(values: Sequence[float], bins: int = 10) -> list[HistogramBin]:
    """Equal-width bins over [0, 1]; each bin holds its lower edge, the last also holds 1."""
    # edges and values rounded alike so a grid value such as 0.6 opens its own bin
    edges = np.round(np.linspace(0.0, 1.0, bins + 1), 12)
    counts, _ = np.histogram(np.round(np.asarray(values, dtype=float), 12), bins=edges)
    return [
        HistogramBin(lower=float(edges[i]), upper=float(edges[i + 1]), count=int(counts[i]))
        for i in range(bins)
    ]


def omega_0_histogram(
    graphs: Sequence[Digraph],
    step: float = 0.02,
    bins: int = 10,
    start_vertex: int | None = None,
    model: ModelMode = ModelMode.NONMORALIZING,
) -> tuple[list[ThresholdResult], list[HistogramBin]]:
    def one(indexed: tuple[int, Digraph]) -> ThresholdResult:
        index, g = indexed
        result = find_omega_0(g, step=step, start_vertex=start_vertex, model=model)
        event_bus.publish(PROGRESS_TOPIC, GridPointDone("omega_0_histogram", index, len(graphs), result.omega_0))
        return result

    results = _run_tasks(one, list(enumerate(graphs)))
    omega_0_bound_violations(results)
    return results, omega_0_bins([r.omega_0 for r in results if r.omega_0 is not None], bins)
