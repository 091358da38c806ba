from typing import Annotated, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .models import EnlargedSpace, SpectralReport
from .utils.enums import (
    ExperimentKind,
    ModelMode,
    PeriodicityCase,
    SurveyFilter,
    Verdict,
)

# ------------------------------
# Graph sources
# ------------------------------

class NamedGraphSource(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: Literal["named"] = "named"
    name: str
    params: list[int] = Field(default_factory=list)


class EdgeListSource(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: Literal["edge_list"] = "edge_list"
    path: str


class ErdosRenyiSource(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: Literal["erdos_renyi"] = "erdos_renyi"
    n: int = Field(ge=1)
    p: float = Field(ge=0, le=1)
    directed: bool = True
    seed: int = 0


GraphSource = Annotated[
    Union[NamedGraphSource, EdgeListSource, ErdosRenyiSource],
    Field(discriminator="source"),
]

# ------------------------------
# Experiment configuration
# ------------------------------

class RunConfig(BaseModel):
    """One experiment run, read from a JSON document."""

    model_config = ConfigDict(extra="forbid")

    kind: ExperimentKind
    graph: Optional[GraphSource] = None
    model: ModelMode = ModelMode.LOCAL
    omega_grid: list[float] = Field(default_factory=lambda: [0.5], min_length=1)

    # survey / sampling
    n_list: list[int] = Field(default_factory=list)
    p: float = Field(default=0.5, ge=0, le=1)
    count: int = Field(default=20, ge=0)
    directed: bool = True
    filter: SurveyFilter = SurveyFilter.WEAKLY_CONNECTED
    seed: int = 0

    # periodicity
    case: Optional[PeriodicityCase] = None
    k: int = Field(default=2, ge=2)

    # observance / omega_0
    start_vertex: Optional[int] = Field(default=None, ge=0)
    step: float = Field(default=0.02, gt=0, le=1)
    bins: int = Field(default=10, ge=1)

    tol_zero: Optional[float] = Field(default=None, gt=0)
    include_timings: bool = False
    out: Optional[str] = None
    svg: Optional[str] = None

    @field_validator("omega_grid")
    @classmethod
    def validate_omega_grid(cls, v):
        for omega in v:
            if not 0.0 <= omega <= 1.0:
                raise ValueError(f"omega {omega} lies outside [0, 1]")
        return v

    @field_validator("n_list")
    @classmethod
    def validate_n_list(cls, v):
        if any(n < 1 for n in v):
            raise ValueError("every n must be positive")
        return v

    @model_validator(mode="after")
    def validate_kind(self):
        if self.kind == ExperimentKind.THRESHOLD_SCAN and self.graph is None and not self.n_list:
            raise ValueError("threshold_scan needs a graph or an n_list of bidirected path sizes")
        if self.kind == ExperimentKind.ER_SURVEY and not self.n_list:
            raise ValueError("er_survey needs a non-empty n_list")
        if self.kind == ExperimentKind.PERIODICITY and self.case is None:
            raise ValueError("periodicity needs a case")
        if self.kind == ExperimentKind.OBSERVANCE and self.graph is None:
            raise ValueError("observance needs a graph")
        if self.kind == ExperimentKind.OMEGA_0_HISTOGRAM and self.graph is None and not self.n_list:
            raise ValueError("omega_0_histogram needs a graph or an n_list of random graph sizes")
        return self

# ------------------------------
# Reports and rows
# ------------------------------

class SpectralReportOut(BaseModel):
    graph: str = ""
    model: Optional[ModelMode] = None
    omega: Optional[float] = None
    eigenvalues: list[tuple[float, float]]
    null_dim: int
    has_imaginary_pair: bool
    verdict: Verdict
    tol_zero: float
    scale: float
    singular_null_dim: Optional[int] = None
    stationary_states: int = 0

    @classmethod
    def from_report(
        cls,
        report: SpectralReport,
        graph: str = "",
        model: Optional[ModelMode] = None,
        omega: Optional[float] = None,
    ) -> "SpectralReportOut":
        order = np.lexsort((report.eigenvalues.imag, report.eigenvalues.real))
        return cls(
            graph=graph,
            model=model,
            omega=omega,
            eigenvalues=[(float(z.real), float(z.imag)) for z in report.eigenvalues[order]],
            null_dim=report.null_dim,
            has_imaginary_pair=report.has_imaginary_pair,
            verdict=report.verdict,
            tol_zero=report.tol_zero,
            scale=report.scale,
            singular_null_dim=report.singular_null_dim,
            stationary_states=len(report.stationary_basis),
        )


class ThresholdResult(BaseModel):
    graph: str
    model: ModelMode
    omega_grid: list[float]
    verdicts: list[Verdict] = Field(default_factory=list)
    null_dims: list[int] = Field(default_factory=list)
    p_sink: list[float] = Field(default_factory=list)
    mu_sink: list[float] = Field(default_factory=list)
    omega_t: Optional[float] = None
    omega_0: Optional[float] = None


class ObservanceMetrics(BaseModel):
    graph: str
    model: ModelMode
    omega: float
    start_vertex: int
    p_sink: float = Field(ge=0, le=1)
    mu_sink: float = Field(ge=0)
    horizon: float = Field(ge=0)


class SurveyRow(BaseModel):
    n: int
    p: float
    seed: int
    omega: float
    model: ModelMode
    verdict: Verdict
    null_dim: int
    attempts: int = 1
    wall_time: Optional[float] = None


class PeriodicityReport(BaseModel):
    case: PeriodicityCase
    omega: float
    k: Optional[int] = None
    period: float
    max_deviation: float
    # <0|rho|0> (circulant) or Pi(v0) (fig6) at t = 0 and t = period / 2
    measure_t0: float
    measure_half: float


class HistogramBin(BaseModel):
    lower: float
    upper: float
    count: int


class GraphSummary(BaseModel):
    name: str
    n: int
    arcs: int
    connectivity: str
    blocks: list[list[int]]
    sink_blocks: list[list[int]]
    moral_added_arcs: list[tuple[int, int]]

    def describe(self) -> str:
        label = self.connectivity.replace("_", " ")
        return f"{label}, {len(self.blocks)} SCCs, {len(self.sink_blocks)} sinks"


class EnlargedSpaceLayout(BaseModel):
    vertex_dims: list[int]
    offsets: list[int]
    total_dim: int

    @classmethod
    def from_space(cls, space: EnlargedSpace) -> "EnlargedSpaceLayout":
        return cls(
            vertex_dims=list(space.vertex_dims),
            offsets=list(space.offsets),
            total_dim=space.total_dim,
        )
