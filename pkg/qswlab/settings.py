from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .utils.enums import ParentRow


class Settings(BaseSettings):
    """Process-wide numerical defaults; every field can be overridden with a
    QSWLAB_-prefixed environment variable or a line in `.env`."""

    model_config = SettingsConfigDict(env_prefix="QSWLAB_", env_file=".env", extra="ignore")

    threads: int = Field(default=1, ge=1)
    log_level: str = "INFO"

    tol_zero: float = Field(default=1e-8, gt=0)
    hermitian_tol: float = Field(default=1e-12, gt=0)
    state_tol: float = Field(default=1e-10, gt=0)
    positivity_tol: float = Field(default=1e-8, gt=0)
    trace_drift_tol: float = Field(default=1e-8, gt=0)

    # empirical stationarity: t doubles from t0 until the step changes rho by < tol
    stationarity_t0: float = Field(default=64.0, gt=0)
    stationarity_cap: float = Field(default=4096.0, gt=0)
    stationarity_tol: float = Field(default=1e-6, gt=0)

    max_resample_attempts: int = Field(default=100_000, ge=1)

    # omega_0 values above this are logged and counted as structural outliers
    omega_0_bound: float = Field(default=0.7, gt=0, le=1)

    nonmoralizing_parent_row: ParentRow = ParentRow.ONES


@lru_cache
def get_settings() -> Settings:
    return Settings()
