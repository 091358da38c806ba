import logging
from typing import Iterable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from ..errors import DimensionMismatch, NumericalBreakdown
from ..models import DensityMatrix, QswGenerator, Superoperator, unvecc, vecc
from ..settings import get_settings
from . import metrics
from .generators import apply_generator

logger = logging.getLogger(__name__)


def _as_matrix(rho) -> np.ndarray:
    return np.asarray(getattr(rho, "matrix", rho), dtype=complex)


def _finish(F: Superoperator, vec: np.ndarray, reference_trace: complex, t: float) -> DensityMatrix:
    rho = unvecc(vec, F.dim)
    rho = (rho + rho.conj().T) / 2
    drift = abs(np.trace(rho) - reference_trace)
    if drift > get_settings().trace_drift_tol:
        raise NumericalBreakdown(f"trace drifted by {drift:.3e} at t={t}")
    return DensityMatrix(rho)


def evolve(F: Superoperator, rho0, t: float) -> DensityMatrix:
    """rho_t with vecc(rho_t) = exp(tF) vecc(rho0)."""
    m0 = _as_matrix(rho0)
    if m0.shape != (F.dim, F.dim):
        raise DimensionMismatch(f"state of shape {m0.shape} for a superoperator on dimension {F.dim}")
    if t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t}")
    if t == 0:
        return DensityMatrix(m0.copy())
    propagator = expm(t * F.matrix)
    metrics.record("expm_calls")
    return _finish(F, propagator @ vecc(m0), np.trace(m0), t)


def evolve_many(F: Superoperator, rho0, times: Iterable[float]) -> list[DensityMatrix]:
    return [evolve(F, rho0, float(t)) for t in times]


def limit_state(F: Superoperator, rho0) -> tuple[DensityMatrix, float]:
    """Empirical t -> infinity state.

    t starts at stationarity_t0 and doubles (by squaring the propagator) until
    one doubling moves the state by less than stationarity_tol in Frobenius
    norm, or t would exceed stationarity_cap.
    """
    s = get_settings()
    m0 = _as_matrix(rho0)
    if m0.shape != (F.dim, F.dim):
        raise DimensionMismatch(f"state of shape {m0.shape} for a superoperator on dimension {F.dim}")
    v0 = vecc(m0)
    t = s.stationarity_t0
    propagator = expm(t * F.matrix)
    metrics.record("expm_calls")
    current = propagator @ v0
    while 2 * t <= s.stationarity_cap:
        propagator = propagator @ propagator
        t *= 2
        following = propagator @ v0
        if np.linalg.norm(following - current) < s.stationarity_tol:
            return _finish(F, following, np.trace(m0), t), t
        current = following
    metrics.record("stationarity_cap_hits")
    logger.warning(f"[EVOLVE] no empirical stationarity by t={t}; using the state at the cap")
    return _finish(F, current, np.trace(m0), t), t


def integrate_master_equation(
    gen: QswGenerator,
    rho0,
    t: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> DensityMatrix:
    """Adaptive Runge-Kutta (DOP853) integration of d rho/dt = M[rho]."""
    m0 = _as_matrix(rho0)
    if m0.shape != (gen.dim, gen.dim):
        raise DimensionMismatch(f"state of shape {m0.shape} for a generator of dimension {gen.dim}")
    if t == 0:
        return DensityMatrix(m0.copy())

    def rhs(_, y):
        return vecc(apply_generator(gen, unvecc(y, gen.dim)))

    soln = solve_ivp(rhs, t_span=(0.0, t), y0=vecc(m0), method="DOP853", rtol=rtol, atol=atol)
    if not soln.success:
        raise NumericalBreakdown(f"master equation integration failed: {soln.message}")
    return DensityMatrix(unvecc(soln.y[:, -1], gen.dim))


def vertex_distribution(gen: QswGenerator, rho) -> np.ndarray:
    """Probability of each vertex: diagonal populations summed over its subspace."""
    diag = np.real(np.diag(_as_matrix(rho)))
    if diag.size != gen.dim:
        raise DimensionMismatch(f"state of dimension {diag.size} for a generator of dimension {gen.dim}")
    return np.array([diag[sub].sum() for sub in gen.vertex_subspaces])
