import logging

import numpy as np
import scipy.linalg as sla
from scipy.optimize import linear_sum_assignment

from ..errors import NotCommuting, NumericalBreakdown
from ..models import (
    CommutingSpectrum,
    DensityMatrix,
    QswGenerator,
    SpectralReport,
    Superoperator,
    unvecc,
    vecc,
)
from ..settings import get_settings
from ..utils.enums import Verdict
from . import metrics
from .generators import apply_generator

logger = logging.getLogger(__name__)

# minimum trace for a Jordan part of a null direction to count as a state
_MIN_PART_TRACE = 1e-8
# seed of the random Hermitian combination used to find a common eigenbasis
_BASIS_SEED = 20_190_415


def classify(null_dim: int, has_imaginary_pair: bool) -> Verdict:
    if has_imaginary_pair:
        return Verdict.NON_CONVERGENT
    if null_dim == 1:
        return Verdict.RELAXING
    return Verdict.CONVERGENT_NOT_RELAXING


def null_space_basis(F: Superoperator | np.ndarray, tol_zero: float | None = None) -> np.ndarray:
    """Orthonormal columns spanning ker F; singular values below tol_zero * s_max count as zero."""
    tol_zero = get_settings().tol_zero if tol_zero is None else tol_zero
    m = np.asarray(getattr(F, "matrix", F))
    return sla.null_space(m, rcond=tol_zero)


def same_subspace(a: np.ndarray, b: np.ndarray, tol: float = 1e-8) -> bool:
    """True when the column spans of a and b coincide."""
    qa = sla.orth(np.atleast_2d(a)) if np.size(a) else np.zeros((np.shape(a)[0], 0))
    qb = sla.orth(np.atleast_2d(b)) if np.size(b) else np.zeros((np.shape(b)[0], 0))
    if qa.shape[1] != qb.shape[1]:
        return False
    if qa.shape[1] == 0:
        return True
    diff = qa @ qa.conj().T - qb @ qb.conj().T
    return float(np.linalg.norm(diff, 2)) <= tol


def _jordan_parts(x: np.ndarray) -> list[np.ndarray]:
    vals, vecs = np.linalg.eigh(x)
    pos = (vecs * np.clip(vals, 0, None)) @ vecs.conj().T
    neg = (vecs * np.clip(-vals, 0, None)) @ vecs.conj().T
    return [pos, neg]


def stationary_states(F: Superoperator, null_vectors: np.ndarray, residual_tol: float) -> tuple[DensityMatrix, ...]:
    """Linearly independent density matrices in ker F.

    Each null direction is split into Hermitian and anti-Hermitian parts and
    those into positive and negative parts; parts with non-negligible trace are
    normalized and kept while they add a new direction.
    """
    states: list[DensityMatrix] = []
    stacked: list[np.ndarray] = []
    for k in range(null_vectors.shape[1]):
        x = unvecc(null_vectors[:, k], F.dim)
        for herm in ((x + x.conj().T) / 2, (x - x.conj().T) / 2j):
            for part in _jordan_parts(herm):
                tr = float(np.real(np.trace(part)))
                if tr < _MIN_PART_TRACE:
                    continue
                rho = part / tr
                if np.linalg.norm(F.matrix @ vecc(rho)) > residual_tol:
                    continue
                candidate = np.column_stack(stacked + [vecc(rho)])
                if np.linalg.matrix_rank(candidate, tol=1e-8) > len(stacked):
                    stacked.append(vecc(rho))
                    states.append(DensityMatrix(rho))
    return tuple(states)


def spectrum(
    F: Superoperator,
    tol_zero: float | None = None,
    cross_check: bool = True,
    with_states: bool = True,
) -> SpectralReport:
    """Full eigensolve of F and the convergence/relaxation verdict.

    tol_zero is relative: eigenvalues are compared against tol_zero times the
    largest eigenvalue modulus.
    """
    tol_zero = get_settings().tol_zero if tol_zero is None else tol_zero
    try:
        eigenvalues = sla.eigvals(F.matrix)
    except (sla.LinAlgError, ValueError) as ex:
        raise NumericalBreakdown(f"eigensolver failed on a {F.matrix.shape[0]}x{F.matrix.shape[0]} superoperator: {ex}")
    metrics.record("eigensolves")

    scale = float(np.max(np.abs(eigenvalues), initial=0.0)) or 1.0
    tol = tol_zero * scale
    null_dim = int(np.sum(np.abs(eigenvalues) <= tol))
    has_pair = bool(np.any((np.abs(eigenvalues.real) <= tol) & (np.abs(eigenvalues.imag) > tol)))

    singular_null = None
    if cross_check:
        sv = sla.svdvals(F.matrix)
        s_max = float(sv[0]) if sv.size and sv[0] > 0 else 1.0
        singular_null = int(np.sum(sv <= tol_zero * s_max))
        if singular_null != null_dim:
            metrics.record("null_space_discrepancies")
            logger.warning(
                f"[SPECTRUM] null space count disagrees: {null_dim} by eigenvalues, {singular_null} by singular values"
            )

    states: tuple[DensityMatrix, ...] = ()
    if with_states and null_dim:
        states = stationary_states(F, null_space_basis(F, tol_zero), residual_tol=1e-6 * scale)

    verdict = classify(null_dim, has_pair)
    logger.debug(f"[SPECTRUM] dim={F.dim} null_dim={null_dim} imaginary_pair={has_pair} -> {verdict.value}")
    return SpectralReport(
        eigenvalues=eigenvalues,
        null_dim=null_dim,
        has_imaginary_pair=has_pair,
        verdict=verdict,
        tol_zero=tol_zero,
        scale=scale,
        stationary_basis=states,
        singular_null_dim=singular_null,
    )


def _operators(gen: QswGenerator) -> list[np.ndarray]:
    ops = [gen.hamiltonian, *gen.lindblads]
    if gen.local_hamiltonian is not None:
        ops.append(gen.local_hamiltonian)
    return ops


def _check_commuting(ops: list[np.ndarray], tol: float) -> None:
    for a in range(len(ops)):
        for b in range(a, len(ops)):
            x, y = ops[a], ops[b]
            for other in (y, y.conj().T):
                defect = float(np.max(np.abs(x @ other - other @ x), initial=0.0))
                if defect > tol:
                    raise NotCommuting(f"operators {a} and {b} fail to commute (defect {defect:.3e})")


def common_eigenbasis(ops: list[np.ndarray], seed: int = _BASIS_SEED) -> np.ndarray:
    """Unitary diagonalizing a family of commuting normal operators.

    A random real combination of the Hermitian and anti-Hermitian parts has
    simple eigenvalues on each joint eigenspace with probability one.
    """
    rng = np.random.default_rng(seed)
    mix = np.zeros_like(ops[0], dtype=complex)
    for op in ops:
        a, b = rng.standard_normal(2)
        mix += a * (op + op.conj().T) / 2 + b * (op - op.conj().T) / 2j
    _, u = np.linalg.eigh(mix)
    return u


def commuting_spectrum(gen: QswGenerator, tol: float = 1e-10) -> CommutingSpectrum:
    """Eigenvalues of F on the basis |u_i><u_j| when H and every L commute.

    pair_eigenvalues[i, j] belongs to vecc(|u_i><u_j|), which sits at index
    i + j * dim of the vectorized space.
    """
    ops = _operators(gen)
    scale = max(1.0, max(float(np.max(np.abs(op), initial=0.0)) for op in ops))
    _check_commuting(ops, tol * scale * scale)

    u = common_eigenbasis(ops)

    def diag_of(op: np.ndarray) -> np.ndarray:
        return np.diag(u.conj().T @ op @ u)

    h = np.real(diag_of(gen.hamiltonian))
    ls = tuple(diag_of(op) for op in gen.lindblads)
    hl = None if gen.local_hamiltonian is None else np.real(diag_of(gen.local_hamiltonian))

    omega = gen.omega
    lam = -1j * (1.0 - omega) * (h[:, None] - h[None, :])
    for l in ls:
        mag = np.abs(l) ** 2
        lam = lam + omega * (l[:, None] * l.conj()[None, :] - 0.5 * mag[:, None] - 0.5 * mag[None, :])
    if hl is not None:
        lam = lam - 1j * omega * (hl[:, None] - hl[None, :])

    return CommutingSpectrum(
        hamiltonian_eigs=h,
        lindblad_eigs=ls,
        pair_eigenvalues=lam,
        unitary_basis=u,
        omega=omega,
        local_hamiltonian_eigs=hl,
    )


def undirected_pair_eigenvalue(d_i: float, d_j: float, omega: float) -> complex:
    """Closed form for the global model on an undirected graph, where L = H."""
    return -1j * (1.0 - omega) * (d_i - d_j) - 0.5 * omega * (d_i - d_j) ** 2


def spectrum_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest deviation of the best one-to-one pairing of two eigenvalue multisets."""
    a = np.ravel(a)
    b = np.ravel(b)
    if a.size != b.size:
        return float("inf")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))


def contains_eigenvalue(eigenvalues: np.ndarray, target: complex, tol: float = 1e-8) -> bool:
    return bool(np.any(np.abs(np.asarray(eigenvalues) - target) <= tol))


def circulant_eigenvector(n: int, i: int) -> np.ndarray:
    """|C_i> with components exp(2 pi i i j / n) / sqrt(n)."""
    if not 0 <= i < n:
        raise ValueError(f"circulant eigenvector index {i} outside 0..{n - 1}")
    j = np.arange(n)
    return np.exp(2j * np.pi * i * j / n) / np.sqrt(n)


def is_stationary(gen: QswGenerator, rho, tol: float = 1e-10) -> bool:
    return float(np.linalg.norm(apply_generator(gen, rho))) <= tol
