import logging

import numpy as np

from ..errors import DimensionMismatch, NonHermitianError
from ..models import Digraph, QswGenerator, Superoperator
from ..settings import get_settings
from ..utils.enums import HamiltonianChoice, ModelMode
from .graphs import is_weakly_connected

logger = logging.getLogger(__name__)


def check_omega(omega: float) -> float:
    omega = float(omega)
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega must lie in [0, 1], got {omega}")
    return omega


def _hamiltonian_for(
    g: Digraph,
    choice: HamiltonianChoice,
    custom: np.ndarray | None,
) -> np.ndarray:
    if choice == HamiltonianChoice.ZERO:
        return np.zeros((g.n, g.n), dtype=complex)
    if choice == HamiltonianChoice.UNDERLYING_ADJACENCY:
        return g.underlying_adjacency().astype(complex)
    if custom is None:
        raise NonHermitianError("a custom Hamiltonian was requested but none was given")
    h = np.asarray(custom, dtype=complex)
    if h.shape != (g.n, g.n):
        raise DimensionMismatch(f"custom Hamiltonian has shape {h.shape}, graph has {g.n} vertices")
    defect = float(np.max(np.abs(h - h.conj().T), initial=0.0))
    if defect > get_settings().hermitian_tol:
        raise NonHermitianError(f"custom Hamiltonian is not Hermitian (defect {defect:.3e})")
    return h


def build_local(
    g: Digraph,
    omega: float,
    hamiltonian_choice: HamiltonianChoice = HamiltonianChoice.UNDERLYING_ADJACENCY,
    hamiltonian: np.ndarray | None = None,
) -> QswGenerator:
    """Local interaction: one hop operator c_(v,w)|w><v| per arc."""
    omega = check_omega(omega)
    if not is_weakly_connected(g):
        logger.warning(f"[GENERATOR] local model on {g.name or 'graph'} which is not weakly connected")
    lindblads = []
    for v, w in g.arcs:
        op = np.zeros((g.n, g.n), dtype=complex)
        op[w, v] = g.weight(v, w)
        lindblads.append(op)
    return QswGenerator(
        dim=g.n,
        hamiltonian=_hamiltonian_for(g, hamiltonian_choice, hamiltonian),
        lindblads=tuple(lindblads),
        omega=omega,
        mode=ModelMode.LOCAL,
        vertex_subspaces=tuple(range(v, v + 1) for v in range(g.n)),
    )


def build_global(
    g: Digraph,
    omega: float,
    hamiltonian_choice: HamiltonianChoice = HamiltonianChoice.UNDERLYING_ADJACENCY,
    hamiltonian: np.ndarray | None = None,
) -> QswGenerator:
    """Global interaction: the digraph adjacency matrix is the only Lindblad operator."""
    omega = check_omega(omega)
    return QswGenerator(
        dim=g.n,
        hamiltonian=_hamiltonian_for(g, hamiltonian_choice, hamiltonian),
        lindblads=(g.adjacency_matrix(),),
        omega=omega,
        mode=ModelMode.GLOBAL,
        vertex_subspaces=tuple(range(v, v + 1) for v in range(g.n)),
    )


def build_generator(g: Digraph, mode: ModelMode, omega: float, **kwargs) -> QswGenerator:
    """Dispatch on the model mode; non-moralizing generators live on the enlarged space."""
    if mode == ModelMode.LOCAL:
        return build_local(g, omega, **kwargs)
    if mode == ModelMode.GLOBAL:
        return build_global(g, omega, **kwargs)
    from .nonmoralizing import build_nonmoralizing

    return build_nonmoralizing(g, omega, **kwargs).to_generator()


def _commutator_super(h: np.ndarray) -> np.ndarray:
    eye = np.eye(h.shape[0])
    return np.kron(eye, h) - np.kron(h.T, eye)


def _dissipator_super(op: np.ndarray) -> np.ndarray:
    eye = np.eye(op.shape[0])
    ldl = op.conj().T @ op
    return np.kron(op.conj(), op) - 0.5 * np.kron(eye, ldl) - 0.5 * np.kron(ldl.T, eye)


def _check_shapes(gen: QswGenerator) -> None:
    expected = (gen.dim, gen.dim)
    ops = [gen.hamiltonian, *gen.lindblads]
    if gen.local_hamiltonian is not None:
        ops.append(gen.local_hamiltonian)
    for op in ops:
        if np.shape(op) != expected:
            raise DimensionMismatch(f"operator of shape {np.shape(op)} in a generator of dimension {gen.dim}")


def assemble_superoperator(gen: QswGenerator) -> Superoperator:
    """Column-stacking matrix F with vecc(M[rho]) = F vecc(rho)."""
    _check_shapes(gen)
    d = gen.dim
    omega = gen.omega
    f = -1j * (1.0 - omega) * _commutator_super(gen.hamiltonian)
    for op in gen.lindblads:
        f = f + omega * _dissipator_super(op)
    if gen.local_hamiltonian is not None:
        f = f - 1j * omega * _commutator_super(gen.local_hamiltonian)
    return Superoperator(matrix=np.asarray(f, dtype=complex), dim=d)


def apply_generator(gen: QswGenerator, rho: np.ndarray) -> np.ndarray:
    """M[rho] evaluated directly from the operators."""
    rho = np.asarray(getattr(rho, "matrix", rho), dtype=complex)
    if rho.shape != (gen.dim, gen.dim):
        raise DimensionMismatch(f"state of shape {rho.shape} for a generator of dimension {gen.dim}")
    h = gen.hamiltonian
    out = -1j * (1.0 - gen.omega) * (h @ rho - rho @ h)
    if gen.local_hamiltonian is not None:
        hl = gen.local_hamiltonian
        out = out - 1j * gen.omega * (hl @ rho - rho @ hl)
    for op in gen.lindblads:
        ldl = op.conj().T @ op
        out = out + gen.omega * (op @ rho @ op.conj().T - 0.5 * (ldl @ rho + rho @ ldl))
    return out


def reachable_span(gen: QswGenerator, vertex: int, tol: float = 1e-10) -> int:
    """Rank of the span of all Lindblad words applied to the basis vector of `vertex`."""
    start = np.zeros(gen.dim, dtype=complex)
    start[vertex] = 1.0
    basis = [start]
    frontier = [start]
    while frontier:
        next_frontier = []
        for vec in frontier:
            for op in gen.lindblads:
                candidate = op @ vec
                if np.linalg.norm(candidate) <= tol:
                    continue
                stacked = np.column_stack(basis + [candidate])
                if np.linalg.matrix_rank(stacked, tol=tol) > len(basis):
                    basis.append(candidate)
                    next_frontier.append(candidate)
        frontier = next_frontier
    return len(basis)
