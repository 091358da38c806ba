"""Non-moralizing global interaction on the enlarged space.

Every vertex v owns max(indegree(v), 1) basis states |v^j>, laid out in
ascending vertex order. The single Lindblad operator L~ sends the subspace of
each parent into its child's subspace along one column of the child's Fourier
matrix, so distinct parents of a common child land on orthogonal directions
and never interfere.
"""
import logging
from itertools import combinations

import numpy as np
from scipy.linalg import block_diag

from ..errors import DimensionMismatch
from ..models import (
    Digraph,
    EnlargedSpace,
    NonMoralizingGenerator,
    Superoperator,
    VertexMeasurement,
)
from ..settings import get_settings
from ..utils.enums import ParentRow
from .generators import assemble_superoperator, check_omega

logger = logging.getLogger(__name__)


def enlarge(g: Digraph) -> EnlargedSpace:
    dims = tuple(max(g.indegree(v), 1) for v in range(g.n))
    offsets = tuple(int(x) for x in np.concatenate(([0], np.cumsum(dims)[:-1])))
    return EnlargedSpace(vertex_dims=dims, offsets=offsets)


def fourier_matrix(k: int) -> np.ndarray:
    """(A)_{j,l} = exp(2 pi i j l / k) / sqrt(k)."""
    if k < 1:
        raise ValueError(f"Fourier matrix needs k >= 1, got {k}")
    j, l = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    return np.exp(2j * np.pi * j * l / k) / np.sqrt(k)


def rotating_block(d: int) -> np.ndarray:
    """Tridiagonal Hermitian block: +i above the diagonal, -i below."""
    if d < 1:
        raise ValueError(f"rotating block needs d >= 1, got {d}")
    return 1j * np.eye(d, k=1) - 1j * np.eye(d, k=-1)


def parent_row(d: int, kind: ParentRow) -> np.ndarray:
    """All-ones row of length d, or the same row scaled to unit norm."""
    row = np.ones(d)
    return row / np.sqrt(d) if kind == ParentRow.NORMALIZED else row


def build_nonmoralizing(g: Digraph, omega: float, row: ParentRow | None = None) -> NonMoralizingGenerator:
    omega = check_omega(omega)
    row = get_settings().nonmoralizing_parent_row if row is None else ParentRow(row)
    space = enlarge(g)
    size = space.total_dim
    l_tilde = np.zeros((size, size), dtype=complex)
    for w in range(g.n):
        parents = g.predecessors(w)
        if not parents:
            continue
        columns = fourier_matrix(len(parents))
        rows = space.subspace(w)
        for l, v in enumerate(parents):
            cols = space.subspace(v)
            block = np.outer(columns[:, l], parent_row(len(cols), row)) * g.weight(v, w)
            l_tilde[rows.start:rows.stop, cols.start:cols.stop] = block

    support = np.abs(l_tilde) > 0
    h_tilde = (support | support.T).astype(float)
    h_rot = block_diag(*(rotating_block(d) for d in space.vertex_dims)).astype(complex)
    logger.debug(f"[NONMORAL] {g.name or 'graph'}: enlarged dimension {size} for {g.n} vertices")
    return NonMoralizingGenerator(
        space=space,
        L_tilde=l_tilde,
        H_tilde=h_tilde,
        H_rot=h_rot,
        omega=omega,
    )


def assemble_nonmoralizing_superoperator(gen: NonMoralizingGenerator) -> Superoperator:
    return assemble_superoperator(gen.to_generator())


def vertex_measurement(space: EnlargedSpace) -> VertexMeasurement:
    return VertexMeasurement.from_subspaces(
        (space.subspace(v) for v in range(space.n_vertices)), space.total_dim
    )


def canonical_measurement(space: EnlargedSpace, rho) -> np.ndarray:
    """Pi(v) = tr(P_v rho) for every vertex v."""
    m = np.asarray(getattr(rho, "matrix", rho))
    if m.shape != (space.total_dim, space.total_dim):
        raise DimensionMismatch(f"state of shape {m.shape} on an enlarged space of dimension {space.total_dim}")
    diag = np.real(np.diag(m))
    return np.array([diag[space.subspace(v)].sum() for v in range(space.n_vertices)])


def anti_moralization_defect(g: Digraph, gen: NonMoralizingGenerator) -> float:
    """Largest entry of L~^dag L~ coupling two co-parents that share no arc."""
    gram = gen.L_tilde.conj().T @ gen.L_tilde
    worst = 0.0
    for w in range(g.n):
        for u, u2 in combinations(g.predecessors(w), 2):
            if (u, u2) in g.arc_set or (u2, u) in g.arc_set:
                continue
            a, b = gen.space.subspace(u), gen.space.subspace(u2)
            worst = max(worst, float(np.max(np.abs(gram[a.start:a.stop, b.start:b.stop]))))
    return worst
