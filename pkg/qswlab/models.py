from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx
import numpy as np

from .errors import DimensionMismatch, InvalidGraph, InvalidState
from .utils.enums import ModelMode, Verdict

Arc = tuple[int, int]


def vecc(matrix: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(matrix).reshape(-1, order="F")


def unvecc(vector: np.ndarray, dim: int | None = None) -> np.ndarray:
    vector = np.asarray(vector)
    if dim is None:
        dim = int(round(np.sqrt(vector.size)))
    if dim * dim != vector.size:
        raise DimensionMismatch(f"vector of length {vector.size} is not a vectorized {dim}x{dim} matrix")
    return vector.reshape((dim, dim), order="F")


# ------------------------------
# Graphs
# ------------------------------

@dataclass(frozen=True)
class Digraph:
    """Directed graph on vertices 0..n-1.

    Arcs are stored sorted and deduplicated. Only non-unit weights are stored;
    every other arc carries weight 1.
    """

    n: int
    arcs: tuple[Arc, ...]
    weights: tuple[tuple[Arc, complex], ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise InvalidGraph(f"a digraph needs at least one vertex, got n={self.n}")
        for v, w in self.arcs:
            if v == w:
                raise InvalidGraph(f"self-loop at vertex {v}")
            if not (0 <= v < self.n and 0 <= w < self.n):
                raise InvalidGraph(f"arc ({v},{w}) has an endpoint outside 0..{self.n - 1}")
        arc_set = set(self.arcs)
        for arc, c in self.weights:
            if arc not in arc_set:
                raise InvalidGraph(f"weight given for missing arc {arc}")
            if c == 0:
                raise InvalidGraph(f"arc {arc} has zero weight")

    @classmethod
    def from_arcs(
        cls,
        n: int,
        arcs: Iterable[Arc],
        weights: Mapping[Arc, complex] | None = None,
        name: str = "",
    ) -> "Digraph":
        normalized = tuple(sorted({(int(v), int(w)) for v, w in arcs}))
        kept = tuple(sorted(
            ((int(a[0]), int(a[1])), complex(c)) for a, c in (weights or {}).items() if complex(c) != 1
        ))
        return cls(n=int(n), arcs=normalized, weights=kept, name=name)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Arc], name: str = "") -> "Digraph":
        """Undirected graph: every edge becomes two opposite arcs."""
        arcs = set()
        for v, w in edges:
            arcs.add((v, w))
            arcs.add((w, v))
        return cls.from_arcs(n, arcs, name=name)

    def with_name(self, name: str) -> "Digraph":
        return Digraph(n=self.n, arcs=self.arcs, weights=self.weights, name=name)

    @cached_property
    def arc_set(self) -> frozenset[Arc]:
        return frozenset(self.arcs)

    @cached_property
    def _weight_map(self) -> dict[Arc, complex]:
        return dict(self.weights)

    def weight(self, v: int, w: int) -> complex:
        return self._weight_map.get((v, w), 1.0 + 0j)

    @cached_property
    def _successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for v, w in self.arcs:
            out[v].append(w)
        return tuple(tuple(x) for x in out)

    @cached_property
    def _predecessors(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for v, w in self.arcs:
            inc[w].append(v)
        return tuple(tuple(sorted(x)) for x in inc)

    def successors(self, v: int) -> tuple[int, ...]:
        return self._successors[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        """Parents of v in ascending index order."""
        return self._predecessors[v]

    def indegree(self, v: int) -> int:
        return len(self._predecessors[v])

    def outdegree(self, v: int) -> int:
        return len(self._successors[v])

    def is_symmetric(self) -> bool:
        return all((w, v) in self.arc_set and self.weight(w, v) == self.weight(v, w) for v, w in self.arcs)

    def adjacency_matrix(self) -> np.ndarray:
        """A[w, v] = c_(v,w): column-indexed by the source, so A acts as a hop v -> w."""
        a = np.zeros((self.n, self.n), dtype=complex)
        for v, w in self.arcs:
            a[w, v] = self.weight(v, w)
        return a

    def underlying_edges(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(arc) for arc in self.arcs)

    def underlying_graph(self) -> "Digraph":
        return Digraph.from_edges(self.n, (tuple(e) for e in self.underlying_edges()), name=self.name)

    def underlying_adjacency(self) -> np.ndarray:
        h = np.zeros((self.n, self.n))
        for v, w in self.arcs:
            h[v, w] = h[w, v] = 1.0
        return h

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.arcs)
        return g


@dataclass(frozen=True)
class Condensation:
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]
    block_dag: frozenset[Arc]
    sink_block_ids: tuple[int, ...]

    @property
    def sink_blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.blocks[b] for b in self.sink_block_ids)

    @cached_property
    def sink_vertices(self) -> frozenset[int]:
        return frozenset(v for b in self.sink_block_ids for v in self.blocks[b])

    def as_digraph(self) -> Digraph:
        return Digraph.from_arcs(len(self.blocks), self.block_dag, name="condensation")


# ------------------------------
# Generators and states
# ------------------------------

@dataclass(frozen=True, eq=False)
class QswGenerator:
    dim: int
    hamiltonian: np.ndarray
    lindblads: tuple[np.ndarray, ...]
    omega: float
    mode: ModelMode
    vertex_subspaces: tuple[range, ...]
    # omega-weighted Hamiltonian acting inside vertex subspaces (non-moralizing only)
    local_hamiltonian: np.ndarray | None = None

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_subspaces)


@dataclass(frozen=True, eq=False)
class Superoperator:
    matrix: np.ndarray
    dim: int

    def __post_init__(self):
        if self.matrix.shape != (self.dim * self.dim, self.dim * self.dim):
            raise DimensionMismatch(f"superoperator shape {self.matrix.shape} does not match dim {self.dim}")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return unvecc(self.matrix @ vecc(rho), self.dim)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def basis(cls, dim: int, index: int) -> "DensityMatrix":
        m = np.zeros((dim, dim), dtype=complex)
        m[index, index] = 1.0
        return cls(m)

    @classmethod
    def pure(cls, vector: np.ndarray) -> "DensityMatrix":
        psi = np.asarray(vector, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))

    def min_eigenvalue(self) -> float:
        return float(np.min(np.linalg.eigvalsh((self.matrix + self.matrix.conj().T) / 2)))

    def validate(self, state_tol: float = 1e-10, positivity_tol: float = 1e-8) -> "DensityMatrix":
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise InvalidState(f"density matrix must be square, got shape {self.matrix.shape}")
        if self.hermiticity_defect() > state_tol:
            raise InvalidState(f"density matrix is not Hermitian (defect {self.hermiticity_defect():.3e})")
        if abs(self.trace() - 1) > state_tol:
            raise InvalidState(f"density matrix trace is {self.trace():.12g}, expected 1")
        if self.min_eigenvalue() < -positivity_tol:
            raise InvalidState(f"density matrix has negative eigenvalue {self.min_eigenvalue():.3e}")
        return self


# ------------------------------
# Non-moralizing enlarged space
# ------------------------------

@dataclass(frozen=True)
class EnlargedSpace:
    vertex_dims: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def total_dim(self) -> int:
        return sum(self.vertex_dims)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_dims)

    def subspace(self, v: int) -> range:
        return range(self.offsets[v], self.offsets[v] + self.vertex_dims[v])

    def index(self, v: int, j: int = 0) -> int:
        """Basis label |v^j> of the enlarged space."""
        if not 0 <= j < self.vertex_dims[v]:
            raise IndexError(f"vertex {v} has a {self.vertex_dims[v]}-dimensional subspace, no copy {j}")
        return self.offsets[v] + j


@dataclass(frozen=True, eq=False)
class NonMoralizingGenerator:
    space: EnlargedSpace
    L_tilde: np.ndarray
    H_tilde: np.ndarray
    H_rot: np.ndarray
    omega: float

    def to_generator(self) -> QswGenerator:
        return QswGenerator(
            dim=self.space.total_dim,
            hamiltonian=self.H_tilde.astype(complex),
            lindblads=(self.L_tilde,),
            omega=self.omega,
            mode=ModelMode.NONMORALIZING,
            vertex_subspaces=tuple(self.space.subspace(v) for v in range(self.space.n_vertices)),
            local_hamiltonian=self.H_rot,
        )


@dataclass(frozen=True, eq=False)
class VertexMeasurement:
    projectors: tuple[np.ndarray, ...]

    @classmethod
    def from_subspaces(cls, subspaces: Iterable[range], dim: int) -> "VertexMeasurement":
        projectors = []
        for sub in subspaces:
            p = np.zeros((dim, dim))
            for i in sub:
                p[i, i] = 1.0
            projectors.append(p)
        return cls(tuple(projectors))


# ------------------------------
# Spectral results
# ------------------------------

@dataclass(frozen=True, eq=False)
class SpectralReport:
    eigenvalues: np.ndarray
    null_dim: int
    has_imaginary_pair: bool
    verdict: Verdict
    tol_zero: float
    scale: float
    stationary_basis: tuple[DensityMatrix, ...] = field(default_factory=tuple)
    singular_null_dim: int | None = None


@dataclass(frozen=True, eq=False)
class CommutingSpectrum:
    hamiltonian_eigs: np.ndarray
    lindblad_eigs: tuple[np.ndarray, ...]
    pair_eigenvalues: np.ndarray
    unitary_basis: np.ndarray
    omega: float
    local_hamiltonian_eigs: np.ndarray | None = None
