import logging
from itertools import combinations

import networkx as nx
import numpy as np

from ..errors import Unreachable
from ..models import Condensation, Digraph
from ..utils.enums import Connectivity, SurveyFilter

logger = logging.getLogger(__name__)


def condense(g: Digraph) -> Condensation:
    """Condensation of g: maximal strongly connected components and the block DAG.

    Blocks are listed by their smallest vertex and keep their vertices in
    ascending order, so block ids are deterministic.
    """
    components = [tuple(sorted(c)) for c in nx.strongly_connected_components(g.to_networkx())]
    blocks = tuple(sorted(components, key=lambda b: b[0]))
    block_of = [0] * g.n
    for b, vertices in enumerate(blocks):
        for v in vertices:
            block_of[v] = b
    block_dag = frozenset(
        (block_of[v], block_of[w]) for v, w in g.arcs if block_of[v] != block_of[w]
    )
    has_out = {b1 for b1, _ in block_dag}
    sink_ids = tuple(b for b in range(len(blocks)) if b not in has_out)
    return Condensation(
        blocks=blocks,
        block_of=tuple(block_of),
        block_dag=block_dag,
        sink_block_ids=sink_ids,
    )


def connectivity(g: Digraph) -> Connectivity:
    if len(condense(g).blocks) == 1:
        return Connectivity.STRONGLY_CONNECTED
    if nx.is_weakly_connected(g.to_networkx()):
        return Connectivity.WEAKLY_CONNECTED
    return Connectivity.DISCONNECTED


def is_weakly_connected(g: Digraph) -> bool:
    return connectivity(g) != Connectivity.DISCONNECTED


def moral_closure(g: Digraph) -> Digraph:
    """Directed moral graph: co-parents of a common child get arcs both ways."""
    arcs = set(g.arcs)
    for w in range(g.n):
        for v, v2 in combinations(g.predecessors(w), 2):
            arcs.add((v, v2))
            arcs.add((v2, v))
    weights = dict(g.weights)
    name = f"moral({g.name})" if g.name else ""
    return Digraph.from_arcs(g.n, arcs, weights=weights, name=name)


def sink_distances(g: Digraph) -> dict[int, int]:
    """Shortest directed distance from every vertex that reaches a sink block
    to the union of sink-block vertices."""
    sinks = condense(g).sink_vertices
    reverse = g.to_networkx().reverse(copy=True)
    return dict(nx.multi_source_dijkstra_path_length(reverse, set(sinks)))


def sink_distance(g: Digraph, v: int) -> int:
    distances = sink_distances(g)
    if v not in distances:
        raise Unreachable(f"no sink block is reachable from vertex {v}")
    return int(distances[v])


def sample_erdos_renyi(
    n: int,
    p: float,
    directed: bool = True,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
) -> Digraph:
    """G(n, p) sample. Directed samples draw every ordered pair; undirected
    samples draw every unordered pair and emit it as two opposite arcs."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if rng is None:
        rng = np.random.default_rng(seed)
    if directed:
        mask = rng.random((n, n)) < p
        np.fill_diagonal(mask, False)
        arcs = list(zip(*np.nonzero(mask)))
        return Digraph.from_arcs(n, arcs, name=f"er({n},{p},directed)")
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    edges = list(zip(iu[keep], ju[keep]))
    return Digraph.from_edges(n, edges, name=f"er({n},{p},undirected)")


def passes_filter(g: Digraph, survey_filter: SurveyFilter) -> bool:
    if survey_filter == SurveyFilter.NONE:
        return True
    kind = connectivity(g)
    if survey_filter == SurveyFilter.STRONGLY_CONNECTED:
        return kind == Connectivity.STRONGLY_CONNECTED
    if kind == Connectivity.DISCONNECTED:
        return False
    if survey_filter == SurveyFilter.WEAKLY_CONNECTED:
        return True
    sinks = len(condense(g).sink_block_ids)
    if survey_filter == SurveyFilter.ONE_SINK:
        return sinks == 1
    return sinks > 1
