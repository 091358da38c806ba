"""Named graphs used throughout the study, plus the orientation helper that
turns undirected families into single-sink digraphs.

Vertex labels in figures are mapped to indices as documented per constructor.
"""
import logging
from typing import Callable

import networkx as nx

from ..errors import InvalidGraph
from ..models import Digraph

logger = logging.getLogger(__name__)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidGraph(message)


def single_vertex() -> Digraph:
    return Digraph.from_arcs(1, [], name="single_vertex")


def bidirected_path(n: int) -> Digraph:
    """Path on labels -n..n with every arc pointing away from the centre.

    Label i maps to index i + n, so the centre is index n and the two sinks
    are 0 and 2n.
    """
    _require(n >= 1, f"bidirected_path needs n >= 1, got {n}")
    arcs = [(i + 1, i) for i in range(n)] + [(i - 1, i) for i in range(n + 1, 2 * n + 1)]
    return Digraph.from_arcs(2 * n + 1, arcs, name=f"bidirected_path({n})")


def star(k: int) -> Digraph:
    """Hub 0 with arcs to k-1 leaves."""
    _require(k >= 2, f"star needs k >= 2 vertices, got {k}")
    return Digraph.from_arcs(k, [(0, i) for i in range(1, k)], name=f"star({k})")


def circulant_chord_graph(k: int) -> Digraph:
    """Bidirected cycle on 4k vertices plus the one-way chords (m+2) -> m."""
    _require(k >= 2, f"circulant_chord_graph needs k >= 2, got {k}")
    n = 4 * k
    arcs = set()
    for m in range(n):
        arcs.add((m, (m + 1) % n))
        arcs.add(((m + 1) % n, m))
        arcs.add(((m + 2) % n, m))
    return Digraph.from_arcs(n, arcs, name=f"circulant_chord_graph({k})")


def cycle(n: int) -> Digraph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return Digraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"cycle({n})")


def path(n: int) -> Digraph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return Digraph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"path({n})")


def fig5_graph() -> Digraph:
    """v1 -> v3 <- v2, labels v1, v2, v3 at indices 0, 1, 2."""
    return Digraph.from_arcs(3, [(0, 2), (1, 2)], name="fig5")


def fig6_graph() -> Digraph:
    """Undirected: v0 joined to v1..v5, plus the edge v4-v5 (label v_i at index i)."""
    edges = [(0, i) for i in range(1, 6)] + [(4, 5)]
    return Digraph.from_edges(6, edges, name="fig6")


def fig7_graph() -> Digraph:
    """Undirected 7-vertex graph; label v_i sits at index i - 1."""
    labelled = [(7, 2), (2, 4), (4, 1), (5, 1), (2, 6), (1, 3), (2, 1), (6, 1), (2, 3)]
    return Digraph.from_edges(7, [(a - 1, b - 1) for a, b in labelled], name="fig7")


def petersen() -> Digraph:
    return Digraph.from_edges(10, nx.petersen_graph().edges(), name="petersen")


def apollonian(n: int = 12) -> Digraph:
    """Apollonian network grown from a triangle, one vertex per face, generation
    by generation in face order, stopped once n vertices exist."""
    _require(n >= 3, f"apollonian needs n >= 3, got {n}")
    edges = {(0, 1), (1, 2), (0, 2)}
    faces = [(0, 1, 2)]
    count = 3
    while count < n:
        next_faces = []
        for a, b, c in faces:
            if count == n:
                next_faces.append((a, b, c))
                continue
            x = count
            count += 1
            edges.update({(a, x), (b, x), (c, x)})
            next_faces.extend([(a, b, x), (b, c, x), (a, c, x)])
        faces = next_faces
    return Digraph.from_edges(n, edges, name=f"apollonian({n})")


def sierpinski_triangle(order: int = 2) -> Digraph:
    """Sierpinski gasket graph; order 0 is a triangle, order 2 has 15 vertices."""
    _require(order >= 0, f"sierpinski_triangle needs order >= 0, got {order}")
    edges_xy: set[frozenset[tuple[int, int]]] = set()

    def _triangle(a: int, b: int, size: int) -> None:
        if size == 1:
            corners = [(a, b), (a + 1, b), (a, b + 1)]
            for i in range(3):
                for j in range(i + 1, 3):
                    edges_xy.add(frozenset((corners[i], corners[j])))
            return
        half = size // 2
        _triangle(a, b, half)
        _triangle(a + half, b, half)
        _triangle(a, b + half, half)

    _triangle(0, 0, 2 ** order)
    points = sorted({p for e in edges_xy for p in e})
    index = {p: i for i, p in enumerate(points)}
    edges = [tuple(index[p] for p in e) for e in edges_xy]
    return Digraph.from_edges(len(points), edges, name=f"sierpinski_triangle({order})")


def orient_toward_sink(g: Digraph, sink: int = 0) -> Digraph:
    """Orient every underlying edge towards the endpoint closer to `sink`.

    Equally distant endpoints are ordered by index (larger -> smaller), so the
    result is acyclic and `sink` is its only sink vertex.
    """
    undirected = nx.Graph()
    undirected.add_nodes_from(range(g.n))
    undirected.add_edges_from(tuple(e) for e in g.underlying_edges())
    dist = nx.single_source_shortest_path_length(undirected, sink)
    _require(len(dist) == g.n, f"{g.name or 'graph'} is not connected; cannot orient towards {sink}")
    arcs = []
    for u, v in undirected.edges():
        if (dist[u], u) > (dist[v], v):
            arcs.append((u, v))
        else:
            arcs.append((v, u))
    return Digraph.from_arcs(g.n, arcs, name=f"oriented_{g.name}" if g.name else "")


def oriented_path(n: int) -> Digraph:
    """0 -> 1 -> ... -> n-1."""
    return orient_toward_sink(path(n), sink=n - 1)


def oriented_petersen() -> Digraph:
    return orient_toward_sink(petersen(), sink=0)


def oriented_apollonian(n: int = 12) -> Digraph:
    return orient_toward_sink(apollonian(n), sink=0)


def oriented_sierpinski_triangle(order: int = 2) -> Digraph:
    return orient_toward_sink(sierpinski_triangle(order), sink=0)


# name -> constructor; integer parameters are passed positionally
NAMED_GRAPHS: dict[str, Callable[..., Digraph]] = {
    "single_vertex": single_vertex,
    "bidirected_path": bidirected_path,
    "star": star,
    "circulant": circulant_chord_graph,
    "circulant_chord_graph": circulant_chord_graph,
    "cycle": cycle,
    "path": path,
    "fig5": fig5_graph,
    "fig6": fig6_graph,
    "fig7": fig7_graph,
    "petersen": petersen,
    "apollonian": apollonian,
    "sierpinski_triangle": sierpinski_triangle,
    "oriented_path": oriented_path,
    "oriented_petersen": oriented_petersen,
    "oriented_apollonian": oriented_apollonian,
    "oriented_sierpinski_triangle": oriented_sierpinski_triangle,
}


def build_named(name: str, *params: int) -> Digraph:
    try:
        ctor = NAMED_GRAPHS[name]
    except KeyError:
        raise InvalidGraph(f"unknown graph '{name}'; known: {', '.join(sorted(NAMED_GRAPHS))}") from None
    try:
        return ctor(*params)
    except TypeError as ex:
        raise InvalidGraph(f"bad parameters for '{name}': {ex}") from None
