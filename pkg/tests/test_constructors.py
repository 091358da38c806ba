import pytest

from qswlab.errors import InvalidGraph
from qswlab.services.constructors import (
    apollonian,
    bidirected_path,
    build_named,
    circulant_chord_graph,
    fig5_graph,
    fig6_graph,
    fig7_graph,
    orient_toward_sink,
    oriented_path,
    oriented_petersen,
    oriented_sierpinski_triangle,
    path,
    petersen,
    sierpinski_triangle,
    single_vertex,
    star,
)
from qswlab.models import Digraph
from qswlab.services.graphs import condense


def degrees(g):
    return [len(set(g.successors(v)) | set(g.predecessors(v))) for v in range(g.n)]


def test_bidirected_path_points_away_from_the_centre():
    g = bidirected_path(1)
    assert g.n == 3
    assert g.arcs == ((1, 0), (1, 2))
    assert len(bidirected_path(3).arcs) == 6


def test_star_arcs_leave_the_hub():
    g = star(4)
    assert g.n == 4
    assert g.arcs == ((0, 1), (0, 2), (0, 3))


def test_circulant_chord_graph_structure():
    g = circulant_chord_graph(2)
    assert g.n == 8
    assert len(g.arcs) == 24
    assert all(((m + 2) % 8, m) in g.arc_set for m in range(8))
    assert all(g.indegree(v) == 3 for v in range(8))
    with pytest.raises(InvalidGraph):
        circulant_chord_graph(1)


def test_figure_graphs():
    assert fig5_graph().arcs == ((0, 2), (1, 2))
    assert degrees(fig6_graph()) == [5, 1, 1, 1, 2, 2]
    assert fig6_graph().is_symmetric()
    g7 = fig7_graph()
    assert g7.n == 7 and len(g7.arcs) == 18 and g7.is_symmetric()


def test_standard_families():
    assert len(petersen().arcs) == 30 and all(d == 3 for d in degrees(petersen()))
    assert apollonian().n == 12 and len(apollonian().arcs) == 60
    assert sierpinski_triangle().n == 15 and len(sierpinski_triangle().arcs) == 54
    assert sierpinski_triangle(0).n == 3
    assert single_vertex().n == 1
    assert len(path(4).arcs) == 6


def test_oriented_path_is_a_chain():
    assert oriented_path(4).arcs == ((0, 1), (1, 2), (2, 3))


@pytest.mark.parametrize("g", [oriented_petersen(), oriented_sierpinski_triangle(), orient_toward_sink(fig7_graph(), 3)])
def test_orientation_leaves_a_single_sink(g):
    cond = condense(g)
    assert all(len(b) == 1 for b in cond.blocks)
    assert len(cond.sink_block_ids) == 1


def test_orientation_keeps_every_edge_once():
    g = petersen()
    oriented = orient_toward_sink(g, 4)
    assert oriented.underlying_edges() == g.underlying_edges()
    assert len(oriented.arcs) == len(g.arcs) // 2
    assert condense(oriented).sink_vertices == frozenset({4})


def test_orientation_needs_a_connected_graph():
    with pytest.raises(InvalidGraph):
        orient_toward_sink(Digraph.from_arcs(3, [(0, 1)]), 0)


def test_build_named():
    assert build_named("star", 4) == star(4)
    assert build_named("fig5") == fig5_graph()
    with pytest.raises(InvalidGraph):
        build_named("no_such_graph")
    with pytest.raises(InvalidGraph):
        build_named("star", 1)
