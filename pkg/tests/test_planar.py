import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from pcenter.generators import cycle, cycle_rotation, delaunay, grid, thin_planar, toroidal_grid
from pcenter.graph import Graph, GraphError, is_geodesic, quotient
from pcenter.planar import (
    EmbeddingError,
    check_rotation,
    format_rotation,
    parse_rotation,
    planar_geodesic_partition,
    restrict_rotation,
    trace_faces,
    triangulate,
)
from pcenter.treedecomp import validate_td

from .helpers import complete, nx_rotation, to_nx


def k4_rotation():
    return nx_rotation(to_nx(complete(4)))


def test_k4_has_four_faces():
    e = trace_faces(complete(4), k4_rotation())
    assert e.num_faces == 4 and e.euler_genus == 0
    assert all(len(f) == 3 for f in e.faces)


def test_triangle_has_two_faces():
    e = trace_faces(cycle(3), cycle_rotation(3))
    assert e.num_faces == 2 and e.euler_genus == 0


def test_torus_grid_genus_one():
    g, rot = toroidal_grid(3, 3)
    e = trace_faces(g, rot)
    assert e.num_faces == 9 and e.euler_genus == 1


def test_every_dart_on_one_face():
    g, rot = grid(4, 5)
    e = trace_faces(g, rot)
    darts = [d for f in range(e.num_faces) for d in e.face_darts(f)]
    assert len(darts) == len(set(darts)) == 2 * g.m


def test_bad_rotation_rejected():
    with pytest.raises(EmbeddingError):
        check_rotation(cycle(3), [[1, 2], [0], [0, 1]])
    with pytest.raises(EmbeddingError):
        trace_faces(cycle(3), [[1, 2], [0, 2]])


@pytest.mark.parametrize("n,added", [(3, 0), (4, 1), (5, 2)])
def test_triangulate_cycles(n, added):
    t = triangulate(trace_faces(cycle(n), cycle_rotation(n)))
    e = t.embedding
    # both faces of the cycle get cut into triangles
    assert len(t.added) == 2 * added
    assert e.euler_genus == 0
    assert all(len(f) == 3 for f in e.faces)


@pytest.mark.parametrize("seed", range(5))
def test_triangulate_thinned_delaunay(seed):
    g, rot = delaunay(60, seed)
    h, hrot = thin_planar(g, rot, 0.5, seed)
    t = triangulate(trace_faces(h, hrot))
    e = t.embedding
    assert e.euler_genus == 0 and all(len(f) == 3 for f in e.faces)
    assert e.graph.m == 3 * h.n - 6
    assert nx.check_planarity(to_nx(e.graph))[0]


def test_triangulate_rejects_torus():
    g, rot = toroidal_grid(3, 3)
    with pytest.raises(EmbeddingError):
        triangulate(trace_faces(g, rot))


def _check_partition(g, rot):
    e = trace_faces(g, rot)
    part, td = planar_geodesic_partition(g, e, check=True)
    part.check_paths(g)
    assert sorted(v for q in part.parts for v in q.vertices) == list(range(g.n))
    assert all(is_geodesic(g, q.vertices) for q in part.parts)
    st_ = validate_td(quotient(g, part), td)
    assert st_.valid and st_.width <= 8
    return part, td


def test_partition_of_triangle():
    part, td = _check_partition(cycle(3), cycle_rotation(3))
    assert len(part) == 3


def test_partition_of_k4():
    _check_partition(complete(4), k4_rotation())


def test_partition_of_grid():
    g, rot = grid(10, 10)
    _check_partition(g, rot)


def test_partition_tiny_graphs():
    for n in (1, 2):
        g = Graph.from_edges(n, [(0, 1)] if n == 2 else [])
        part, td = planar_geodesic_partition(g, trace_faces(g, [[1], [0]] if n == 2 else [[]]))
        assert len(part) == n


def test_partition_rejects_torus_and_disconnected():
    g, rot = toroidal_grid(4, 4)
    with pytest.raises(EmbeddingError):
        planar_geodesic_partition(g, trace_faces(g, rot))
    two = Graph.from_edges(4, [(0, 1), (2, 3)])
    fake = trace_faces(Graph.from_edges(2, [(0, 1)]), [[1], [0]])
    with pytest.raises((GraphError, EmbeddingError)):
        planar_geodesic_partition(two, fake)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(4, 150), seed=st.integers(0, 10**6), keep=st.floats(0.0, 1.0))
def test_partition_property(n, seed, keep):
    g, rot = delaunay(n, seed)
    h, hrot = thin_planar(g, rot, keep, seed)
    _check_partition(h, hrot)


def test_rotation_round_trip():
    rot = k4_rotation()
    assert parse_rotation(format_rotation(rot), 4) == rot


def test_restrict_rotation():
    g, rot = grid(3, 3)
    keep = [0, 1, 3, 4]
    sub = restrict_rotation(rot, keep)
    h, _ = g.induced(keep)
    e = trace_faces(h, sub)
    assert e.euler_genus == 0


def test_parse_rotation_errors():
    with pytest.raises(EmbeddingError):
        parse_rotation("1 x\n0\n", 2)
    with pytest.raises(EmbeddingError):
        parse_rotation("1\n", 2)
