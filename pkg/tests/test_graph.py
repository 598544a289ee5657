import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcenter.generators import cycle, path
from pcenter.graph import (
    Graph,
    GraphError,
    Partition,
    UnreachableError,
    bfs_layering,
    format_edge_list,
    format_partition,
    is_geodesic,
    parse_edge_list,
    parse_partition,
    quotient,
    shortest_path,
)

from .helpers import complete, random_graph, to_nx


def test_layering_path():
    lay = bfs_layering(path(4), 0)
    assert lay.layers == ((0,), (1,), (2,), (3,))
    assert lay.eccentricity == 3


def test_layering_cycle():
    assert bfs_layering(cycle(4), 0).layers == ((0,), (1, 3), (2,))


def test_layering_complete():
    assert bfs_layering(complete(4), 2).layers == ((2,), (0, 1, 3))


def test_layering_bad_root():
    with pytest.raises(GraphError):
        bfs_layering(path(3), 3)


def test_shortest_path_tie_break():
    assert shortest_path(cycle(6), 0, 3).vertices == (0, 1, 2, 3)


def test_shortest_path_identity():
    sp = shortest_path(cycle(5), 2, 2)
    assert sp.vertices == (2,) and sp.is_geodesic


def test_shortest_path_unique():
    sp = shortest_path(path(4), 0, 3)
    assert sp.vertices == (0, 1, 2, 3) and sp.length == 3


def test_unreachable():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(UnreachableError):
        shortest_path(g, 0, 3)


def test_quotient_examples():
    q = quotient(cycle(4), Partition.from_parts(4, [[0, 1], [2, 3]]))
    assert q == Graph.from_edges(2, [(0, 1)])
    q = quotient(path(4), Partition.from_parts(4, [[0], [1, 2], [3]]))
    assert q == path(3)


def test_partition_validation():
    with pytest.raises(GraphError):
        Partition.from_parts(3, [[0, 1], [1, 2]])
    with pytest.raises(GraphError):
        Partition.from_parts(3, [[0, 1]])


def test_graph_rejects_loops():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])


@pytest.mark.parametrize("seed", range(15))
def test_layers_match_all_pairs_oracle(seed):
    rng = random.Random(seed)
    g = random_graph(rng.randint(1, 50), rng.choice([0.05, 0.1, 0.3]), seed)
    dist = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    for root in range(0, g.n, 7):
        lay = bfs_layering(g, root)
        for i, layer in enumerate(lay.layers):
            for v in layer:
                assert dist[root][v] == i
        assert sum(map(len, lay.layers)) == len(dist[root])


def test_shortest_path_samples():
    rng = random.Random(7)
    checked = 0
    graphs = [random_graph(30, 0.12, s) for s in range(20)]
    dists = [dict(nx.all_pairs_shortest_path_length(to_nx(g))) for g in graphs]
    while checked < 1000:
        i = rng.randrange(len(graphs))
        g, dist = graphs[i], dists[i]
        u, v = rng.randrange(g.n), rng.randrange(g.n)
        if v not in dist[u]:
            continue
        sp = shortest_path(g, u, v)
        assert sp.length == dist[u][v] == bfs_layering(g, u).dist[v]
        assert is_geodesic(g, sp.vertices)
        checked += 1


@given(st.integers(1, 12), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_singleton_quotient_is_identity(n, seed):
    g = random_graph(n, 0.4, seed)
    assert quotient(g, Partition.singletons(n)) == g


@given(st.integers(1, 15), st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_edge_list_round_trip(n, seed):
    g = random_graph(n, 0.3, seed)
    assert parse_edge_list(format_edge_list(g)) == g


def test_edge_list_comments_and_count():
    g = parse_edge_list("# a triangle\n3 3\n0 1\n1 2 # closing\n2 0\n")
    assert g == complete(3)
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n")


def test_partition_round_trip():
    p = Partition.from_parts(5, [[0, 1], [2], [4, 3]])
    assert parse_partition(format_partition(p), 5) == p


def test_is_geodesic():
    assert is_geodesic(cycle(6), [0, 1, 2, 3])
    assert not is_geodesic(cycle(6), [0, 1, 2, 3, 4])
    assert not is_geodesic(cycle(6), [0, 2])
