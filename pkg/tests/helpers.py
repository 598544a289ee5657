"""Shared instance builders for the tests."""

import random

import networkx as nx

from pcenter.graph import Graph


def from_nx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G, ordering="sorted")
    return Graph.from_edges(G.number_of_nodes(), G.edges())


def to_nx(g: Graph):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def nx_rotation(G) -> list[list[int]]:
    ok, emb = nx.check_planarity(G)
    assert ok
    return [list(emb.neighbors_cw_order(v)) for v in sorted(G.nodes())]


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def random_graph(n: int, prob: float, seed: int) -> Graph:
    return from_nx(nx.gnp_random_graph(n, prob, seed=seed))


def random_connected_pattern(p: int, rng: random.Random, extra: int) -> Graph:
    edges = {(v, rng.randrange(v)) for v in range(1, p)}
    for _ in range(extra if p > 1 else 0):
        a, b = rng.sample(range(p), 2)
        edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(p, edges)
