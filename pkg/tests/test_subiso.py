import random
from itertools import product

import pytest

from pcenter.generators import cycle, delaunay, grid, path, thin_planar
from pcenter.graph import Graph
from pcenter.lifting import planar_centered_coloring
from pcenter.subiso import (
    TreedepthHost,
    automorphisms,
    compliant_family,
    is_embedding,
    naive_subgraph_isomorphism,
    si_compliant,
    subgraph_isomorphism,
)
from pcenter.treedecomp import greedy_decomposition, treewidth_centered_coloring
from pcenter.verify import NotCenteredError, treedepth_forest_from_coloring
from pcenter.coloring import Coloring

from .helpers import complete, random_connected_pattern, random_graph


def treewidth_colorer(g, p):
    return treewidth_centered_coloring(g, greedy_decomposition(g), p)


def planar_colorer(rot):
    return lambda g, p: planar_centered_coloring(g, rot, p)


def test_exhaustive_family_is_every_map():
    fam = list(compliant_family(3, [0, 1]))
    assert len(fam) == 8 and len(set(fam)) == 8


def test_surjective_and_candidates():
    fam = list(compliant_family(3, [0, 1], surjective=True))
    assert len(fam) == 6
    fam = list(compliant_family(2, [0, 1], candidates=[[0], [0, 1]]))
    assert fam == [(0, 0), (0, 1)]


def test_family_errors():
    with pytest.raises(ValueError):
        list(compliant_family(3, []))
    with pytest.raises(ValueError):
        list(compliant_family(3, [0], mode="magic"))
    with pytest.raises(ValueError):
        list(compliant_family(3, [0], mode="randomized", trials=0))


def test_randomized_family_is_reproducible():
    a = list(compliant_family(6, [0, 1, 2], "randomized", seed=4, trials=5))
    b = list(compliant_family(6, [0, 1, 2], "randomized", seed=4, trials=5))
    assert a == b


def test_randomized_family_covers_fixed_injection():
    # a fixed injection on a 3-subset of 5 vertices must appear for (almost) every seed
    target = {0: 2, 2: 0, 4: 1}
    seeds = 150
    hits = 0
    for seed in range(seeds):
        fam = compliant_family(5, [0, 1, 2], "randomized", seed=seed, trials=20)
        if any(all(a[v] == x for v, x in target.items()) for a in fam):
            hits += 1
    assert hits / seeds >= 0.999


def test_single_trial_injectivity_rate():
    rng = random.Random(0)
    p = 5
    ok = 0
    runs = 4000
    for _ in range(runs):
        f = [rng.randrange(p * p) for _ in range(p)]
        ok += len(set(f)) == p
    assert ok / runs >= 0.5


def test_automorphisms():
    assert len(automorphisms(cycle(4))) == 8
    assert len(automorphisms(path(3))) == 2
    assert len(automorphisms(complete(4))) == 24


def _brute_compliant(h, g, alpha):
    pools = [[v for v in range(g.n) if alpha[v] == x] for x in range(h.n)]
    for pick in product(*pools):
        if all(g.has_edge(pick[a], pick[b]) for a, b in h.edges()):
            return True
    return False


@pytest.mark.parametrize("seed", range(40))
def test_compliant_search_matches_brute_force(seed):
    rng = random.Random(seed)
    p = rng.randint(2, 4)
    h = random_connected_pattern(p, rng, rng.randint(0, 2))
    g = random_graph(rng.randint(p, 10), 0.4, seed)
    col = treewidth_colorer(g, p)
    forest = treedepth_forest_from_coloring(g, col, range(col.num_colors))
    for _ in range(10):
        alpha = tuple(rng.randrange(p) for _ in range(g.n))
        res = si_compliant(h, TreedepthHost(g, forest, alpha), instrument=True)
        assert res.found == _brute_compliant(h, g, alpha)
        assert res.stats.repeated_keys == 0
        assert res.stats.max_depth <= res.stats.forest_depth == forest.depth
        if res.found:
            assert is_embedding(h, g, res.embedding)
            assert all(alpha[v] == x for x, v in res.embedding.items())


def test_compliant_rejects_bad_forest():
    g = path(3)
    from pcenter.verify import TreedepthForest

    flat = TreedepthForest((0, 1, 2), {0: None, 1: None, 2: None}, 1)
    with pytest.raises(ValueError):
        si_compliant(path(2), TreedepthHost(g, flat, (0, 1, 0)))


def test_c4_in_grid():
    g, rot = grid(3, 3)
    res = subgraph_isomorphism(cycle(4), g, planar_colorer(rot), verify=True)
    assert res.found and is_embedding(cycle(4), g, res.embedding)


def test_k5_not_in_planar_host():
    g, rot = delaunay(25, 1)
    res = subgraph_isomorphism(complete(5), g, planar_colorer(rot))
    assert not res.found


def test_triangle_not_in_grid():
    g, rot = grid(4, 4)
    assert not subgraph_isomorphism(cycle(3), g, planar_colorer(rot)).found


def test_disconnected_pattern():
    h = Graph.from_edges(4, [(0, 1), (2, 3)])
    g, rot = grid(2, 3)
    res = subgraph_isomorphism(h, g, planar_colorer(rot))
    assert res.found and is_embedding(h, g, res.embedding)
    assert not subgraph_isomorphism(h, path(3), treewidth_colorer).found


def test_driver_argument_errors():
    with pytest.raises(ValueError):
        subgraph_isomorphism(Graph.from_edges(0, []), path(3), treewidth_colorer)
    with pytest.raises(ValueError):
        subgraph_isomorphism(path(3), path(5), treewidth_colorer, p_override=2)
    bad = lambda g, p: Coloring((0,) * g.n, 1)
    with pytest.raises(NotCenteredError):
        subgraph_isomorphism(path(3), path(5), bad, verify=True)


@pytest.mark.parametrize("seed", range(30))
def test_agrees_with_naive_matcher(seed):
    rng = random.Random(seed)
    p = rng.randint(2, 5)
    h = random_connected_pattern(p, rng, rng.randint(0, 3))
    g, rot = delaunay(rng.randint(p + 1, 20), seed)
    g, rot = thin_planar(g, rot, rng.random(), seed)
    res = subgraph_isomorphism(h, g, planar_colorer(rot), instrument=True)
    truth = naive_subgraph_isomorphism(h, g)
    assert res.found == (truth is not None)
    assert res.stats.repeated_keys == 0
    if res.found:
        assert is_embedding(h, g, res.embedding)


def test_randomized_mode_finds_path():
    g, rot = grid(4, 4)
    res = subgraph_isomorphism(path(4), g, planar_colorer(rot), mode="randomized", trials=20, seed=3)
    assert res.found


def test_naive_matcher():
    assert naive_subgraph_isomorphism(cycle(4), complete(4)) is not None
    assert naive_subgraph_isomorphism(complete(4), cycle(4)) is None
    assert not is_embedding(path(2), path(3), {0: 0, 1: 2})
