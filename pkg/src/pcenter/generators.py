"""Instance generators for tests, benchmarks and the CLI ``bench`` command.

Grids and tori come with their natural rotation systems. ``delaunay`` needs
scipy, imported on first use.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

from .graph import Graph
from .treedecomp import TreeDecomposition


def grid(rows: int, cols: int) -> tuple[Graph, list[list[int]]]:
    """``rows x cols`` grid; vertex ``r*cols + c``; rotation east, north, west, south."""
    rot = []
    for r in range(rows):
        for c in range(cols):
            nb = []
            for dr, dc in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols:
                    nb.append(rr * cols + cc)
            rot.append(nb)
    g = Graph(rows * cols, [sorted(nb) for nb in rot])
    return g, rot


def toroidal_grid(rows: int, cols: int) -> tuple[Graph, list[list[int]]]:
    """Grid with wrap-around edges, embedded on the torus (needs ``rows, cols >= 3``)."""
    if rows < 3 or cols < 3:
        raise ValueError("toroidal grids need at least 3 rows and columns")
    rot = []
    for r in range(rows):
        for c in range(cols):
            rot.append([
                r * cols + (c + 1) % cols,
                ((r + 1) % rows) * cols + c,
                r * cols + (c - 1) % cols,
                ((r - 1) % rows) * cols + c,
            ])
    g = Graph(rows * cols, [sorted(nb) for nb in rot])
    return g, rot


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def cycle_rotation(n: int) -> list[list[int]]:
    return [[(i + 1) % n, (i - 1) % n] if n > 2 else [j for j in range(n) if j != i] for i in range(n)]


def delaunay(n: int, seed: int = 0) -> tuple[Graph, list[list[int]]]:
    """Delaunay triangulation of ``n`` random points, rotations sorted by angle."""
    import numpy as np
    from scipy.spatial import Delaunay

    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    tri = Delaunay(pts)
    edges = set()
    for s in tri.simplices:
        for i in range(3):
            a, b = int(s[i]), int(s[(i + 1) % 3])
            edges.add((min(a, b), max(a, b)))
    g = Graph.from_edges(n, edges)
    rot = []
    for v in range(n):
        x0, y0 = pts[v]
        rot.append(sorted(g.adj[v], key=lambda w: math.atan2(pts[w][1] - y0, pts[w][0] - x0)))
    return g, rot


def thin_planar(g: Graph, rot: list[list[int]], keep: float, seed: int = 0) -> tuple[Graph, list[list[int]]]:
    """Delete random edges (keeping a spanning tree) from an embedded graph."""
    rng = random.Random(seed)
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = g.edges()
    rng.shuffle(edges)
    kept = set()
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            kept.add((u, v))
        elif rng.random() < keep:
            kept.add((u, v))
    h = Graph.from_edges(g.n, kept)
    return h, [[w for w in r if h.has_edge(v, w)] for v, r in enumerate(rot)]


def partial_ktree(n: int, k: int, seed: int = 0, keep: float = 0.8) -> tuple[Graph, TreeDecomposition]:
    """Random partial ``k``-tree on ``n >= k+1`` vertices with a width-``k`` decomposition."""
    rng = random.Random(seed)
    if n < k + 1:
        raise ValueError("need n >= k+1")
    base = tuple(range(k + 1))
    edges = {(a, b) for a in base for b in base if a < b}
    bags = [frozenset(base)]
    parent = [-1]
    cliques = [(frozenset(c), 0) for c in _k_subsets(base, k)]
    for v in range(k + 1, n):
        clique, home = cliques[rng.randrange(len(cliques))]
        bags.append(clique | {v})
        parent.append(home)
        node = len(bags) - 1
        for a in clique:
            edges.add((a, v))
        for drop in clique:
            cliques.append(((clique - {drop}) | {v}, node))
    kept = [e for e in sorted(edges) if rng.random() < keep]
    return Graph.from_edges(n, kept), TreeDecomposition(tuple(bags), tuple(parent))


def _k_subsets(items, k):
    return [set(c) for c in combinations(items, k)]


def random_tree(n: int, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [(v, rng.randrange(v)) for v in range(1, n)])


def tree_decomposition_of_tree(g: Graph) -> TreeDecomposition:
    """Width-1 decomposition of a forest: one bag per edge plus singletons."""
    bags: list[frozenset[int]] = []
    parent: list[int] = []
    node_of: dict[int, int] = {}
    for comp in g.components():
        r = comp[0]
        bags.append(frozenset((r,)))
        parent.append(0 if bags[:-1] else -1)
        node_of[r] = len(bags) - 1
        queue = [r]
        seen = {r}
        for u in queue:
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    bags.append(frozenset((u, w)))
                    parent.append(node_of[u])
                    node_of[w] = len(bags) - 1
                    queue.append(w)
    return TreeDecomposition(tuple(bags), tuple(parent))
