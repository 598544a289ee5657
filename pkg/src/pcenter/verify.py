"""Exact p-centredness checks, treedepth forests from colourings, and oracles.

The exact check never enumerates connected subgraphs. For every connected set
``X`` of at most ``p`` colours it peels the components of ``G[c^-1(X)]``:
delete the uniquely coloured vertices, split, repeat. A component that has no
unique colour is a counterexample, and if none appears then every connected
subgraph with colours inside ``X`` has a unique colour (its component's
unique vertex is either inside it or can be deleted without touching it).
Only the maximal sets need checking, so ``X`` ranges over connected colour
sets of size exactly ``p`` plus colour components smaller than ``p``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .coloring import Coloring
from .graph import Graph


class NotCenteredError(ValueError):
    def __init__(self, message: str, witness: Sequence[int] = ()):
        super().__init__(message)
        self.witness = tuple(witness)


@dataclass(frozen=True)
class CenteredVerdict:
    ok: bool
    counterexample: tuple[int, ...] | None = None
    colors: dict[int, int] | None = None
    heuristic: bool = False

    def __bool__(self) -> bool:
        return self.ok


def _check_inputs(g: Graph, c: Coloring, p: int) -> None:
    if p < 1:
        raise ValueError("p must be at least 1")
    if len(c) != g.n:
        raise ValueError(f"colouring covers {len(c)} vertices, graph has {g.n}")


def color_graph(g: Graph, c: Coloring) -> list[list[int]]:
    """Adjacency of colours: two colours touch when an edge joins their classes."""
    nbrs: list[set[int]] = [set() for _ in range(c.num_colors)]
    for u, v in g.edges():
        a, b = c[u], c[v]
        if a != b:
            nbrs[a].add(b)
            nbrs[b].add(a)
    return [sorted(s) for s in nbrs]


def _color_components(cadj: list[list[int]], used: Sequence[int]) -> list[list[int]]:
    seen = set()
    comps = []
    for s in used:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        for a in comp:
            for b in cadj[a]:
                if b not in seen:
                    seen.add(b)
                    comp.append(b)
        comps.append(sorted(comp))
    return comps


def connected_subsets(adj: list[list[int]], k: int, within: Iterable[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Every connected vertex set of size ``k`` exactly once (ESU enumeration)."""
    nodes = sorted(within) if within is not None else range(len(adj))
    allowed = set(nodes)

    def extend(sub: list[int], subset: set[int], ext: list[int], root: int, blocked: set[int]):
        if len(sub) == k:
            yield tuple(sorted(sub))
            return
        ext = list(ext)
        while ext:
            w = ext.pop(0)
            new_ext = list(ext)
            excl = set()
            for x in adj[w]:
                if x > root and x in allowed and x not in subset and x not in blocked:
                    new_ext.append(x)
                    excl.add(x)
            subset.add(w)
            sub.append(w)
            yield from extend(sub, subset, new_ext, root, blocked | excl | {w})
            sub.pop()
            subset.discard(w)

    for v in nodes:
        first = [x for x in adj[v] if x > v and x in allowed]
        yield from extend([v], {v}, first, v, set(first) | {v})


def candidate_color_sets(g: Graph, c: Coloring, p: int) -> Iterator[tuple[int, ...]]:
    """The maximal colour sets the exact check has to examine."""
    cadj = color_graph(g, c)
    used = sorted(set(c.color))
    for comp in _color_components(cadj, used):
        if len(comp) <= p:
            yield tuple(comp)
        else:
            yield from connected_subsets(cadj, p, comp)


def _fails(g: Graph, c: Coloring, p: int, verts: Iterable[int]) -> list[int] | None:
    """A component of ``G[verts]`` that is a counterexample, if any."""
    for comp in g.components(verts):
        counts = Counter(c[v] for v in comp)
        if len(counts) <= p and 1 not in counts.values():
            return comp
    return None


def _shrink(g: Graph, c: Coloring, p: int, comp: list[int]) -> list[int]:
    cur = sorted(comp)
    changed = True
    while changed:
        changed = False
        for v in cur:
            rest = [u for u in cur if u != v]
            smaller = _fails(g, c, p, rest) if rest else None
            if smaller is not None:
                cur = smaller
                changed = True
                break
    return cur


def check_p_centered(g: Graph, c: Coloring, p: int, *, minimize: bool = True, impl=None) -> CenteredVerdict:
    _check_inputs(g, c, p)
    colors = np.asarray(c.color, dtype=np.int32)
    for xs in candidate_color_sets(g, c, p):
        active = np.isin(colors, xs).astype(np.int8)
        bad = kernels.centered_failure(g, colors, active, c.num_colors, impl=impl)
        if bad:
            if minimize:
                bad = _shrink(g, c, p, bad)
            return CenteredVerdict(False, tuple(bad), dict(Counter(c[v] for v in bad)))
    return CenteredVerdict(True)


def sampled_check(g: Graph, c: Coloring, p: int, samples: int = 1000, seed: int = 0) -> CenteredVerdict:
    """Heuristic: grow random connected subgraphs and test each.

    A pass proves nothing; a failure is a genuine counterexample.
    """
    _check_inputs(g, c, p)
    rng = random.Random(seed)
    if g.n == 0:
        return CenteredVerdict(True, heuristic=True)
    for _ in range(samples):
        start = rng.randrange(g.n)
        sub = [start]
        inside = {start}
        frontier = set(g.adj[start])
        target = rng.randint(1, g.n)
        while len(sub) < target and frontier:
            v = rng.choice(sorted(frontier))
            frontier.discard(v)
            sub.append(v)
            inside.add(v)
            frontier.update(w for w in g.adj[v] if w not in inside)
            counts = Counter(c[u] for u in sub)
            if len(counts) > p:
                break
            if 1 not in counts.values():
                bad = _shrink(g, c, p, sorted(sub))
                return CenteredVerdict(False, tuple(bad), dict(Counter(c[v] for v in bad)), True)
    return CenteredVerdict(True, heuristic=True)


# -- direct enumeration oracle ------------------------------------------------

ENUM_CAP = 9


def connected_masks(g: Graph) -> np.ndarray:
    """Bitmasks of all non-empty vertex sets inducing connected subgraphs."""
    if g.n > ENUM_CAP:
        raise ValueError(f"direct enumeration is capped at n <= {ENUM_CAP}")
    nb = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    out = []
    for mask in range(1, 1 << g.n):
        low = mask & -mask
        reach = low
        while True:
            grow = reach
            m = reach
            while m:
                b = m & -m
                grow |= nb[b.bit_length() - 1]
                m ^= b
            grow &= mask
            if grow == reach:
                break
            reach = grow
        if reach == mask:
            out.append(mask)
    return np.array(out, dtype=np.int64)


def mask_matrix(masks: np.ndarray, n: int) -> np.ndarray:
    return ((masks[:, None] >> np.arange(n)) & 1).astype(np.int32)


def enumeration_verdicts(g: Graph, colorings: np.ndarray, ps: Sequence[int], masks: np.ndarray | None = None) -> np.ndarray:
    """Direct verdicts for a batch of colourings (rows) and each ``p``.

    Returns a boolean array of shape ``(len(colorings), len(ps))``.
    """
    if masks is None:
        masks = connected_masks(g)
    colorings = np.atleast_2d(np.asarray(colorings))
    if g.n == 0 or len(masks) == 0:
        return np.ones((len(colorings), len(ps)), dtype=bool)
    mm = mask_matrix(masks, g.n)
    k = int(colorings.max()) + 1
    onehot = np.eye(k, dtype=np.int32)[colorings]  # (C, n, k)
    counts = np.einsum("mn,cnk->cmk", mm, onehot)
    distinct = (counts > 0).sum(axis=2)
    has_unique = (counts == 1).any(axis=2)
    out = np.empty((len(colorings), len(ps)), dtype=bool)
    for j, p in enumerate(ps):
        out[:, j] = ~((distinct <= p) & ~has_unique).any(axis=1)
    return out


def enumeration_check(g: Graph, c: Coloring, p: int) -> bool:
    return bool(enumeration_verdicts(g, np.array([c.color]), [p])[0, 0])


def is_proper(g: Graph, c: Coloring) -> bool:
    return all(c[u] != c[v] for u, v in g.edges())


# -- treedepth forests ----------------------------------------------------------


@dataclass(frozen=True)
class TreedepthForest:
    """Rooted forest on ``vertices``; ``parent[v]`` is ``None`` for roots."""

    vertices: tuple[int, ...]
    parent: dict[int, int | None]
    depth: int

    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {v: [] for v in self.vertices}
        for v in self.vertices:
            par = self.parent[v]
            if par is not None:
                ch[par].append(v)
        return ch

    def roots(self) -> list[int]:
        return [v for v in self.vertices if self.parent[v] is None]

    def ancestors(self, v: int) -> list[int]:
        out = []
        while (v := self.parent[v]) is not None:
            out.append(v)
        return out

    def level(self, v: int) -> int:
        return len(self.ancestors(v)) + 1


def closure_contains(g: Graph, f: TreedepthForest) -> bool:
    """Every edge of ``G[f.vertices]`` joins an ancestor-descendant pair."""
    inside = set(f.vertices)
    anc = {v: set(f.ancestors(v)) for v in f.vertices}
    for u in f.vertices:
        for w in g.adj[u]:
            if w in inside and u < w and w not in anc[u] and u not in anc[w]:
                return False
    return True


def treedepth_forest_from_coloring(g: Graph, c: Coloring, x: Iterable[int], p: int | None = None) -> TreedepthForest:
    """Treedepth decomposition of ``G[c^-1(x)]`` read off a centred colouring.

    In each component the uniquely coloured vertex (smallest id on ties) is
    the root; the rest splits into components that lack its colour.
    """
    xs = set(x)
    if p is not None and len(xs) > p:
        raise ValueError(f"|x|={len(xs)} exceeds p={p}")
    verts = [v for v in range(g.n) if c[v] in xs]
    parent: dict[int, int | None] = {}
    depth = 0
    stack = [(comp, None, 1) for comp in g.components(verts)]
    while stack:
        comp, par, level = stack.pop()
        counts = Counter(c[v] for v in comp)
        root = next((v for v in comp if counts[c[v]] == 1), None)
        if root is None:
            raise NotCenteredError("component without a unique colour; colouring is not centred", comp)
        parent[root] = par
        depth = max(depth, level)
        rest = [v for v in comp if v != root]
        for sub in g.components(rest):
            stack.append((sub, root, level + 1))
    return TreedepthForest(tuple(verts), parent, depth)


# -- exact minimum oracle -------------------------------------------------------

MIN_COLORS_CAP = 12


def _bfs_order(g: Graph) -> list[int]:
    order: list[int] = []
    seen = set()
    for s in range(g.n):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        for u in queue:
            order.append(u)
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _prefix_ok(g: Graph, order: list[int], colors: list[int], i: int, p: int) -> bool:
    """Check only subgraphs of the coloured prefix that contain ``order[i]``."""
    prefix = order[: i + 1]
    sub, verts = g.induced(prefix)
    col = Coloring(tuple(colors[v] for v in verts), max(colors[v] for v in verts) + 1)
    new = verts.index(order[i])
    cnew = col[new]
    cadj = color_graph(sub, col)
    colors_arr = np.asarray(col.color, dtype=np.int32)
    for comp in _color_components(cadj, sorted(set(col.color))):
        if cnew not in comp:
            continue
        if len(comp) <= p:
            sets = [tuple(comp)]
        else:
            sets = (s for s in connected_subsets(cadj, p, comp) if cnew in s)
        for xs in sets:
            active = np.isin(colors_arr, xs).astype(np.int8)
            if kernels.centered_failure(sub, colors_arr, active, col.num_colors):
                return False
    return True


def min_p_centered_coloring(g: Graph, p: int) -> Coloring:
    """An optimal ``p``-centred colouring, found by exhaustive search.

    Backtracking in BFS order with colours in canonical order (a vertex may
    open at most one new colour), pruning any prefix that already fails.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if g.n > MIN_COLORS_CAP:
        raise ValueError(f"exact oracle is capped at n <= {MIN_COLORS_CAP}")
    if g.n == 0:
        return Coloring((), 0)
    order = _bfs_order(g)
    colors = [-1] * g.n

    def go(i: int, used: int, k: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for col in range(min(used + 1, k)):
            colors[v] = col
            if _prefix_ok(g, order, colors, i, p) and go(i + 1, max(used, col + 1), k):
                return True
        colors[v] = -1
        return False

    k = 1
    while not go(0, 0, k):
        k += 1
    return Coloring(tuple(colors), k)


def min_p_centered_colors(g: Graph, p: int) -> int:
    """Exact minimum number of colours of a ``p``-centred colouring (``n <= 12``)."""
    return min_p_centered_coloring(g, p).num_colors


def canonical_colorings(n: int, max_colors: int) -> np.ndarray:
    """All colourings of ``n`` vertices with at most ``max_colors`` colours, up to renaming."""
    rows: list[list[int]] = []

    def go(prefix: list[int], used: int):
        if len(prefix) == n:
            rows.append(list(prefix))
            return
        for col in range(min(used + 1, max_colors)):
            prefix.append(col)
            go(prefix, max(used, col + 1))
            prefix.pop()

    go([], 0)
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def all_color_subsets(num_colors: int, p: int) -> Iterator[tuple[int, ...]]:
    for size in range(1, min(p, num_colors) + 1):
        yield from combinations(range(num_colors), size)
