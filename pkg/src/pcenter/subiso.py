"""Subgraph isomorphism through centred colourings and colour coding.

For every set of ``p`` colours the host restricted to those colours has
treedepth at most ``p``, and a forest witnessing that comes straight from the
colouring. On such a forest a labelled pattern can be matched by a recursion
over subproblems ``(u, X, D, gamma)``: place the part ``X`` of the pattern in
the subtree of ``u`` given that ``D`` is already mapped by ``gamma`` onto
ancestors of ``u``. Labels ``alpha: V(G) -> V(H)`` force ``alpha(eta(x)) = x``,
which keeps independently placed pieces disjoint; label maps come from an
exhaustive or a seeded randomized family.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, Iterator, Sequence

from .coloring import Coloring
from .graph import Graph
from .verify import (
    NotCenteredError,
    TreedepthForest,
    _color_components,
    check_p_centered,
    closure_contains,
    color_graph,
    connected_subsets,
    treedepth_forest_from_coloring,
)


@dataclass(frozen=True)
class TreedepthHost:
    """Host graph with a treedepth forest over all its vertices and labels."""

    g: Graph
    forest: TreedepthForest
    alpha: tuple[int, ...]


@dataclass
class SearchStats:
    calls: int = 0
    max_depth: int = 0
    forest_depth: int = 0
    repeated_keys: int = 0
    keys: set = field(default_factory=set, repr=False)

    @property
    def unique_keys(self) -> int:
        return len(self.keys)


@dataclass
class CompliantResult:
    found: bool
    embedding: dict[int, int] | None
    stats: SearchStats

    def __bool__(self) -> bool:
        return self.found


def _mask_components(mask: int, hadj: Sequence[int]) -> list[int]:
    comps = []
    while mask:
        seed = mask & -mask
        comp = seed
        frontier = seed
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            new = hadj[b.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        mask &= ~comp
    return comps


def si_compliant(h: Graph, host: TreedepthHost, *, instrument: bool = False, validate: bool = True) -> CompliantResult:
    """Is there an embedding ``eta`` of ``h`` with ``alpha(eta(x)) = x`` for all ``x``?

    Returns the embedding (pattern vertex -> host vertex) when one exists.
    The recursion only descends the forest, so its depth is bounded by the
    forest depth. ``D`` always holds every pattern vertex already placed on
    the path to the root, so a subproblem's caller is determined by the
    subproblem itself and no key is entered twice; ``instrument`` records
    the keys to confirm it.
    """
    g, f, alpha = host.g, host.forest, host.alpha
    if len(alpha) != g.n or len(f.vertices) != g.n:
        raise ValueError("labels and forest must cover every host vertex")
    if validate and not closure_contains(g, f):
        raise ValueError("forest is not a treedepth decomposition of the host")
    p = h.n
    hadj = [sum(1 << y for y in h.adj[x]) for x in range(p)]
    children = f.children()
    for v in children:
        children[v].sort()
    level: dict[int, int] = {}
    below: dict[int, int] = {}
    order: list[int] = []
    for r in sorted(f.roots()):
        level[r] = 1
        stack = [r]
        while stack:
            u = stack.pop()
            order.append(u)
            for c in children[u]:
                level[c] = level[u] + 1
                stack.append(c)
    for u in reversed(order):
        m = 1 << alpha[u] if 0 <= alpha[u] < p else 0
        for c in children[u]:
            m |= below[c]
        below[u] = m
    stats = SearchStats(forest_depth=max(level.values(), default=0))
    nbr = g.nbr_sets

    def val(u: int, X: int, D: int, gamma: tuple[int, ...]) -> dict[int, int] | None:
        stats.calls += 1
        if level[u] > stats.max_depth:
            stats.max_depth = level[u]
        if instrument:
            key = (u, X, D, gamma)
            if key in stats.keys:
                stats.repeated_keys += 1
            stats.keys.add(key)
        if X & ~below[u]:
            return None
        w = alpha[u]
        if 0 <= w < p and (X >> w) & 1:
            adj_d = hadj[w] & D
            ok = True
            while adj_d:
                b = adj_d & -adj_d
                adj_d ^= b
                if gamma[b.bit_length() - 1] not in nbr[u]:
                    ok = False
                    break
            if ok:
                D2 = D | (1 << w)
                g2 = gamma[:w] + (u,) + gamma[w + 1:]
                placed = {w: u}
                for Z in _mask_components(X & ~(1 << w), hadj):
                    sub = None
                    for c in children[u]:
                        sub = val(c, Z, D2, g2)
                        if sub is not None:
                            break
                    if sub is None:
                        placed = None
                        break
                    placed.update(sub)
                if placed is not None:
                    return placed
        for c in children[u]:
            sub = val(c, X, D, gamma)
            if sub is not None:
                return sub
        return None

    embedding: dict[int, int] = {}
    empty = (-1,) * p
    for C in _mask_components((1 << p) - 1, hadj):
        sub = None
        for r in sorted(f.roots()):
            sub = val(r, C, 0, empty)
            if sub is not None:
                break
        if sub is None:
            return CompliantResult(False, None, stats)
        embedding.update(sub)
    return CompliantResult(True, dict(sorted(embedding.items())), stats)


# -- label families ---------------------------------------------------------------


def _assignments(groups: Sequence[Sequence[int]], choices: Sequence[Sequence[int]], labels: Sequence[int], surjective: bool) -> Iterator[list[int]]:
    """One label per group from its choices; optionally every label used."""
    k = len(groups)
    need_all = set(labels) if surjective else set()
    pick = [0] * k

    def go(i: int, used: dict[int, int]) -> Iterator[list[int]]:
        if surjective:
            missing = sum(1 for x in need_all if not used.get(x))
            if missing > k - i:
                return
        if i == k:
            yield list(pick)
            return
        for lab in choices[i]:
            pick[i] = lab
            used[lab] = used.get(lab, 0) + 1
            yield from go(i + 1, used)
            used[lab] -= 1

    yield from go(0, {})


def compliant_family(
    g_size: int,
    h_vertices: Sequence[int],
    mode: str = "exhaustive",
    seed: int = 0,
    trials: int = 20,
    *,
    candidates: Sequence[Sequence[int]] | None = None,
    surjective: bool = False,
) -> Iterator[tuple[int, ...]]:
    """Label maps ``alpha: {0..g_size-1} -> h_vertices``, deduplicated.

    ``exhaustive`` yields every map. ``randomized`` draws ``trials`` maps
    ``f`` into ``p*p`` buckets and yields every relabelling of the occupied
    buckets; a random ``f`` is injective on a fixed ``p``-set with
    probability at least 1/2, so each injection is covered with probability
    at least ``1 - 2**-trials``. ``candidates`` and ``surjective`` drop maps
    that cannot carry a compliant embedding.
    """
    labels = list(h_vertices)
    p = len(labels)
    if p < 1:
        raise ValueError("the pattern needs at least one vertex")
    if mode not in ("exhaustive", "randomized"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "randomized" and trials < 1:
        raise ValueError("trials must be at least 1")
    cand = [list(c) for c in candidates] if candidates is not None else [labels] * g_size
    seen: set[tuple[int, ...]] = set()
    if mode == "exhaustive":
        partitions = [[[v] for v in range(g_size)]]
    else:
        rng = random.Random(seed)
        partitions = []
        for _ in range(trials):
            f = [rng.randrange(p * p) for _ in range(g_size)]
            buckets: dict[int, list[int]] = {}
            for v, b in enumerate(f):
                buckets.setdefault(b, []).append(v)
            partitions.append([buckets[b] for b in sorted(buckets)])
    for groups in partitions:
        choices = []
        for grp in groups:
            allowed = set(labels)
            for v in grp:
                allowed &= set(cand[v])
            choices.append(sorted(allowed))
        for pick in _assignments(groups, choices, labels, surjective):
            alpha = [0] * g_size
            for grp, lab in zip(groups, pick):
                for v in grp:
                    alpha[v] = lab
            t = tuple(alpha)
            if t not in seen:
                seen.add(t)
                yield t


def automorphisms(h: Graph) -> list[tuple[int, ...]]:
    """All automorphisms of a small pattern (brute force over permutations)."""
    edges = {frozenset(e) for e in h.edges()}
    degs = [h.degree(x) for x in range(h.n)]
    out = []
    for perm in permutations(range(h.n)):
        if any(degs[perm[x]] != degs[x] for x in range(h.n)):
            continue
        if all(frozenset((perm[a], perm[b])) in edges for a, b in edges):
            out.append(perm)
    return out


# -- driver -----------------------------------------------------------------------


Colorer = Callable[[Graph, int], Coloring]


@dataclass
class DriverStats:
    color_sets: int = 0
    hosts: int = 0
    label_maps: int = 0
    compliant_calls: int = 0
    max_depth: int = 0
    max_forest_depth: int = 0
    max_keys: int = 0
    repeated_keys: int = 0


@dataclass
class SubisoResult:
    found: bool
    embedding: dict[int, int] | None
    p: int
    colors: int
    stats: DriverStats

    def __bool__(self) -> bool:
        return self.found


def _core(g: Graph, verts: Iterable[int], k: int) -> set[int]:
    alive = set(verts)
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if sum(1 for w in g.adj[v] if w in alive) < k:
                alive.discard(v)
                changed = True
    return alive


def _relevant(g: Graph, verts: Iterable[int], h: Graph, min_size: int) -> list[int]:
    """Vertices that can host part of an embedding (sound pruning).

    Keeps the ``delta(h)``-core and drops its components with fewer than
    ``min_size`` vertices.
    """
    mindeg = min((h.degree(x) for x in range(h.n)), default=0)
    alive = _core(g, verts, mindeg)
    return sorted(v for comp in g.components(alive) if len(comp) >= min_size for v in comp)


def _degree_dominates(sub: Graph, h: Graph) -> bool:
    gd = sorted((sub.degree(v) for v in range(sub.n)), reverse=True)
    hd = sorted((h.degree(x) for x in range(h.n)), reverse=True)
    return len(gd) >= len(hd) and all(a >= b for a, b in zip(gd, hd))


def _color_sets(g: Graph, c: Coloring, p: int, connected: bool) -> Iterator[tuple[int, ...]]:
    used = sorted(set(c.color))
    if not connected:
        yield from combinations(used, min(p, len(used)))
        return
    cadj = color_graph(g, c)
    for comp in _color_components(cadj, used):
        if len(comp) <= p:
            yield tuple(comp)
        else:
            yield from connected_subsets(cadj, p, comp)


def subgraph_isomorphism(
    h: Graph,
    g: Graph,
    colorer: Colorer,
    p_override: int | None = None,
    *,
    mode: str = "exhaustive",
    trials: int = 20,
    seed: int = 0,
    verify: bool = False,
    instrument: bool = False,
    use_symmetry: bool = True,
) -> SubisoResult:
    """Decide whether ``h`` is a subgraph of ``g``.

    ``colorer(g, p)`` must return a ``p``-centred colouring with
    ``p >= |V(h)|``. For a connected pattern only connected colour sets are
    tried (the image's colours are connected in the colour graph and lie in
    some maximal one); otherwise every ``p``-subset of colours is.
    Within each, hosts are pruned to vertices that can carry part of an
    embedding and label maps are restricted to degree-compatible, surjective
    maps taken up to automorphisms of ``h``.
    """
    if h.n == 0:
        raise ValueError("the pattern must have at least one vertex")
    p = h.n if p_override is None else p_override
    if p < h.n:
        raise ValueError(f"p={p} is smaller than the pattern size {h.n}")
    stats = DriverStats()
    col = colorer(g, p)
    if len(col) != g.n:
        raise ValueError("colourer returned a colouring of the wrong size")
    if verify:
        verdict = check_p_centered(g, col, p)
        if not verdict.ok:
            raise NotCenteredError("colourer output is not p-centred", verdict.counterexample or ())
    if h.m > g.m or h.n > g.n:
        return SubisoResult(False, None, p, col.num_colors, stats)
    h_comps = h.components()
    h_connected = len(h_comps) == 1
    min_size = h.n if h_connected else min(len(cc) for cc in h_comps)
    hdeg = [h.degree(x) for x in range(h.n)]
    autos = automorphisms(h) if use_symmetry else [tuple(range(h.n))]
    seen_sets: set[tuple[int, ...]] = set()
    labels = list(range(h.n))
    for xs in _color_sets(g, col, p, h_connected):
        stats.color_sets += 1
        xset = set(xs)
        verts = [v for v in range(g.n) if col[v] in xset]
        rel = _relevant(g, verts, h, min_size)
        if len(rel) < h.n:
            continue
        key = tuple(rel)
        if key in seen_sets:
            continue
        seen_sets.add(key)
        sub, vmap = g.induced(rel)
        if sub.m < h.m or not _degree_dominates(sub, h):
            continue
        stats.hosts += 1
        sub_col = col.restrict(vmap)
        forest_local = treedepth_forest_from_coloring(sub, sub_col, range(sub_col.num_colors))
        cand = [[x for x in labels if hdeg[x] <= sub.degree(v)] for v in range(sub.n)]
        for alpha in compliant_family(sub.n, labels, mode, seed, trials, candidates=cand, surjective=True):
            if len(autos) > 1 and any(tuple(a[x] for x in alpha) < alpha for a in autos):
                continue
            stats.label_maps += 1
            host = TreedepthHost(sub, forest_local, alpha)
            res = si_compliant(h, host, instrument=instrument, validate=False)
            stats.compliant_calls += 1
            st = res.stats
            stats.max_depth = max(stats.max_depth, st.max_depth)
            stats.max_forest_depth = max(stats.max_forest_depth, st.forest_depth)
            stats.max_keys = max(stats.max_keys, st.unique_keys)
            stats.repeated_keys += st.repeated_keys
            if res.found:
                emb = {x: vmap[v] for x, v in res.embedding.items()}
                return SubisoResult(True, emb, p, col.num_colors, stats)
    return SubisoResult(False, None, p, col.num_colors, stats)


# -- reference matcher ------------------------------------------------------------


def naive_subgraph_isomorphism(h: Graph, g: Graph) -> dict[int, int] | None:
    """Plain backtracking matcher, used as ground truth."""
    if h.n == 0:
        return {}
    order: list[int] = []
    seen = set()
    for s in sorted(range(h.n), key=lambda x: -h.degree(x)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        for x in queue:
            order.append(x)
            for y in sorted(h.adj[x], key=lambda y: -h.degree(y)):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def go(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        mapped_nbrs = [mapping[y] for y in h.adj[x] if y in mapping]
        if mapped_nbrs:
            pool = [v for v in g.adj[mapped_nbrs[0]] if all(g.has_edge(v, m) for m in mapped_nbrs[1:])]
        else:
            pool = range(g.n)
        for v in pool:
            if v in used or g.degree(v) < h.degree(x):
                continue
            mapping[x] = v
            used.add(v)
            if go(i + 1):
                return True
            del mapping[x]
            used.discard(v)
        return False

    return dict(sorted(mapping.items())) if go(0) else None


def is_embedding(h: Graph, g: Graph, emb: dict[int, int]) -> bool:
    if sorted(emb) != list(range(h.n)) or len(set(emb.values())) != h.n:
        return False
    return all(g.has_edge(emb[a], emb[b]) for a, b in h.edges())
