"""Rooted tree decompositions, skeleton DAGs and the colorings built on them.

The central pipeline is ``treewidth_centered_coloring``: normalize the
decomposition so every bag introduces at most one vertex, build the skeleton
DAG (arcs from each introduced vertex to its node's adhesion set) and colour
it greedily so that vertices within ``p`` skeleton steps get distinct colours.
That uses at most ``C(p+k, k)`` colours for adhesion ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Callable, Iterable, Sequence

from .coloring import Coloring, canonicalize
from .graph import Graph


class DecompositionError(ValueError):
    """Invalid tree decomposition; ``witness`` names the offending object."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    parent: tuple[int, ...]

    @classmethod
    def build(cls, bags: Sequence[Iterable[int]], parent: Sequence[int]) -> "TreeDecomposition":
        return cls(tuple(frozenset(b) for b in bags), tuple(parent))

    def __len__(self) -> int:
        return len(self.bags)

    @cached_property
    def root(self) -> int:
        roots = [x for x, p in enumerate(self.parent) if p < 0]
        if len(roots) != 1:
            raise DecompositionError(f"expected exactly one root, found {len(roots)}")
        return roots[0]

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for x, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(x)
        return tuple(tuple(c) for c in ch)

    @cached_property
    def preorder(self) -> tuple[int, ...]:
        order = [self.root]
        for x in order:
            order.extend(self.children[x])
        if len(order) != len(self.bags):
            raise DecompositionError("parent pointers do not form a tree")
        return tuple(order)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        d = [0] * len(self.bags)
        for x in self.preorder:
            if self.parent[x] >= 0:
                d[x] = d[self.parent[x]] + 1
        return tuple(d)

    @cached_property
    def adhesions(self) -> tuple[frozenset[int], ...]:
        return tuple(
            b & self.bags[p] if p >= 0 else frozenset()
            for b, p in zip(self.bags, self.parent)
        )

    @cached_property
    def margins(self) -> tuple[frozenset[int], ...]:
        return tuple(b - a for b, a in zip(self.bags, self.adhesions))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def adhesion(self) -> int:
        return max((len(a) for a in self.adhesions), default=0)

    def home(self, n: int) -> list[int]:
        """``home[u]``: the unique topmost node whose bag contains ``u``."""
        home = [-1] * n
        for x, mu in enumerate(self.margins):
            for u in mu:
                home[u] = x
        return home

    def is_ancestor(self, x: int, y: int) -> bool:
        """``x`` is an ancestor of ``y`` (or equal)."""
        while self.depth[y] > self.depth[x]:
            y = self.parent[y]
        return x == y


@dataclass(frozen=True)
class TDStats:
    valid: bool
    width: int
    adhesion: int
    reason: str = ""
    witness: object = None


def validate_td(g: Graph, td: TreeDecomposition) -> TDStats:
    """Check the two decomposition conditions and report width and adhesion.

    (T1) the nodes whose bag holds ``u`` form a non-empty connected subtree;
    (T2) every edge lies inside some bag.
    """
    if len(td.parent) != len(td.bags) or not td.bags:
        return TDStats(False, -1, -1, "empty decomposition or parent list mismatch")
    for x, p in enumerate(td.parent):
        if p >= len(td.bags) or p == x:
            return TDStats(False, -1, -1, "bad parent pointer", x)
    try:
        td.preorder
    except DecompositionError as exc:
        return TDStats(False, -1, -1, str(exc))
    for x, bag in enumerate(td.bags):
        bad = [v for v in bag if not 0 <= v < g.n]
        if bad:
            return TDStats(False, -1, -1, f"bag {x} holds out-of-range vertex", bad[0])
    tops = [0] * g.n
    nodes_of: list[list[int]] = [[] for _ in range(g.n)]
    for x, mu in enumerate(td.margins):
        for u in mu:
            tops[u] += 1
    for x, bag in enumerate(td.bags):
        for u in bag:
            nodes_of[u].append(x)
    for u in range(g.n):
        if tops[u] != 1:
            what = "in no bag" if tops[u] == 0 else "in a disconnected set of bags"
            return TDStats(False, td.width, td.adhesion, f"(T1) vertex {u} is {what}", u)
    for u, v in g.edges():
        small, other = (u, v) if len(nodes_of[u]) <= len(nodes_of[v]) else (v, u)
        if not any(other in td.bags[x] for x in nodes_of[small]):
            return TDStats(False, td.width, td.adhesion, f"(T2) edge {u}-{v} is in no bag", (u, v))
    return TDStats(True, td.width, td.adhesion)


def _require_valid(g: Graph, td: TreeDecomposition) -> TDStats:
    stats = validate_td(g, td)
    if not stats.valid:
        raise DecompositionError(stats.reason, stats.witness)
    return stats


def normalize_td(td: TreeDecomposition) -> TreeDecomposition:
    """Contract nodes whose bag lies inside the parent's bag, then split margins.

    A node with margin ``{v1 < ... < vm}`` becomes a chain of nodes with bags
    ``adhesion + {v1..vi}``. Node order is kept, so a normalized input comes
    back unchanged.
    """
    parent = list(td.parent)
    alive = [True] * len(td.bags)
    # contract top-down so a chain of nested bags collapses fully
    for x in td.preorder:
        p = parent[x]
        if p >= 0 and td.bags[x] <= td.bags[p]:
            alive[x] = False
            for c in td.children[x]:
                parent[c] = p
    for x in td.preorder:
        # re-point children of removed nodes at their surviving ancestor
        p = parent[x]
        while p >= 0 and not alive[p]:
            p = parent[p]
        parent[x] = p
    new_bags: list[frozenset[int]] = []
    new_parent: list[int] = []
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for x, bag in enumerate(td.bags):
        if not alive[x]:
            continue
        p = parent[x]
        adh = bag & td.bags[p] if p >= 0 else frozenset()
        margin = sorted(bag - adh)
        first[x] = len(new_bags)
        prev = None
        acc = set(adh)
        for i, v in enumerate(margin):
            acc.add(v)
            new_bags.append(frozenset(acc))
            new_parent.append(prev if prev is not None else -1)
            prev = len(new_bags) - 1
        if not margin:
            new_bags.append(frozenset(bag))
            new_parent.append(-1)
            prev = len(new_bags) - 1
        last[x] = prev
    for x in first:
        p = parent[x]
        if p >= 0:
            new_parent[first[x]] = last[p]
    return TreeDecomposition(tuple(new_bags), tuple(new_parent))


@dataclass(frozen=True)
class SkeletonDag:
    """Arcs point from a vertex to strictly shallower vertices.

    ``order`` lists vertices so that every out-neighbour precedes its tails.
    """

    n: int
    out: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]

    @property
    def max_out_degree(self) -> int:
        return max((len(o) for o in self.out), default=0)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, o in enumerate(self.out) for v in o]


def skeleton(g: Graph, td: TreeDecomposition) -> SkeletonDag:
    _require_valid(g, td)
    home = td.home(g.n)
    out = [tuple(sorted(td.adhesions[home[u]])) for u in range(g.n)]
    order = sorted(range(g.n), key=lambda u: (td.depth[home[u]], u))
    return SkeletonDag(g.n, tuple(out), tuple(order))


def reach_sets(s: SkeletonDag, p: int) -> list[frozenset[int]]:
    """Vertices reachable from each vertex by a directed path of length <= p."""
    reach = [frozenset((u,)) for u in range(s.n)]
    for _ in range(p):
        nxt = list(reach)
        for u in s.order:
            if s.out[u]:
                acc = {u}
                for v in s.out[u]:
                    acc |= reach[v]
                nxt[u] = frozenset(acc)
        reach = nxt
    return reach


def skeleton_coloring(s: SkeletonDag, p: int, k: int) -> Coloring:
    """Greedy colouring of the ``p``-step closure of the skeleton.

    Each vertex, taken in ``s.order``, gets the smallest colour absent from
    the vertices it reaches within ``p`` arcs.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if s.max_out_degree > k:
        raise DecompositionError(
            f"skeleton out-degree {s.max_out_degree} exceeds the bound k={k}"
        )
    reach = reach_sets(s, p)
    color = [-1] * s.n
    for u in s.order:
        taken = {color[v] for v in reach[u] if v != u}
        c = 0
        while c in taken:
            c += 1
        color[u] = c
    num = max(color, default=-1) + 1
    if num > comb(p + k, k):
        raise AssertionError(f"{num} colours exceed C({p + k}, {k})")
    return Coloring(tuple(color), num)


def treewidth_bound(p: int, k: int) -> int:
    return comb(p + k, k)


def treewidth_centered_coloring(g: Graph, td: TreeDecomposition, p: int) -> Coloring:
    _require_valid(g, td)
    ntd = normalize_td(td)
    return skeleton_coloring(skeleton(g, ntd), p, ntd.adhesion)


def torso(g: Graph, td: TreeDecomposition, x: int) -> tuple[Graph, list[int]]:
    """Bag subgraph with the node's own and its children's adhesions made cliques.

    Returns the torso relabelled to ``0..|bag|-1`` and the sorted bag.
    """
    if not 0 <= x < len(td.bags):
        raise DecompositionError(f"no node {x}", x)
    verts = sorted(td.bags[x])
    index = {v: i for i, v in enumerate(verts)}
    edges = set()
    for v in verts:
        for w in g.adj[v]:
            if w in index and v < w:
                edges.add((index[v], index[w]))
    for clique in (td.adhesions[x], *(td.adhesions[c] for c in td.children[x])):
        cl = sorted(index[v] for v in clique)
        for i, a in enumerate(cl):
            for b in cl[i + 1:]:
                edges.add((a, b))
    return Graph.from_edges(len(verts), edges), verts


def lift_over_td(
    g: Graph,
    td: TreeDecomposition,
    torso_colorer: Callable[[Graph, int], Coloring],
    p: int,
) -> Coloring:
    """Product of the skeleton colouring and per-torso centred colourings."""
    _require_valid(g, td)
    kappa = skeleton_coloring(skeleton(g, td), p, td.adhesion)
    lam = [-1] * g.n
    for x in range(len(td.bags)):
        if not td.margins[x]:
            continue
        tg, verts = torso(g, td, x)
        lam_x = torso_colorer(tg, p)
        if len(lam_x) != tg.n:
            raise DecompositionError(f"torso colorer returned {len(lam_x)} colours for {tg.n} vertices", x)
        for i, v in enumerate(verts):
            if v in td.margins[x]:
                lam[v] = lam_x[i]
    return canonicalize([(kappa[u], lam[u]) for u in range(g.n)])


# -- construction helpers ----------------------------------------------------


def root_at_smallest_bag(bags: Sequence[Iterable[int]], edges: Iterable[tuple[int, int]]) -> TreeDecomposition:
    """Orient an unrooted bag tree; the lexicographically smallest bag is the root."""
    bag_list = [frozenset(b) for b in bags]
    nb = len(bag_list)
    adj: list[list[int]] = [[] for _ in range(nb)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    if nb == 0:
        raise DecompositionError("decomposition has no bags")
    root = min(range(nb), key=lambda x: (sorted(bag_list[x]), x))
    parent = [-2] * nb
    parent[root] = -1
    queue = [root]
    for x in queue:
        for y in sorted(adj[x]):
            if parent[y] == -2:
                parent[y] = x
                queue.append(y)
            elif y != parent[x]:
                raise DecompositionError("bag graph contains a cycle", (x, y))
    if len(queue) != nb:
        raise DecompositionError("bag graph is disconnected")
    return TreeDecomposition(tuple(bag_list), tuple(parent))


def greedy_decomposition(g: Graph) -> TreeDecomposition:
    """Min-degree elimination decomposition.

    Test and CLI scaffolding only: the width is whatever the heuristic finds,
    with no optimality guarantee.
    """
    if g.n == 0:
        return TreeDecomposition((frozenset(),), (-1,))
    nbrs = [set(a) for a in g.adj]
    alive = set(range(g.n))
    pos = [0] * g.n
    bag_of = [frozenset()] * g.n
    order = []
    while alive:
        v = min(alive, key=lambda u: (len(nbrs[u]), u))
        pos[v] = len(order)
        order.append(v)
        nb = nbrs[v]
        bag_of[v] = frozenset(nb | {v})
        for a in nb:
            nbrs[a] |= nb
            nbrs[a].discard(a)
            nbrs[a].discard(v)
        alive.discard(v)
    parent_vertex = [-1] * g.n
    for v in order:
        later = [u for u in bag_of[v] if u != v]
        if later:
            parent_vertex[v] = min(later, key=lambda u: pos[u])
    roots = [v for v in order if parent_vertex[v] < 0]
    top = roots[-1]
    for r in roots[:-1]:
        parent_vertex[r] = top
    node = {v: i for i, v in enumerate(order)}
    bags = [bag_of[v] for v in order]
    parent = [node[parent_vertex[v]] if parent_vertex[v] >= 0 else -1 for v in order]
    return TreeDecomposition(tuple(bags), tuple(parent))


# -- PACE .td files ----------------------------------------------------------


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse a PACE-2017 ``.td`` file (1-indexed bags and vertices).

    Returns the rooted decomposition over 0-indexed vertices and the vertex
    count from the solution line.
    """
    header = None
    bags: dict[int, list[int]] = {}
    edges = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise DecompositionError(f"malformed solution line: {line!r}")
            header = tuple(int(t) for t in parts[2:])
        elif parts[0] == "b":
            if header is None:
                raise DecompositionError("bag line before solution line")
            bid = int(parts[1])
            if bid in bags:
                raise DecompositionError(f"bag {bid} defined twice")
            bags[bid] = [int(t) - 1 for t in parts[2:]]
        else:
            if header is None:
                raise DecompositionError("edge line before solution line")
            a, b = int(parts[0]), int(parts[1])
            edges.append((a, b))
    if header is None:
        raise DecompositionError("missing solution line")
    nbags, _, n = header
    if sorted(bags) != list(range(1, nbags + 1)):
        raise DecompositionError(f"expected bags 1..{nbags}")
    bag_list = [bags[i] for i in range(1, nbags + 1)]
    if len(edges) != nbags - 1:
        raise DecompositionError(f"expected {nbags - 1} tree edges, found {len(edges)}")
    td = root_at_smallest_bag(bag_list, [(a - 1, b - 1) for a, b in edges])
    return td, n


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for x, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(x + 1), *(str(v + 1) for v in sorted(bag))]))
    for x, p in enumerate(td.parent):
        if p >= 0:
            lines.append(f"{p + 1} {x + 1}")
    return "\n".join(lines) + "\n"


def read_td(path) -> tuple[TreeDecomposition, int]:
    with open(path, encoding="utf-8") as fh:
        return parse_td(fh.read())


def write_td(td: TreeDecomposition, n: int, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_td(td, n))
