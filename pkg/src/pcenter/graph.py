"""Simple undirected graphs, BFS layerings, geodesics and quotients.

Vertices are dense integer ids ``0..n-1``. Every other module builds on the
:class:`Graph` defined here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Malformed graph, vertex id, or partition."""


class UnreachableError(GraphError):
    """Raised when two vertices lie in different components."""


class Graph:
    """Immutable simple graph with sorted adjacency lists."""

    __slots__ = ("n", "adj", "__dict__")

    def __init__(self, n: int, adj: Sequence[Sequence[int]]):
        self.n = n
        self.adj = tuple(tuple(a) for a in adj)
        if len(self.adj) != n:
            raise GraphError(f"adjacency has {len(self.adj)} rows, expected {n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, [sorted(s) for s in nbrs])

    def validate(self) -> None:
        for u, a in enumerate(self.adj):
            if list(a) != sorted(set(a)):
                raise GraphError(f"neighbor list of {u} not sorted or has duplicates")
            for v in a:
                if v == u:
                    raise GraphError(f"self-loop at vertex {u}")
                if not 0 <= v < self.n or u not in self.nbr_sets[v]:
                    raise GraphError(f"asymmetric adjacency at ({u}, {v})")

    @cached_property
    def nbr_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` int32 arrays for the compiled kernels."""
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        indptr[1:] = np.cumsum([len(a) for a in self.adj])
        indices = np.fromiter(
            (v for a in self.adj for v in a), dtype=np.int32, count=int(indptr[-1])
        )
        return indptr, indices

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbr_sets[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, a in enumerate(self.adj) for v in a if u < v]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` plus the list of originals."""
        verts = sorted(set(vertices))
        index = {v: i for i, v in enumerate(verts)}
        adj = [[index[w] for w in self.adj[v] if w in index] for v in verts]
        return Graph(len(verts), adj), verts

    def components(self, vertices: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components (of the induced subgraph on ``vertices``)."""
        if vertices is None:
            allowed = None
            order: Iterable[int] = range(self.n)
        else:
            order = sorted(set(vertices))
            allowed = set(order)
        seen: set[int] = set()
        comps = []
        for s in order:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if w not in seen and (allowed is None or w in allowed):
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexPath:
    vertices: tuple[int, ...]
    is_geodesic: bool = False

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1


@dataclass(frozen=True)
class Layering:
    root: int
    layers: tuple[tuple[int, ...], ...]
    dist: dict[int, int] = field(compare=False, repr=False)

    @property
    def eccentricity(self) -> int:
        return len(self.layers) - 1


@dataclass(frozen=True)
class Partition:
    parts: tuple[VertexPath, ...]
    part_of: tuple[int, ...]

    @classmethod
    def from_parts(cls, n: int, parts: Sequence[Sequence[int] | VertexPath]) -> "Partition":
        paths = tuple(p if isinstance(p, VertexPath) else VertexPath(tuple(p)) for p in parts)
        part_of = [-1] * n
        for i, p in enumerate(paths):
            if not p.vertices:
                raise GraphError(f"part {i} is empty")
            for v in p.vertices:
                if not 0 <= v < n:
                    raise GraphError(f"vertex {v} out of range")
                if part_of[v] != -1:
                    raise GraphError(f"vertex {v} lies in parts {part_of[v]} and {i}")
                part_of[v] = i
        missing = [v for v in range(n) if part_of[v] == -1]
        if missing:
            raise GraphError(f"vertex {missing[0]} is not covered by the partition")
        return cls(paths, tuple(part_of))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls.from_parts(n, [[v] for v in range(n)])

    def __len__(self) -> int:
        return len(self.parts)

    def check_paths(self, g: Graph) -> None:
        """Raise unless every part induces a path in its listed order."""
        for i, p in enumerate(self.parts):
            vs = p.vertices
            for a, b in zip(vs, vs[1:]):
                if not g.has_edge(a, b):
                    raise GraphError(f"part {i}: {a} and {b} are not adjacent")


def _check_vertex(g: Graph, v: int) -> None:
    if not isinstance(v, (int, np.integer)) or not 0 <= v < g.n:
        raise GraphError(f"invalid vertex id {v!r} for graph with n={g.n}")


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; ``-1`` for unreachable vertices."""
    from . import kernels

    _check_vertex(g, source)
    return kernels.bfs_distances(g, source)


def bfs_layering(g: Graph, root: int) -> Layering:
    _check_vertex(g, root)
    dist = bfs_distances(g, root)
    depth = max(dist)
    buckets: list[list[int]] = [[] for _ in range(depth + 1)]
    for v, d in enumerate(dist):
        if d >= 0:
            buckets[d].append(v)
    return Layering(
        root,
        tuple(tuple(b) for b in buckets),
        {v: d for v, d in enumerate(dist) if d >= 0},
    )


def shortest_path(g: Graph, u: int, v: int) -> VertexPath:
    """Geodesic from ``u`` to ``v``.

    Walking back from ``v``, each step goes to the smallest-id neighbour one
    layer closer to ``u``.
    """
    _check_vertex(g, u)
    _check_vertex(g, v)
    dist = bfs_distances(g, u)
    if dist[v] < 0:
        raise UnreachableError(f"vertex {v} is unreachable from {u}")
    path = [v]
    x = v
    while x != u:
        d = dist[x]
        x = next(w for w in g.adj[x] if dist[w] == d - 1)
        path.append(x)
    path.reverse()
    return VertexPath(tuple(path), True)


def is_geodesic(g: Graph, vertices: Sequence[int], dist_from_first: Sequence[int] | None = None) -> bool:
    """True iff ``vertices`` is a path in ``g`` whose length equals the endpoint distance."""
    if len(vertices) != len(set(vertices)):
        return False
    for a, b in zip(vertices, vertices[1:]):
        if not g.has_edge(a, b):
            return False
    if len(vertices) <= 2:
        return True
    dist = dist_from_first if dist_from_first is not None else bfs_distances(g, vertices[0])
    return dist[vertices[-1]] == len(vertices) - 1


def quotient(g: Graph, p: Partition) -> Graph:
    """Graph on the parts; two parts are adjacent iff some edge joins them."""
    if len(p.part_of) != g.n:
        raise GraphError("partition does not match the vertex count")
    seen = [0] * g.n
    for part in p.parts:
        for v in part.vertices:
            seen[v] += 1
    if any(c != 1 for c in seen):
        bad = next(v for v, c in enumerate(seen) if c != 1)
        raise GraphError(f"vertex {bad} is covered {seen[bad]} times")
    edges = set()
    for u, v in g.edges():
        a, b = p.part_of[u], p.part_of[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(len(p.parts), edges)


# -- edge-list files ---------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("empty edge-list file")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_edge_list(g))


# -- partition files --------------------------------------------------------------


def format_partition(p: Partition) -> str:
    return "".join(f"{i}: " + " ".join(map(str, part.vertices)) + "\n" for i, part in enumerate(p.parts))


def parse_partition(text: str, n: int, geodesic: bool = False) -> Partition:
    parts: list[VertexPath] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        if not sep or int(head) != len(parts):
            raise GraphError(f"expected part {len(parts)}, got {line!r}")
        parts.append(VertexPath(tuple(int(t) for t in body.split()), geodesic))
    return Partition.from_parts(n, parts)
