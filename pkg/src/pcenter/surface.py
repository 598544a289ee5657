"""Tree-cotree cut graphs and centred colourings on orientable surfaces."""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import Coloring, canonicalize
from .graph import Graph, VertexPath, bfs_distances
from .lifting import Rotation, layered_lift, planar_bound, planar_centered_coloring, planar_radius_colorer
from .planar import Embedding, EmbeddingError, restrict_rotation, trace_faces


@dataclass(frozen=True)
class CutGraph:
    genus: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    extra_edges: tuple[tuple[int, int], ...]
    geodesic_parts: tuple[VertexPath, ...]


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def tree_cotree_cut_graph(g: Graph, e: Embedding) -> CutGraph:
    """Cut graph from a BFS tree and a spanning tree of the remaining dual.

    The ``2g`` edges in neither tree, with the tree paths from their ends to
    the root, form ``K``. Each root path is a geodesic; taking them in order
    and dropping vertices already covered leaves at most ``4g`` disjoint
    geodesic parts.
    """
    if e.graph != g:
        raise EmbeddingError("embedding belongs to a different graph")
    genus = e.euler_genus
    if genus == 0:
        raise EmbeddingError("embedding has genus 0; use the planar partition instead")
    root = 0
    dist = bfs_distances(g, root)
    parent = [-1] * g.n
    tree = set()
    for v in range(g.n):
        if v != root:
            parent[v] = next(w for w in g.adj[v] if dist[w] == dist[v] - 1)
            tree.add(_edge(v, parent[v]))

    seen = [False] * e.num_faces
    seen[0] = True
    cotree = set()
    queue = [0]
    for f in queue:
        for a, b in e.face_darts(f):
            ed = _edge(a, b)
            if ed in tree:
                continue
            h = e.face_of[(b, a)]
            if not seen[h]:
                seen[h] = True
                cotree.add(ed)
                queue.append(h)
    extra = sorted(set(g.edges()) - tree - cotree)
    if len(extra) != 2 * genus:
        raise AssertionError(f"found {len(extra)} leftover edges, expected {2 * genus}")

    covered: set[int] = set()
    parts: list[VertexPath] = []
    kedges = set(extra)
    for a, b in extra:
        for s in (a, b):
            piece = []
            x = s
            while x not in covered:
                covered.add(x)
                piece.append(x)
                if x == root:
                    break
                kedges.add(_edge(x, parent[x]))
                x = parent[x]
            if piece:
                parts.append(VertexPath(tuple(piece), True))
    return CutGraph(genus, tuple(sorted(covered)), tuple(sorted(kedges)), tuple(extra), tuple(parts))


def genus_window_colorer(g: Graph, p: int, rotation: Rotation | None) -> Coloring:
    """Fresh colours on a cut graph, the planar pipeline on the rest."""
    if rotation is None:
        raise ValueError("the surface colourer needs a rotation system")
    e = trace_faces(g, rotation)
    if e.euler_genus == 0:
        return planar_radius_colorer(g, p, rotation)
    cut = tree_cotree_cut_graph(g, e)
    in_cut = set(cut.vertices)
    rest = [v for v in range(g.n) if v not in in_cut]
    values: list[tuple] = [()] * g.n
    for i, v in enumerate(cut.vertices):
        values[v] = ("cut", i)
    if rest:
        sub, verts = g.induced(rest)
        sub_col = planar_centered_coloring(sub, restrict_rotation(rotation, verts), p)
        for i, v in enumerate(verts):
            values[v] = ("rest", sub_col[i])
    return canonicalize(values)


def genus_bound(p: int, genus: int) -> int:
    return (p + 1) * (4 * genus * (4 * p + 1) + planar_bound(p)) ** 2


def genus_centered_coloring(g: Graph, e: Embedding, p: int) -> Coloring:
    if e.graph != g:
        raise EmbeddingError("embedding belongs to a different graph")
    if e.euler_genus == 0:
        return planar_centered_coloring(g, e, p)
    return layered_lift(g, p, genus_window_colorer, e.rotation)


def format_cutgraph(k: CutGraph) -> str:
    lines = [f"c genus={k.genus}", "v " + " ".join(map(str, k.vertices))]
    lines += [f"x {a} {b}" for a, b in k.extra_edges]
    lines += [f"e {a} {b}" for a, b in k.edges]
    lines += [f"p {i}: " + " ".join(map(str, q.vertices)) for i, q in enumerate(k.geodesic_parts)]
    return "\n".join(lines) + "\n"


def parse_cutgraph(text: str) -> CutGraph:
    genus = None
    verts: tuple[int, ...] = ()
    extra, edges, parts = [], [], []
    for line in text.splitlines():
        tok = line.split()
        if not tok:
            continue
        if tok[0] == "c":
            for t in tok[1:]:
                key, _, val = t.partition("=")
                if key == "genus":
                    genus = int(val)
        elif tok[0] == "v":
            verts = tuple(int(t) for t in tok[1:])
        elif tok[0] in ("x", "e"):
            (extra if tok[0] == "x" else edges).append((int(tok[1]), int(tok[2])))
        elif tok[0] == "p":
            parts.append(VertexPath(tuple(int(t) for t in tok[2:]), True))
        else:
            raise ValueError(f"unknown cut-graph line: {line!r}")
    if genus is None:
        raise ValueError("cut-graph file lacks a genus header")
    return CutGraph(genus, verts, tuple(edges), tuple(extra), tuple(parts))
