"""Lifting centred colourings through BFS layerings and path partitions.

``layered_lift`` reduces an arbitrary connected graph to windows of radius at
most ``2p`` (``2p`` consecutive BFS layers plus everything above contracted to
one vertex) and superimposes the window colourings. ``partition_lift`` turns a
colouring of a quotient into one of the host by tagging each vertex with its
position inside its part. The planar pipeline chains both with the geodesic
partition and the treewidth colouring.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Optional, Sequence

from .coloring import Coloring, canonicalize
from .graph import Graph, Partition, bfs_layering, quotient
from .planar import Embedding, planar_geodesic_partition, trace_faces
from .treedecomp import treewidth_centered_coloring

Rotation = Sequence[Sequence[int]]
RadiusColorer = Callable[[Graph, int, Optional[Rotation]], Coloring]


class WindowError(RuntimeError):
    """A window colourer failed; ``window`` lists the host vertices involved."""

    def __init__(self, message: str, window: Sequence[int]):
        super().__init__(message)
        self.window = tuple(window)


def contract_window(
    g: Graph,
    layer_of: dict[int, int],
    tree_parent: dict[int, int],
    root: int,
    j: int,
    top: int,
    rotation: Rotation | None = None,
) -> tuple[Graph, list[int], list[list[int]] | None]:
    """Window on layers ``j..top`` with layers ``< j`` contracted onto ``root``.

    Window vertex 0 is ``root`` (the contracted blob when ``j > 0``); the rest
    follow in id order. ``verts[i]`` is the host vertex of window vertex ``i``
    (``root`` stands for the whole blob). With a rotation, the blob's rotation
    is read off a walk around the BFS tree of the contracted layers, which is
    what contracting its edges one by one produces; parallel edges keep their
    first copy.
    """
    inner = sorted(v for v, i in layer_of.items() if j <= i <= top and v != root)
    verts = [root] + inner
    index = {v: k for k, v in enumerate(verts)}
    blob = (lambda v: layer_of[v] < j) if j > 0 else (lambda v: v == root)

    def wid(v: int) -> int | None:
        if blob(v):
            return 0
        return index.get(v)

    edges = set()
    for v in inner:
        a = index[v]
        for w in g.adj[v]:
            b = wid(w)
            if b is not None and b != a:
                edges.add((min(a, b), max(a, b)))
    wg = Graph.from_edges(len(verts), edges)
    if rotation is None:
        return wg, verts, None

    rot: list[list[int]] = [[] for _ in verts]
    kept_from: dict[int, int] = {}
    if j == 0:
        for w in rotation[root]:
            if w in index:
                rot[0].append(index[w])
                kept_from[w] = root
    else:
        children: dict[int, list[int]] = {}
        for v, par in tree_parent.items():
            if layer_of[v] < j:
                children.setdefault(par, []).append(v)
        # walk around the tree of the blob, emitting edges that leave it
        stack = [(root, 0, len(rotation[root]), -1)]
        while stack:
            x, k, left, from_v = stack.pop()
            r = rotation[x]
            start = 0 if from_v < 0 else r.index(from_v) + 1
            while left:
                w = r[(start + k) % len(r)]
                k += 1
                left -= 1
                if w == from_v:
                    continue
                if blob(w):
                    if tree_parent.get(w) == x:
                        stack.append((x, k, left, from_v))
                        stack.append((w, 0, len(rotation[w]) - 1, x))
                        break
                    continue
                if w in index and w not in kept_from:
                    kept_from[w] = x
                    rot[0].append(index[w])
    for v in inner:
        a = index[v]
        for w in rotation[v]:
            if blob(w):
                if kept_from.get(v) == w:
                    rot[a].append(0)
            elif w in index:
                rot[a].append(index[w])
    return wg, verts, rot


def layered_lift(
    g: Graph,
    p: int,
    colorer: RadiusColorer,
    rotation: Rotation | None = None,
    *,
    check: bool = False,
) -> Coloring:
    """Centred colouring from colourings of radius-``2p`` windows.

    Vertex ``v`` in layer ``i`` lies in windows ``w = i // p`` and ``w - 1``;
    its colour is ``(i mod (p+1), ., .)`` with window ``w``'s colour in the
    slot picked by the parity of ``w`` and window ``w-1``'s colour (or the
    constant 1 when ``w = 0``) in the other slot.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    values: list[tuple] = [()] * g.n
    for comp in g.components():
        root = comp[0]
        lay = bfs_layering(g, root)
        layer_of = lay.dist
        tree_parent = {}
        for v in comp:
            if v != root:
                d = layer_of[v]
                tree_parent[v] = next(w for w in g.adj[v] if layer_of[w] == d - 1)
        ecc = lay.eccentricity
        lam: list[dict[int, int]] = []
        w = 0
        while w * p <= ecc:
            j = w * p
            top = min(j + 2 * p - 1, ecc)
            wg, verts, wrot = contract_window(g, layer_of, tree_parent, root, j, top, rotation)
            if check:
                _check_window(wg, p)
            try:
                col = colorer(wg, p, wrot)
            except Exception as exc:
                raise WindowError(f"window {w} colourer failed: {exc}", verts) from exc
            if len(col) != wg.n:
                raise WindowError(f"window {w} colourer returned {len(col)} colours for {wg.n} vertices", verts)
            lam.append({v: col[i] for i, v in enumerate(verts) if i > 0 or j == 0})
            w += 1
        for v in comp:
            i = layer_of[v]
            w = i // p
            cur = lam[w][v]
            prev = lam[w - 1][v] if w > 0 else 1
            if w % 2 == 0:
                values[v] = (i % (p + 1), cur, prev)
            else:
                values[v] = (i % (p + 1), prev, cur)
    return canonicalize(values)


def _check_window(wg: Graph, p: int) -> None:
    if wg.n == 0:
        return
    lay = bfs_layering(wg, 0)
    if sum(len(x) for x in lay.layers) != wg.n:
        raise AssertionError("window is disconnected")
    if lay.eccentricity > 2 * p:
        raise AssertionError(f"window radius {lay.eccentricity} exceeds 2p={2 * p}")


def layered_bound(p: int, f: int) -> int:
    return (p + 1) * f * f


def partition_lift(g: Graph, part: Partition, quotient_coloring: Coloring, p: int, q: int | None = None) -> Coloring:
    """Colour ``u`` by (position of ``u`` in its part, colour of its part)."""
    if len(part.part_of) != g.n:
        raise ValueError("partition does not match the graph")
    if len(quotient_coloring) != len(part.parts):
        raise ValueError("quotient colouring does not match the number of parts")
    longest = max((len(x) for x in part.parts), default=0)
    if q is not None and longest > q:
        raise ValueError(f"a part has {longest} vertices, more than q={q}")
    kappa = [0] * g.n
    for x in part.parts:
        for i, v in enumerate(x.vertices):
            kappa[v] = i
    return canonicalize([(kappa[v], quotient_coloring[part.part_of[v]]) for v in range(g.n)])


def planar_radius_bound(p: int) -> int:
    return (4 * p + 1) * comb(p + 8, 8)


def planar_bound(p: int) -> int:
    return layered_bound(p, planar_radius_bound(p))


def planar_radius_colorer(g: Graph, p: int, rotation: Rotation | None) -> Coloring:
    """Geodesic partition, treewidth colouring of the quotient, partition lift."""
    if rotation is None:
        raise ValueError("the planar colourer needs a rotation system")
    e = trace_faces(g, rotation)
    part, td = planar_geodesic_partition(g, e)
    lam = treewidth_centered_coloring(quotient(g, part), td, p)
    return partition_lift(g, part, lam, p)


def planar_centered_coloring(g: Graph, e: Embedding | Rotation, p: int) -> Coloring:
    rotation = e.rotation if isinstance(e, Embedding) else e
    if isinstance(e, Embedding) and e.euler_genus != 0:
        raise ValueError(f"embedding has genus {e.euler_genus}, expected 0")
    return layered_lift(g, p, planar_radius_colorer, rotation)
