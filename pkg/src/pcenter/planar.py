"""Rotation systems, face tracing, triangulation and planar geodesic partitions.

A rotation lists each vertex's neighbours in cyclic order. Faces are traced
with the rule: after the dart ``u -> v`` comes ``v -> w`` where ``w`` follows
``u`` in the rotation at ``v``. Every dart lies on exactly one face.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .graph import Graph, GraphError, Partition, VertexPath
from .treedecomp import TreeDecomposition


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class Embedding:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[int, ...], ...]
    face_of: dict[tuple[int, int], int] = field(repr=False, compare=False)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_genus(self) -> int:
        """``g`` from ``V - E + F = 2 - 2g``."""
        return (2 - self.graph.n + self.graph.m - self.num_faces) // 2

    @cached_property
    def position(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(r)} for r in self.rotation)

    def succ(self, v: int, u: int) -> int:
        """Neighbour following ``u`` in the rotation at ``v``."""
        r = self.rotation[v]
        return r[(self.position[v][u] + 1) % len(r)]

    def face_darts(self, f: int) -> list[tuple[int, int]]:
        w = self.faces[f]
        return [(w[i], w[(i + 1) % len(w)]) for i in range(len(w))]


def check_rotation(g: Graph, rotation: Sequence[Sequence[int]]) -> None:
    if len(rotation) != g.n:
        raise EmbeddingError(f"rotation has {len(rotation)} rows, graph has {g.n} vertices")
    for v, r in enumerate(rotation):
        if len(r) != len(set(r)) or set(r) != g.nbr_sets[v]:
            raise EmbeddingError(f"rotation at vertex {v} is not a permutation of its neighbours")


def trace_faces(g: Graph, rotation: Sequence[Sequence[int]]) -> Embedding:
    check_rotation(g, rotation)
    if not g.is_connected():
        raise EmbeddingError("face tracing needs a connected graph")
    rot = tuple(tuple(r) for r in rotation)
    pos = [{w: i for i, w in enumerate(r)} for r in rot]
    face_of: dict[tuple[int, int], int] = {}
    faces: list[tuple[int, ...]] = []
    for u in range(g.n):
        for v in rot[u]:
            if (u, v) in face_of:
                continue
            fid = len(faces)
            walk = []
            a, b = u, v
            while (a, b) not in face_of:
                face_of[(a, b)] = fid
                walk.append(a)
                r = rot[b]
                a, b = b, r[(pos[b][a] + 1) % len(r)]
            if (a, b) != (u, v):
                raise EmbeddingError("face tracing did not close")
            faces.append(tuple(walk))
    if not faces:
        faces.append(tuple(range(g.n)))  # a lone vertex bounds one face
    emb = Embedding(g, rot, tuple(faces), face_of)
    if (2 - g.n + g.m - len(faces)) % 2:
        raise EmbeddingError("Euler characteristic is odd; rotation is not orientable")
    return emb


def restrict_rotation(rotation: Sequence[Sequence[int]], vertices: Sequence[int]) -> list[list[int]]:
    """Rotation of the induced subgraph on ``vertices``, relabelled to ``0..k-1``.

    ``vertices`` must be sorted; this matches :meth:`Graph.induced`.
    """
    index = {v: i for i, v in enumerate(vertices)}
    return [[index[w] for w in rotation[v] if w in index] for v in vertices]


# -- triangulation --------------------------------------------------------------


@dataclass(frozen=True)
class Triangulation:
    embedding: Embedding
    added: frozenset[tuple[int, int]]


def triangulate(e: Embedding) -> Triangulation:
    """Add chords inside faces until every face is a triangle.

    Faces are cut one ear at a time: for consecutive walk vertices
    ``a, x, b`` with ``a != b`` not yet adjacent, the chord ``ab`` splits off
    the triangle ``a x b``. The chord is threaded into both rotations next to
    the corner it cuts, so the embedding stays planar.
    """
    if e.euler_genus != 0:
        raise EmbeddingError(f"triangulation needs genus 0, got {e.euler_genus}")
    g = e.graph
    if g.n < 3:
        return Triangulation(e, frozenset())
    rot = [list(r) for r in e.rotation]
    nbrs = [set(a) for a in g.adj]
    added: set[tuple[int, int]] = set()

    def insert_after(v: int, anchor: int, new: int) -> None:
        r = rot[v]
        r.insert(r.index(anchor) + 1, new)

    for walk in e.faces:
        w = list(walk)
        while len(w) > 3:
            L = len(w)
            cut = None
            for i in range(L):
                a, b = w[i - 1], w[(i + 1) % L]
                if a != b and b not in nbrs[a]:
                    cut = i
                    break
            if cut is None:
                raise EmbeddingError(f"no admissible chord in face walk {w}")
            i = cut
            a, b = w[i - 1], w[(i + 1) % L]
            # the corner at a runs w[i-2] -> w[i], the one at b runs w[i] -> w[i+2]
            insert_after(a, w[i - 2], b)
            insert_after(b, w[i], a)
            nbrs[a].add(b)
            nbrs[b].add(a)
            added.add((min(a, b), max(a, b)))
            del w[i]
    gp = Graph(g.n, [sorted(s) for s in nbrs])
    emb = trace_faces(gp, rot)
    if emb.euler_genus != 0 or any(len(f) != 3 for f in emb.faces):
        raise AssertionError("triangulation produced a non-triangular face")
    return Triangulation(emb, frozenset(added))


# -- geodesic partition ---------------------------------------------------------


@dataclass(frozen=True)
class TightCycle:
    """Closed walk in the triangulation cut into geodesic pieces of ``G``.

    ``owners[i]`` is the partition part that piece ``i`` belongs to.
    """

    pieces: tuple[tuple[int, ...], ...]
    owners: tuple[int, ...]

    @property
    def cycle(self) -> tuple[int, ...]:
        return tuple(v for piece in self.pieces for v in piece)


_GROUP_SIZES = {3: (1, 1, 1), 4: (2, 1, 1), 5: (2, 2, 1), 6: (2, 2, 2)}


def _ensure_three_pieces(tc: TightCycle) -> TightCycle:
    pieces = list(tc.pieces)
    owners = list(tc.owners)
    if len(pieces) == 1:
        p = pieces[0]
        a, b = len(p) // 3, 2 * len(p) // 3
        return TightCycle((p[:a], p[a:b], p[b:]), (owners[0],) * 3)
    if len(pieces) == 2:
        i = 0 if len(pieces[0]) >= len(pieces[1]) else 1
        p = pieces[i]
        h = len(p) // 2
        pieces[i:i + 1] = [p[:h], p[h:]]
        owners[i:i + 1] = [owners[i], owners[i]]
    return TightCycle(tuple(pieces), tuple(owners))


@dataclass
class _State:
    g: Graph
    tri: Embedding
    parts: list[list[int]]
    part_of: list[int]
    bags: list[frozenset[int]]
    parent: list[int]
    check: bool


def planar_geodesic_partition(g: Graph, e: Embedding, *, check: bool = False) -> tuple[Partition, TreeDecomposition]:
    """Partition into geodesics whose quotient has a width-8 decomposition.

    Returns the partition and a decomposition of ``quotient(g, partition)``
    whose bags hold part ids. With ``check`` every recursion step asserts the
    tight-cycle invariant.
    """
    if e.graph != g:
        raise EmbeddingError("embedding belongs to a different graph")
    if not g.is_connected():
        raise GraphError("planar partition needs a connected graph")
    if e.euler_genus != 0:
        raise EmbeddingError(f"embedding has genus {e.euler_genus}, expected 0")
    if g.n <= 2:
        part = Partition.from_parts(g.n, [VertexPath((v,), True) for v in range(g.n)])
        return part, TreeDecomposition((frozenset(range(g.n)),), (-1,))
    tri = triangulate(e).embedding
    st = _State(g, tri, [], [-1] * g.n, [], [], check)
    outer = tri.faces[tri.face_of[(0, tri.rotation[0][0])]]
    t0, t1, t2 = outer
    for v in (t0, t2, t1):
        st.part_of[v] = len(st.parts)
        st.parts.append([v])
    root_cycle = TightCycle(((t0,), (t2,), (t1,)), (st.part_of[t0], st.part_of[t2], st.part_of[t1]))
    stack: list[tuple[TightCycle, int]] = [(root_cycle, -1)]
    while stack:
        tc, par = stack.pop()
        for child in reversed(_step(st, tc, par)):
            stack.append(child)
    if any(p < 0 for p in st.part_of):
        raise AssertionError("partition left a vertex uncovered")
    partition = Partition(tuple(VertexPath(tuple(p), True) for p in st.parts), tuple(st.part_of))
    return partition, TreeDecomposition(tuple(st.bags), tuple(st.parent))


def _region(tri: Embedding, cyc: tuple[int, ...]) -> tuple[list[int], set[int]]:
    """Faces enclosed by ``cyc`` on the side of its darts, and their vertices."""
    L = len(cyc)
    boundary = {frozenset((cyc[i], cyc[(i + 1) % L])) for i in range(L)}
    start = tri.face_of[(cyc[0], cyc[1])]
    seen = {start}
    stack = [start]
    verts: set[int] = set()
    while stack:
        f = stack.pop()
        w = tri.faces[f]
        verts.update(w)
        for i in range(3):
            a, b = w[i], w[(i + 1) % 3]
            if frozenset((a, b)) in boundary:
                continue
            h = tri.face_of[(b, a)]
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return sorted(seen), verts


def _assert_tight(st: _State, tc: TightCycle) -> None:
    from .graph import is_geodesic

    assert len(tc.pieces) <= 6, f"cycle has {len(tc.pieces)} pieces"
    cyc = tc.cycle
    assert len(set(cyc)) == len(cyc), "cycle repeats a vertex"
    for i in range(len(cyc)):
        assert st.tri.graph.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]), "cycle step is not an edge"
    for piece, owner in zip(tc.pieces, tc.owners):
        assert is_geodesic(st.g, piece), f"piece {piece} is not a geodesic"
        assert all(st.part_of[v] == owner for v in piece)


def _step(st: _State, tc: TightCycle, par: int) -> list[tuple[TightCycle, int]]:
    g, tri = st.g, st.tri
    cyc = tc.cycle
    if st.check:
        _assert_tight(st, tc)
    faces, verts = _region(tri, cyc)
    on_cycle = set(cyc)
    interior = verts - on_cycle
    if par >= 0 and not interior:
        return []
    node = len(st.bags)
    st.bags.append(frozenset(tc.owners))
    st.parent.append(par)
    if not interior:
        return []

    tc = _ensure_three_pieces(tc)
    sizes = _GROUP_SIZES.get(len(tc.pieces))
    if sizes is None:
        raise AssertionError(f"boundary cycle has {len(tc.pieces)} pieces; tightness lost")
    piece_group = []
    for gi, s in enumerate(sizes):
        piece_group += [gi] * s
    pos_piece: list[int] = []
    for pi, piece in enumerate(tc.pieces):
        pos_piece += [pi] * len(piece)
    position = {v: i for i, v in enumerate(cyc)}
    label = {v: piece_group[pos_piece[i]] for i, v in enumerate(cyc)}

    # ordered multi-source BFS: ties go to the smaller group, then smaller id
    sources = sorted(cyc, key=lambda v: (label[v], v))
    root = {v: v for v in sources}
    bfs_parent: dict[int, int] = {}
    queue = list(sources)
    for u in queue:
        for w in g.adj[u]:
            if w in interior and w not in root:
                root[w] = root[u]
                label[w] = label[u]
                bfs_parent[w] = u
                queue.append(w)
    if len(root) != len(verts):
        raise AssertionError("interior vertex unreachable from the boundary")

    tri_face = None
    for f in faces:
        w = tri.faces[f]
        labs = [label[v] for v in w]
        if sorted(labs) == [0, 1, 2]:
            k = labs.index(0)
            rot = w[k:] + w[:k]
            if label[rot[1]] == 1:
                tri_face = rot
                break
    if tri_face is None:
        raise AssertionError("no positively oriented trichromatic face")

    legs: list[list[int]] = []
    new_ids: list[int] = []
    for v in tri_face:
        path = []
        x = v
        while x in bfs_parent:
            path.append(x)
            x = bfs_parent[x]
        legs.append(path)
        if path:
            pid = len(st.parts)
            st.parts.append(path)
            for x in path:
                st.part_of[x] = pid
            new_ids.append(pid)
        else:
            new_ids.append(-1)
    st.bags[node] = st.bags[node] | {i for i in new_ids if i >= 0}

    L = len(cyc)
    children = []
    for j in range(3):
        jn = (j + 1) % 3
        a = position[root[tri_face[j]]]
        b = position[root[tri_face[jn]]]
        pieces: list[tuple[int, ...]] = []
        owners: list[int] = []
        cur: list[int] = []
        cur_piece = -1
        i = a
        while True:
            pi = pos_piece[i]
            if pi != cur_piece and cur:
                pieces.append(tuple(cur))
                owners.append(tc.owners[cur_piece])
                cur = []
            cur_piece = pi
            cur.append(cyc[i])
            if i == b:
                break
            i = (i + 1) % L
        pieces.append(tuple(cur))
        owners.append(tc.owners[cur_piece])
        if legs[jn]:
            pieces.append(tuple(reversed(legs[jn])))
            owners.append(new_ids[jn])
        if legs[j]:
            pieces.append(tuple(legs[j]))
            owners.append(new_ids[j])
        if sum(len(p) for p in pieces) >= 3:
            children.append((TightCycle(tuple(pieces), tuple(owners)), node))
    return children


# -- rotation files ---------------------------------------------------------------


def parse_rotation(text: str, n: int | None = None) -> list[list[int]]:
    """Line ``i`` lists the neighbours of vertex ``i`` in cyclic order.

    Lines starting with ``#`` are comments; blank lines stand for isolated
    vertices, except trailing ones.
    """
    rows = [line for line in text.split("\n") if not line.lstrip().startswith("#")]
    while rows and not rows[-1].strip():
        rows.pop()
    try:
        rot = [[int(t) for t in line.split()] for line in rows]
    except ValueError as exc:
        raise EmbeddingError(f"malformed rotation file: {exc}") from None
    if n is not None and len(rot) != n:
        raise EmbeddingError(f"rotation file has {len(rot)} rows, expected {n}")
    return rot


def format_rotation(rotation: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(str(w) for w in r) + "\n" for r in rotation)


def read_rotation(path, n: int | None = None) -> list[list[int]]:
    with open(path, encoding="utf-8") as fh:
        return parse_rotation(fh.read(), n)


def write_rotation(rotation: Sequence[Sequence[int]], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_rotation(rotation))
