"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Both implementations take the CSR arrays of a graph and must return
identical results; ``tests/test_kernels.py`` compares them.
"""

from collections import deque


def bfs_distances(indptr, indices, n, source):
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


def centered_failure(indptr, indices, colors, active, num_colors):
    """Run the unique-colour deletion recursion on the active vertices.

    Returns the vertex list of the first component that has no colour
    occurring exactly once, or an empty list when every component peels
    down completely.
    """
    n = len(active)
    alive = [bool(a) for a in active]
    seen = [False] * n
    count = [0] * num_colors
    stack = []
    for s in range(n):
        if alive[s] and not seen[s]:
            stack.append(_component(indptr, indices, alive, seen, s))
    while stack:
        comp = stack.pop()
        for v in comp:
            count[colors[v]] += 1
        uniques = [v for v in comp if count[colors[v]] == 1]
        for v in comp:
            count[colors[v]] = 0
        if not uniques:
            return sorted(comp)
        for v in uniques:
            alive[v] = False
        for v in comp:
            seen[v] = False
        for v in comp:
            if alive[v] and not seen[v]:
                stack.append(_component(indptr, indices, alive, seen, v))
    return []


def _component(indptr, indices, alive, seen, s):
    seen[s] = True
    comp = [s]
    i = 0
    while i < len(comp):
        u = comp[i]
        i += 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if alive[w] and not seen[w]:
                seen[w] = True
                comp.append(w)
    return comp
