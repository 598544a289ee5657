# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled BFS and centred-colouring kernels (see ``_fallback.py``)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def bfs_distances(const int[::1] indptr, const int[::1] indices, int n, int source):
    cdef cnp.ndarray[cnp.int32_t, ndim=1] dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    cdef int[::1] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int head = 0, tail = 0, u, w, k, du
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = du
                queue[tail] = w
                tail += 1
    return dist_arr.tolist()


cdef int _component(const int[::1] indptr, const int[::1] indices,
                    char[::1] alive, char[::1] seen, int s,
                    int[::1] out, int start) nogil:
    # BFS from s over alive vertices; writes the component to out[start:].
    cdef int head = start, tail = start, u, w, k
    seen[s] = 1
    out[tail] = s
    tail += 1
    while head < tail:
        u = out[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if alive[w] and not seen[w]:
                seen[w] = 1
                out[tail] = w
                tail += 1
    return tail - start


def centered_failure(const int[::1] indptr, const int[::1] indices,
                     const int[::1] colors, active, int num_colors):
    cdef int n = len(active)
    cdef char[::1] alive = np.asarray(active, dtype=np.int8).copy()
    cdef char[::1] seen = np.zeros(n, dtype=np.int8)
    cdef int[::1] count = np.zeros(max(num_colors, 1), dtype=np.int32)
    # Pending components are pairwise disjoint and stored back to back in buf;
    # the stack is LIFO, so the popped segment is always the topmost one.
    cdef int[::1] buf = np.empty(max(n, 1), dtype=np.int32)
    cdef int[::1] cur = np.empty(max(n, 1), dtype=np.int32)
    cdef list stack = []
    cdef int s, size, size_new, start, i, v, nuniq, top = 0
    for s in range(n):
        if alive[s] and not seen[s]:
            size = _component(indptr, indices, alive, seen, s, buf, top)
            stack.append((top, size))
            top += size
    while stack:
        start, size = stack.pop()
        top = start
        for i in range(size):
            cur[i] = buf[start + i]
            count[colors[cur[i]]] += 1
        nuniq = 0
        for i in range(size):
            if count[colors[cur[i]]] == 1:
                nuniq += 1
        if nuniq == 0:
            return sorted([cur[i] for i in range(size)])
        for i in range(size):
            v = cur[i]
            if count[colors[v]] == 1:
                alive[v] = 0
            seen[v] = 0
        for i in range(size):
            count[colors[cur[i]]] = 0
        for i in range(size):
            v = cur[i]
            if alive[v] and not seen[v]:
                size_new = _component(indptr, indices, alive, seen, v, buf, top)
                stack.append((top, size_new))
                top += size_new
    return []
