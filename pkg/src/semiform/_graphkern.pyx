# cython: language_level=3, boundscheck=False, wraparound=False
"""Breadth-first forest over a dense 0/1 adjacency matrix."""
from libc.stdlib cimport free, malloc


def bfs_forest(Py_ssize_t n, const unsigned char[::1] adj):
    """Components, BFS depths and parents, and one same-depth edge per component.

    ``adj`` is the row-major n*n adjacency matrix.  Roots are taken in
    ascending order and neighbours are scanned in ascending order.  Returns
    (labels, depth, parent, conflicts) where conflicts[c] is the first edge
    (u, v) met inside component c whose ends have equal depth, or None.
    """
    if adj.shape[0] != n * n:
        raise ValueError("adjacency buffer has the wrong size")
    cdef Py_ssize_t *buf = <Py_ssize_t *> malloc(4 * (n + 1) * sizeof(Py_ssize_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t *lab = buf
    cdef Py_ssize_t *dep = buf + n
    cdef Py_ssize_t *par = buf + 2 * n
    cdef Py_ssize_t *queue = buf + 3 * n
    cdef Py_ssize_t root, head, tail, u, v, i, comp = 0
    cdef Py_ssize_t cu, cv
    conflicts = []
    try:
        for i in range(3 * n):
            buf[i] = -1
        for root in range(n):
            if lab[root] != -1:
                continue
            lab[root] = comp
            dep[root] = 0
            queue[0] = root
            head = 0
            tail = 1
            cu = -1
            cv = -1
            while head < tail:
                u = queue[head]
                head += 1
                for v in range(n):
                    if v == u or adj[u * n + v] == 0:
                        continue
                    if lab[v] == -1:
                        lab[v] = comp
                        dep[v] = dep[u] + 1
                        par[v] = u
                        queue[tail] = v
                        tail += 1
                    elif cu == -1 and dep[v] == dep[u]:
                        cu = u
                        cv = v
            conflicts.append(None if cu == -1 else (cu, cv))
            comp += 1
        return ([lab[i] for i in range(n)], [dep[i] for i in range(n)],
                [par[i] for i in range(n)], conflicts)
    finally:
        free(buf)
