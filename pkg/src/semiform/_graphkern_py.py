"""Pure-Python twin of the compiled BFS kernel; same inputs, same outputs."""
from collections import deque


def bfs_forest(n: int, adj: bytes):
    if len(adj) != n * n:
        raise ValueError("adjacency buffer has the wrong size")
    lab = [-1] * n
    dep = [-1] * n
    par = [-1] * n
    conflicts = []
    comp = 0
    for root in range(n):
        if lab[root] != -1:
            continue
        lab[root] = comp
        dep[root] = 0
        queue = deque([root])
        conflict = None
        while queue:
            u = queue.popleft()
            row = u * n
            for v in range(n):
                if v == u or not adj[row + v]:
                    continue
                if lab[v] == -1:
                    lab[v] = comp
                    dep[v] = dep[u] + 1
                    par[v] = u
                    queue.append(v)
                elif conflict is None and dep[v] == dep[u]:
                    conflict = (u, v)
        conflicts.append(conflict)
        comp += 1
    return lab, dep, par, conflicts
