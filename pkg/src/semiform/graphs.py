"""Base graphs: connectivity, 2-colourings and odd-cycle witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels


@dataclass(frozen=True)
class BaseGraph:
    """Undirected simple graph on 0..n-1; ``witness`` maps an edge to the coefficient that made it."""

    n: int
    edges: frozenset = frozenset()
    witness: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError("self-loops are not allowed")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError("edge outside the vertex set")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> bytes:
        return kernels.pack_adjacency(self.n, self.edges)

    def neighbours(self, i: int) -> list[int]:
        return sorted({b for a, b in self.edges if a == i} | {a for a, b in self.edges if b == i})

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def induced(self, vertices) -> "BaseGraph":
        vs = sorted(vertices)
        pos = {v: k for k, v in enumerate(vs)}
        return BaseGraph(len(vs), frozenset((pos[a], pos[b]) for a, b in self.edges
                                            if a in pos and b in pos))


def forest(g: BaseGraph, backend=None):
    adj = g.adjacency()
    if backend == "python":
        return kernels.python_bfs_forest(g.n, adj)
    return kernels.bfs_forest(g.n, adj)


def components(g: BaseGraph) -> list[tuple[int, ...]]:
    """Connected components, each sorted, ordered by least vertex."""
    labels, _, _, conflicts = forest(g)
    blocks: list[list[int]] = [[] for _ in conflicts]
    for v, c in enumerate(labels):
        blocks[c].append(v)
    return [tuple(b) for b in blocks]


@dataclass(frozen=True)
class ComponentParity:
    vertices: tuple[int, ...]
    bipartite: bool
    colouring: dict | None  # vertex -> 0/1 when bipartite
    odd_cycle: tuple[int, ...] | None  # closed walk (v0, ..., v0) of odd length


@dataclass(frozen=True)
class ParityReport:
    components: tuple[ComponentParity, ...]

    @property
    def bipartite(self) -> bool:
        return all(c.bipartite for c in self.components)

    def colour(self, v: int) -> int | None:
        for c in self.components:
            if v in c.vertices:
                return None if c.colouring is None else c.colouring[v]
        raise KeyError(v)

    def odd_cycle(self) -> tuple[int, ...] | None:
        for c in self.components:
            if c.odd_cycle is not None:
                return c.odd_cycle
        return None


def _cycle(u, v, depth, parent):
    left, right = [u], [v]
    a, b = u, v
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    # left ends at the common ancestor, as does right
    lca = left[-1]
    return tuple([lca] + left[-2::-1] + right[:-1] + [lca])


def parity_report(g: BaseGraph) -> ParityReport:
    labels, depth, parent, conflicts = forest(g)
    comps = []
    for c, conflict in enumerate(conflicts):
        verts = tuple(v for v in range(g.n) if labels[v] == c)
        if conflict is None:
            comps.append(ComponentParity(verts, True, {v: depth[v] % 2 for v in verts}, None))
        else:
            comps.append(ComponentParity(verts, False, None, _cycle(*conflict, depth, parent)))
    return ParityReport(tuple(comps))
