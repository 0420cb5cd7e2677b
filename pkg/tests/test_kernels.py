import os
import random
import subprocess
import sys

from hypothesis import given
from hypothesis import strategies as st

from semiform import kernels
from semiform._graphkern_py import bfs_forest as py_bfs
from semiform.graphs import BaseGraph, components


@st.composite
def adjacency(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    return n, edges


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


@given(adjacency())
def test_backends_agree(case):
    n, edges = case
    adj = kernels.pack_adjacency(n, edges)
    assert kernels.bfs_forest(n, adj) == py_bfs(n, adj)


@given(adjacency())
def test_labels_match_reachability(case):
    n, edges = case
    labels, depth, parent, conflicts = py_bfs(n, kernels.pack_adjacency(n, edges))
    # independent reachability by repeated relaxation
    reach = [{i} for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i, j in edges:
            u = reach[i] | reach[j]
            if u != reach[i] or u != reach[j]:
                reach[i] = reach[j] = u
                changed = True
    for i in range(n):
        for j in range(n):
            assert (labels[i] == labels[j]) == (j in reach[i])
    assert len(conflicts) == len(set(labels))
    for v in range(n):
        if parent[v] >= 0:
            assert depth[v] == depth[parent[v]] + 1


def test_large_graph_agrees():
    rng = random.Random(4)
    n = 300
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.01]
    adj = kernels.pack_adjacency(n, edges)
    assert kernels.bfs_forest(n, adj) == py_bfs(n, adj)
    g = BaseGraph(n, frozenset(edges))
    assert sum(len(c) for c in components(g)) == n


def test_pure_switch_forces_python():
    env = dict(os.environ, SEMIFORM_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import semiform; print(semiform.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
