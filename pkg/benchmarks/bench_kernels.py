"""Compare the compiled BFS kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import random
import timeit

from semiform import kernels
from semiform import _graphkern_py

try:
    from semiform import _graphkern
except ImportError:
    _graphkern = None


def random_adjacency(n, p, rng):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return kernels.pack_adjacency(n, edges)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    if _graphkern is None:
        print("compiled kernel not available; only the Python fallback is timed")
    print(f"{'n':>6} {'edge p':>7} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for n, p in [(8, 0.4), (25, 0.2), (64, 0.1), (256, 0.02), (1024, 0.005)]:
        adj = random_adjacency(n, p, rng)
        loops = max(1, 20000 // (n * n) + 1)
        py = min(timeit.repeat(lambda: _graphkern_py.bfs_forest(n, adj), number=loops, repeat=args.repeat)) / loops
        if _graphkern is not None:
            assert _graphkern.bfs_forest(n, adj) == _graphkern_py.bfs_forest(n, adj)
            cy = min(timeit.repeat(lambda: _graphkern.bfs_forest(n, adj), number=loops, repeat=args.repeat)) / loops
            print(f"{n:>6} {p:>7} {py * 1e3:>10.3f} {cy * 1e3:>10.3f} {py / cy:>7.1f}x")
        else:
            print(f"{n:>6} {p:>7} {py * 1e3:>10.3f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
