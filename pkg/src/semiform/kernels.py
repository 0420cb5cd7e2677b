"""Kernel selection: the compiled BFS when available, else the Python twin.

Set SEMIFORM_PURE=1 to force the Python implementation.
"""
import os

from . import _graphkern_py

if os.environ.get("SEMIFORM_PURE", "") not in ("", "0"):
    _impl = _graphkern_py
    BACKEND = "python"
else:
    try:
        from . import _graphkern as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _graphkern_py
        BACKEND = "python"


def pack_adjacency(n: int, edges) -> bytes:
    buf = bytearray(n * n)
    for i, j in edges:
        buf[i * n + j] = 1
        buf[j * n + i] = 1
    return bytes(buf)


def bfs_forest(n: int, adj: bytes):
    return _impl.bfs_forest(n, adj)


def python_bfs_forest(n: int, adj: bytes):
    return _graphkern_py.bfs_forest(n, adj)
