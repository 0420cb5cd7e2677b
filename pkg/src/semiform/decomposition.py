"""Orthogonal decomposition into indecomposable basic components."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .forms import GramMatrix, QuadraticScheme, _quad
from .graphs import BaseGraph, components
from .semiring import Check


@dataclass(frozen=True)
class BasePartition:
    """Disjoint blocks covering 0..n-1; blocks sorted, ordered by least index."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1))
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        flat = [i for b in blocks for i in b]
        if sorted(flat) != list(range(self.n)):
            raise ValueError("blocks must partition the base")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, n: int, blocks: Iterable[Iterable[int]]) -> "BasePartition":
        return cls(n, tuple(tuple(b) for b in blocks))

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def block_of(self, i: int) -> tuple[int, ...]:
        for b in self.blocks:
            if i in b:
                return b
        raise KeyError(i)

    def union(self, which: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(i for k in which for i in self.blocks[k]))

    def one_based(self) -> list[list[int]]:
        return [[i + 1 for i in b] for b in self.blocks]

    def __str__(self):
        return " | ".join("{" + ",".join(str(i) for i in b) + "}" for b in self.one_based())


def base_graph_bilinear(b: GramMatrix) -> BaseGraph:
    z = b.ring.zero
    wit = {(i, j): b.rows[i][j] for i in range(b.rank) for j in range(i + 1, b.rank)
           if b.rows[i][j] != z}
    return BaseGraph(b.rank, frozenset(wit), wit)


def base_graph_quadratic(q: QuadraticScheme) -> BaseGraph:
    ring = q.ring
    wit = {(i, j): a for (i, j), a in q.off if not ring.quasilinear(q.diag[i], q.diag[j], a)}
    return BaseGraph(q.rank, frozenset(wit), wit)


def base_graph(f) -> BaseGraph:
    if isinstance(f, GramMatrix):
        return base_graph_bilinear(f)
    if isinstance(f, QuadraticScheme):
        return base_graph_quadratic(f)
    raise TypeError("expected a GramMatrix or a QuadraticScheme")


def decompose(f) -> BasePartition:
    g = base_graph(f)
    return BasePartition(g.n, tuple(components(g)))


def _spread(values: Sequence, k: int) -> list:
    values = sorted(values)
    if len(values) <= k:
        return list(values)
    return [values[round(t * (len(values) - 1) / (k - 1))] for t in range(k)]


def _vectors_on(ring, n, support, coeffs, max_terms):
    z = ring.zero
    for size in range(1, max_terms + 1):
        for idx in itertools.combinations(support, size):
            for combo in itertools.product(coeffs, repeat=size):
                x = [z] * n
                for i, a in zip(idx, combo):
                    x[i] = a
                yield tuple(x)


def verify_orthogonality(f, p: BasePartition, sample: Iterable | None = None, *,
                         random_pairs: int = 200, rng: random.Random | None = None,
                         exhaustive_limit: int = 100_000) -> Check:
    """Check that distinct blocks of ``p`` are orthogonal for f.

    Bilinear forms: every Gram entry between different blocks is zero (exact).
    Quadratic forms: q(x + y) = q(x) + q(y) for x supported in one block and y
    in the union of the others.  Exhaustive for finite semirings of moderate
    size; otherwise scaled base vectors and sums of two scaled base vectors,
    plus ``random_pairs`` random pairs.  The witness is (x, y) as raw tuples.
    """
    n = f.rank
    if p.n != n:
        raise ValueError("partition does not match the rank")
    ring = f.ring
    z = ring.zero
    if isinstance(f, GramMatrix):
        checked = 0
        for bi, bj in itertools.combinations(p.blocks, 2):
            for i in bi:
                for j in bj:
                    checked += 1
                    if f.rows[i][j] != z:
                        x = [z] * n
                        y = [z] * n
                        x[i] = y[j] = ring.one
                        return Check(False, True, (tuple(x), tuple(y)), checked)
        return Check(True, True, None, checked)

    if not isinstance(f, QuadraticScheme):
        raise TypeError("expected a GramMatrix or a QuadraticScheme")
    add = ring.add
    checked = 0

    def run(pairs):
        nonlocal checked
        for x, y in pairs:
            checked += 1
            s = tuple(add(a, c) for a, c in zip(x, y))
            if _quad(f, s) != add(_quad(f, x), _quad(f, y)):
                return (x, y)
        return None

    if len(p) < 2:
        return Check(True, True, None, 0)

    elems = ring.elements()
    if sample is None and elems is not None and len(elems) ** n <= exhaustive_limit:
        from .modules import FreeModule
        module = FreeModule(ring, n)
        for block in p.blocks:
            rest = [i for i in range(n) if i not in block]
            xs = [v.coeffs for v in module.vectors_over(elems, block)]
            ys = [v.coeffs for v in module.vectors_over(elems, rest)]
            bad = run((x, y) for x in xs for y in ys)
            if bad:
                return Check(False, True, bad, checked)
        return Check(True, True, None, checked)

    coeffs = list(f.diag) + [a for _, a in f.off]
    if sample is not None:
        probes = tuple(dict.fromkeys(ring.coerce(a) for a in sample))
    else:
        probes = ring.probe_scalars(coeffs)
    probes = [a for a in probes if a != z]
    small = _spread([a for a in (probes if sample is not None else ring.sample()) if a != z], 3)
    rng = rng or random.Random(0)

    for block in p.blocks:
        rest = [i for i in range(n) if i not in block]
        # scaled base vectors against scaled base vectors: these find every
        # non-quasilinear cross pair once the probes contain the critical scalings
        singles_x = list(_vectors_on(ring, n, block, probes, 1))
        singles_y = list(_vectors_on(ring, n, rest, probes, 1))
        bad = run((x, y) for x in singles_x for y in singles_y)
        if bad:
            return Check(False, False, bad, checked)
        xs = list(_vectors_on(ring, n, block, small, 2))
        ys = list(_vectors_on(ring, n, rest, small, 2))
        bad = run((x, y) for x in xs for y in ys)
        if bad:
            return Check(False, False, bad, checked)

    def random_pairs_gen():
        for _ in range(random_pairs):
            block = rng.choice(p.blocks)
            x = [z] * n
            y = [z] * n
            for i in range(n):
                if i in block:
                    x[i] = ring.random_element(rng)
                else:
                    y[i] = ring.random_element(rng)
            yield tuple(x), tuple(y)

    bad = run(random_pairs_gen())
    if bad:
        return Check(False, False, bad, checked)
    return Check(True, False, None, checked)


def check_refinement_maximal(f, p: BasePartition, **kw) -> Check:
    """Every split of a block into two parts must fail verify_orthogonality.

    If some strictly finer partition passed, merging its blocks back would
    give a passing split of one block, so this rules out all finer partitions.
    The witness is the first finer partition that passed.
    """
    checked = 0
    for k, block in enumerate(p.blocks):
        head, tail = block[0], block[1:]
        for r in range(len(tail)):
            for extra in itertools.combinations(tail, r):
                part = (head,) + extra
                other = tuple(i for i in block if i not in part)
                blocks = p.blocks[:k] + (part, other) + p.blocks[k + 1:]
                finer = BasePartition(p.n, blocks)
                checked += 1
                if verify_orthogonality(f, finer, **kw).holds:
                    return Check(False, False, finer, checked)
    return Check(True, False, None, checked)


def blocks_connected(f, p: BasePartition) -> bool:
    g = base_graph(f)
    return all(len(components(g.induced(b))) == 1 for b in p.blocks)


def is_block_union(p: BasePartition, indices: Iterable[int]) -> bool:
    s = set(indices)
    return all(set(b) <= s or not (set(b) & s) for b in p.blocks)
