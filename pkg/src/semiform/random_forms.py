"""Random forms for property tests, acceptance runs and the verify-suite command."""
from __future__ import annotations

import random
from fractions import Fraction

from .decomposition import decompose
from .forms import GramMatrix, QuadraticScheme, balanced_companion, block_sum
from .isometry import IsometryWitness
from .semiring import NEG_INF, Semiring


def _nonzero(ring: Semiring, rng: random.Random):
    return ring.random_nonzero(rng)


def _maybe(ring, rng, density):
    return _nonzero(ring, rng) if rng.random() < density else ring.zero


def random_gram(ring: Semiring, n: int, rng: random.Random, density: float = 0.5,
                diag_density: float | None = None) -> GramMatrix:
    diag_density = density if diag_density is None else diag_density
    rows = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = _maybe(ring, rng, diag_density)
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = _maybe(ring, rng, density)
    return GramMatrix.from_rows(ring, rows)


def random_scheme(ring: Semiring, n: int, rng: random.Random, density: float = 0.5,
                  diag_density: float | None = None) -> QuadraticScheme:
    diag_density = density if diag_density is None else diag_density
    diag = [_maybe(ring, rng, diag_density) for _ in range(n)]
    off = {(i, j): _maybe(ring, rng, density) for i in range(n) for j in range(i + 1, n)}
    return QuadraticScheme.from_parts(ring, diag, off)


def _tree(n, rng):
    order = list(range(n))
    rng.shuffle(order)
    return [tuple(sorted((order[k], order[rng.randrange(k)]))) for k in range(1, n)]


def _coupling(ring, a, b, rng):
    """A cross coefficient that is not quasilinear with diagonal a, b, or None."""
    for _ in range(50):
        c = _nonzero(ring, rng)
        if not ring.quasilinear(a, b, c):
            return c
    return None


def random_indecomposable_gram(ring: Semiring, n: int, rng: random.Random, density: float = 0.3,
                               alternate: bool | None = None) -> GramMatrix:
    """Connected base graph: a random spanning tree plus random extra entries."""
    f = random_gram(ring, n, rng, density)
    rows = [list(r) for r in f.rows]
    for i, j in _tree(n, rng):
        rows[i][j] = rows[j][i] = _nonzero(ring, rng)
    if alternate is None:
        alternate = rng.random() < 0.5
    if alternate:
        for i in range(n):
            rows[i][i] = ring.zero
    return GramMatrix.from_rows(ring, rows)


def random_indecomposable_scheme(ring: Semiring, n: int, rng: random.Random, density: float = 0.3,
                                 diag_density: float = 0.7) -> QuadraticScheme:
    """A random spanning tree of non-quasilinear cross terms plus random extra entries.

    When no cross coefficient couples two diagonal entries (over B this
    happens unless both are zero) the two diagonal entries are cleared.
    """
    for _ in range(100):
        q = random_scheme(ring, n, rng, density, diag_density)
        diag = list(q.diag)
        off = dict(q.offmap)
        for i, j in _tree(n, rng):
            c = _coupling(ring, diag[i], diag[j], rng)
            if c is None:
                diag[i] = diag[j] = ring.zero
                c = _coupling(ring, diag[i], diag[j], rng)
                if c is None:
                    break
            off[(i, j)] = c
        out = QuadraticScheme.from_parts(ring, diag, off)
        if n == 0 or len(decompose(out)) == 1:
            return out
    raise ValueError(f"could not build an indecomposable scheme of rank {n} over {ring.name}")


def random_unit(ring: Semiring, rng: random.Random, candidates=None):
    if candidates is not None:
        return rng.choice(list(candidates))
    units = ring.units()
    if units is not None:
        return rng.choice(units)
    if ring.kind == "maxplus":
        return Fraction(rng.randint(-3, 3))
    if ring.kind == "supertropical":
        return (Fraction(rng.randint(-3, 3)), False)
    if ring.kind == "product":
        l, r = ring.factors
        return (random_unit(l, rng), random_unit(r, rng))
    return ring.one


def random_witness(ring: Semiring, n: int, rng: random.Random, candidates=None) -> IsometryWitness:
    perm = list(range(n))
    rng.shuffle(perm)
    return IsometryWitness(ring, tuple(perm), tuple(random_unit(ring, rng, candidates) for _ in range(n)))


def random_block_sum(ring: Semiring, kind: str, rng: random.Random, max_rank: int = 6,
                     max_block: int = 3, repeat: float = 0.4):
    """Orthogonal sum of random indecomposable blocks, some blocks repeated up to isometry."""
    blocks = []
    total = 0
    while total < max_rank:
        size = rng.randint(1, min(max_block, max_rank - total))
        if blocks and rng.random() < repeat and blocks[-1].rank <= max_rank - total:
            base = blocks[rng.randrange(len(blocks))]
            if base.rank <= max_rank - total:
                blocks.append(random_witness(ring, base.rank, rng).apply(base))
                total += base.rank
                continue
        if kind == "bilinear":
            blocks.append(random_indecomposable_gram(ring, size, rng))
        else:
            blocks.append(random_indecomposable_scheme(ring, size, rng))
        total += size
        if rng.random() < 0.25:
            break
    return block_sum(*blocks)


def random_balanced_pair(ring: Semiring, n: int, rng: random.Random, indecomposable: bool = True):
    q = random_indecomposable_scheme(ring, n, rng) if indecomposable else random_scheme(ring, n, rng)
    return q, balanced_companion(q)


__all__ = ["random_gram", "random_scheme", "random_indecomposable_gram",
           "random_indecomposable_scheme", "random_witness", "random_unit",
           "random_block_sum", "random_balanced_pair", "NEG_INF"]
