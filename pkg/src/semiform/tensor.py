"""Tensor products of forms.  The product base is ordered left-major: (i, k) -> i*m + k."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .forms import (Expansion, FormError, GramMatrix, QuadraticScheme, is_balanced,
                    is_companion, make_expansion)
from .modules import FreeModule, Vector
from .semiring import Check, SemiringMismatch


@dataclass(frozen=True)
class ProductBase:
    left: int
    right: int

    def index(self, i: int, k: int) -> int:
        return i * self.right + k

    def pair(self, p: int) -> tuple[int, int]:
        return divmod(p, self.right)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, k) for i in range(self.left) for k in range(self.right)]

    def __len__(self):
        return self.left * self.right


def product_module(u: FreeModule, v: FreeModule) -> FreeModule:
    if u.ring != v.ring:
        raise SemiringMismatch("modules over different semirings")
    labels = tuple(f"{a}⊗{b}" for a in u.labels for b in v.labels)
    return FreeModule(u.ring, u.rank * v.rank, labels)


def tensor_vectors(x: Vector, y: Vector) -> Vector:
    ring = x.module.ring
    if y.module.ring != ring:
        raise SemiringMismatch("vectors over different semirings")
    mod = product_module(x.module, y.module)
    return Vector(mod, tuple(ring.mul(a, c) for a in x.coeffs for c in y.coeffs))


def _kron(ring, a, b):
    n, m = len(a), len(b)
    mul = ring.mul
    return tuple(tuple(mul(a[i][j], b[k][l]) for j in range(n) for l in range(m))
                 for i in range(n) for k in range(m))


def tensor_bilinear(b1: GramMatrix, b2: GramMatrix) -> GramMatrix:
    if b1.ring != b2.ring:
        raise SemiringMismatch("forms over different semirings")
    return GramMatrix(product_module(b1.module, b2.module), _kron(b1.ring, b1.rows, b2.rows))


def fold(e: Expansion) -> QuadraticScheme:
    """The triangular scheme x -> E(x, x): diagonal E_pp, off entries E_pr + E_rp."""
    ring = e.ring
    n = e.module.rank
    off = {(p, r): ring.add(e.rows[p][r], e.rows[r][p]) for p in range(n) for r in range(p + 1, n)}
    return QuadraticScheme.from_parts(ring, [e.rows[p][p] for p in range(n)], off, e.module.labels)


def tensor_quadratic(gamma: GramMatrix, q: QuadraticScheme, b: GramMatrix, split="triangular",
                     *, check_companion: bool = True) -> QuadraticScheme:
    """gamma tensored with the balanced pair (q, b).

    b must be balanced for q (b_kk = 2 alpha_k, checked exactly).  With
    ``check_companion`` the companion identity is also probed on scaled base
    vector pairs.
    """
    if gamma.ring != q.ring or q.ring != b.ring:
        raise SemiringMismatch("forms over different semirings")
    if not is_balanced(q, b):
        raise FormError("b is not a balanced companion of q")
    if check_companion:
        verdict = is_companion(q, b, pairs=0)
        if not verdict.holds:
            raise FormError("b is not a companion of q")
    e = make_expansion(q, b, split)
    big = Expansion(product_module(gamma.module, q.module), _kron(q.ring, gamma.rows, e.rows))
    return fold(big)


def expansion_independence_check(gamma: GramMatrix, q: QuadraticScheme, b: GramMatrix,
                                 trials: int = 50, rng: random.Random | None = None,
                                 exhaustive_limit: int = 4096) -> Check:
    """Random (or, for small finite semirings, all) splits fold to the triangular result."""
    ring = q.ring
    rng = rng or random.Random(0)
    reference = tensor_quadratic(gamma, q, b, check_companion=False)
    keys = [(i, j) for i in range(q.rank) for j in range(i + 1, q.rank)]
    options = [ring.splits(b.rows[i][j]) for i, j in keys]
    exhaustive = all(o is not None for o in options)
    if exhaustive:
        total = 1
        for o in options:
            total *= len(o)
        exhaustive = total <= exhaustive_limit
    if exhaustive:
        choices = (dict(zip(keys, combo)) for combo in itertools.product(*options))
    else:
        choices = ({k: ring.random_split(b.rows[k[0]][k[1]], rng) for k in keys} for _ in range(trials))
    checked = 0
    for split in choices:
        checked += 1
        got = tensor_quadratic(gamma, q, b, split, check_companion=False)
        if got != reference:
            return Check(False, exhaustive, split, checked)
    return Check(True, exhaustive, None, checked)


def reorder_product(f, left: int, right: int):
    """Re-index a form on the left-major product base into right-major order."""
    from .forms import permute_form
    perm = [k * left + i for i in range(left) for k in range(right)]
    return permute_form(f, perm)
