"""Symmetric bilinear forms (Gram matrices) and quadratic forms (triangular schemes).

Indices are 0-based throughout the library; form files and reports are
1-based.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .modules import FreeModule, ModuleMismatch, Vector
from .semiring import Check, Scalar, Semiring, SemiringMismatch


class FormError(ValueError):
    pass


class AsymmetricGram(FormError):
    def __init__(self, i, j):
        super().__init__(f"asymmetric at ({i + 1},{j + 1})")
        self.position = (i, j)


def _module(ring: Semiring, n: int, labels) -> FreeModule:
    return FreeModule(ring, n, tuple(labels) if labels else ())


@dataclass(frozen=True)
class GramMatrix:
    """A symmetric bilinear form b given by its Gram matrix b_ij = b(e_i, e_j)."""

    module: FreeModule
    rows: tuple[tuple, ...]

    def __post_init__(self):
        n = self.module.rank
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise FormError("Gram matrix dimensions do not match the rank")
        for i in range(n):
            for j in range(i + 1, n):
                if self.rows[i][j] != self.rows[j][i]:
                    raise AsymmetricGram(i, j)

    @classmethod
    def from_rows(cls, ring: Semiring, rows: Sequence[Sequence], labels=None) -> "GramMatrix":
        raw = tuple(tuple(ring.coerce(a) for a in row) for row in rows)
        return cls(_module(ring, len(raw), labels), raw)

    @classmethod
    def diagonal(cls, ring: Semiring, entries: Sequence, labels=None) -> "GramMatrix":
        entries = [ring.coerce(a) for a in entries]
        n = len(entries)
        rows = tuple(tuple(entries[i] if i == j else ring.zero for j in range(n)) for i in range(n))
        return cls(_module(ring, n, labels), rows)

    @classmethod
    def zero_form(cls, ring: Semiring, n: int) -> "GramMatrix":
        return cls.diagonal(ring, [ring.zero] * n)

    @property
    def ring(self) -> Semiring:
        return self.module.ring

    @property
    def rank(self) -> int:
        return self.module.rank

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.ring, self.rows[i][j])

    def restrict(self, indices: Sequence[int]) -> "GramMatrix":
        idx = list(indices)
        labels = [self.module.labels[i] for i in idx]
        rows = tuple(tuple(self.rows[i][j] for j in idx) for i in idx)
        return GramMatrix(_module(self.ring, len(idx), labels), rows)

    def __str__(self):
        f = self.ring.format_str
        return "(" + "; ".join(" ".join(f(a) for a in row) for row in self.rows) + ")"


@dataclass(frozen=True)
class QuadraticScheme:
    """q(x) = sum_i alpha_i x_i^2 + sum_{i<j} alpha_ij x_i x_j.

    ``off`` stores only the structurally nonzero upper entries as a sorted
    tuple of ((i, j), alpha_ij) with i < j.
    """

    module: FreeModule
    diag: tuple
    off: tuple = ()

    def __post_init__(self):
        n = self.module.rank
        if len(self.diag) != n:
            raise FormError("diagonal length does not match the rank")
        z = self.module.ring.zero
        cleaned = {}
        for (i, j), a in self.off:
            if not (0 <= i < j < n):
                raise FormError(f"bad scheme key ({i + 1},{j + 1}); need 1 <= i < j <= rank")
            if a != z:
                cleaned[(i, j)] = a
        object.__setattr__(self, "off", tuple(sorted(cleaned.items())))
        object.__setattr__(self, "_offmap", cleaned)

    @classmethod
    def from_parts(cls, ring: Semiring, diag: Sequence, off: Mapping | Iterable = (), labels=None):
        items = off.items() if isinstance(off, Mapping) else off
        raw_off = []
        for key, a in items:
            i, j = key
            if i > j:
                i, j = j, i
            if i == j:
                raise FormError(f"bad scheme key ({i + 1},{j + 1}); need i < j")
            raw_off.append(((i, j), ring.coerce(a)))
        d = tuple(ring.coerce(a) for a in diag)
        return cls(_module(ring, len(d), labels), d, tuple(raw_off))

    @classmethod
    def diagonal(cls, ring: Semiring, entries: Sequence, labels=None):
        return cls.from_parts(ring, entries, {}, labels)

    @property
    def ring(self) -> Semiring:
        return self.module.ring

    @property
    def rank(self) -> int:
        return self.module.rank

    @property
    def offmap(self) -> dict:
        return self._offmap

    def cross(self, i: int, j: int):
        if i > j:
            i, j = j, i
        return self._offmap.get((i, j), self.ring.zero)

    def restrict(self, indices: Sequence[int]) -> "QuadraticScheme":
        idx = list(indices)
        pos = {g: k for k, g in enumerate(idx)}
        off = [((pos[i], pos[j]), a) for (i, j), a in self.off if i in pos and j in pos]
        labels = [self.module.labels[i] for i in idx]
        return QuadraticScheme.from_parts(self.ring, [self.diag[i] for i in idx], off, labels)

    def __eq__(self, other):
        if not isinstance(other, QuadraticScheme):
            return NotImplemented
        return (self.module == other.module and self.diag == other.diag
                and self.off == other.off)

    def __hash__(self):
        return hash((self.module, self.diag, self.off))

    def __str__(self):
        f = self.ring.format_str
        n = self.rank
        rows = []
        for i in range(n):
            cells = ["" if j < i else f(self.diag[i]) if j == i else f(self.cross(i, j))
                     for j in range(n)]
            rows.append(" ".join(c or "." for c in cells))
        return "[" + "; ".join(rows) + "]"


@dataclass(frozen=True)
class Expansion:
    """A (not necessarily symmetric) bilinear form B with B + B^t = b and B(x, x) = q(x)."""

    module: FreeModule
    rows: tuple[tuple, ...]

    @property
    def ring(self):
        return self.module.ring

    def entry(self, i, j):
        return self.rows[i][j]


Form = GramMatrix | QuadraticScheme


def _check_vector(f, x: Vector):
    if x.module.ring != f.ring:
        raise SemiringMismatch("vector and form over different semirings")
    if x.module.rank != f.rank:
        raise ModuleMismatch("vector does not belong to the form's module")


def _check_same(f, g):
    if f.ring != g.ring:
        raise SemiringMismatch("forms over different semirings")
    if f.rank != g.rank:
        raise ModuleMismatch("forms on modules of different rank")


def eval_bilinear(b: GramMatrix, x: Vector, y: Vector) -> Scalar:
    _check_vector(b, x)
    _check_vector(b, y)
    return Scalar(b.ring, _bil(b.ring, b.rows, x.coeffs, y.coeffs))


def _bil(ring, rows, x, y):
    add, mul, zero = ring.add, ring.mul, ring.is_zero
    acc = ring.zero
    for i, xi in enumerate(x):
        if zero(xi):
            continue
        row = rows[i]
        for j, yj in enumerate(y):
            if zero(yj):
                continue
            acc = add(acc, mul(mul(xi, yj), row[j]))
    return acc


def eval_quadratic(q: QuadraticScheme, x: Vector) -> Scalar:
    _check_vector(q, x)
    return Scalar(q.ring, _quad(q, x.coeffs))


def _quad(q: QuadraticScheme, x):
    ring = q.ring
    add, mul, zero = ring.add, ring.mul, ring.is_zero
    acc = ring.zero
    for i, xi in enumerate(x):
        if not zero(xi):
            acc = add(acc, mul(q.diag[i], mul(xi, xi)))
    for (i, j), a in q.off:
        if not zero(x[i]) and not zero(x[j]):
            acc = add(acc, mul(a, mul(x[i], x[j])))
    return acc


def is_companion(q: QuadraticScheme, b: GramMatrix, sample: Iterable | None = None, *,
                 pairs: int = 500, rng: random.Random | None = None,
                 exhaustive_limit: int = 200_000) -> Check:
    """Does q(x+y) = q(x) + q(y) + b(x, y) hold?

    Exhaustive over all vector pairs for finite semirings (when small enough);
    otherwise ``pairs`` random pairs with coefficients from ``sample``.
    """
    _check_same(q, b)
    ring = q.ring
    n = q.rank
    elems = ring.elements()
    module = q.module
    add = ring.add

    def bad(x, y):
        s = tuple(add(a, c) for a, c in zip(x, y))
        return _quad(q, s) != add(add(_quad(q, x), _quad(q, y)), _bil(ring, b.rows, x, y))

    if sample is None and elems is not None and len(elems) ** (2 * n) <= exhaustive_limit:
        vecs = [v.coeffs for v in module.vectors_over(elems)]
        count = 0
        for x in vecs:
            for y in vecs:
                count += 1
                if bad(x, y):
                    return Check(False, True, (Vector(module, x), Vector(module, y)), count)
        return Check(True, True, None, count)

    if sample is not None:
        coeffs = tuple(ring.coerce(a) for a in sample)
    elif elems is not None:
        coeffs = elems
    else:
        # the grid plus scalings at which the form's terms tie
        data = list(q.diag) + [a for _, a in q.off] + [a for row in b.rows for a in row]
        coeffs = tuple(dict.fromkeys(ring.sample() + ring.probe_scalars(data)))
    rng = rng or random.Random(0)
    # base-vector pairs first: they are the cheapest refutations
    count = 0
    for i, j in itertools.product(range(n), repeat=2):
        for a in coeffs:
            for c in coeffs:
                x = [ring.zero] * n
                y = [ring.zero] * n
                x[i] = a
                y[j] = c
                count += 1
                if bad(tuple(x), tuple(y)):
                    return Check(False, False, (Vector(module, tuple(x)), Vector(module, tuple(y))), count)
    for _ in range(pairs):
        x = tuple(rng.choice(coeffs) for _ in range(n))
        y = tuple(rng.choice(coeffs) for _ in range(n))
        count += 1
        if bad(x, y):
            return Check(False, False, (Vector(module, x), Vector(module, y)), count)
    return Check(True, False, None, count)


def balanced_companion(q: QuadraticScheme) -> GramMatrix:
    ring = q.ring
    n = q.rank
    rows = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = ring.two(q.diag[i])
    for (i, j), a in q.off:
        rows[i][j] = rows[j][i] = a
    return GramMatrix(q.module, tuple(tuple(r) for r in rows))


def quasiminimal_reduce(q: QuadraticScheme, b: GramMatrix, *, validate: bool = True) -> GramMatrix:
    """b_f: zero b(e_i, e_j) for i != j whenever q is quasilinear on R e_i x R e_j."""
    _check_same(q, b)
    ring = q.ring
    if validate and ring.elements() is not None:
        verdict = is_companion(q, b)
        if not verdict.holds:
            raise FormError(f"b is not a companion of q (witness {verdict.witness})")
    n = q.rank
    rows = [list(r) for r in b.rows]
    for i in range(n):
        for j in range(i + 1, n):
            if ring.quasilinear(q.diag[i], q.diag[j], q.cross(i, j)):
                rows[i][j] = rows[j][i] = ring.zero
    return GramMatrix(b.module, tuple(tuple(r) for r in rows))


def alternate_part(b: GramMatrix) -> GramMatrix:
    n = b.rank
    z = b.ring.zero
    rows = tuple(tuple(z if i == j else b.rows[i][j] for j in range(n)) for i in range(n))
    return GramMatrix(b.module, rows)


def make_expansion(q: QuadraticScheme, b: GramMatrix, split="triangular") -> Expansion:
    """An expansion B of the balanced pair (q, b).

    ``split`` is ``"triangular"`` or a mapping {(i, j): (chi_ij, chi_ji)} for
    i < j with chi_ij + chi_ji = b_ij; unlisted pairs use the triangular choice.
    """
    _check_same(q, b)
    ring = q.ring
    n = q.rank
    for i in range(n):
        if b.rows[i][i] != ring.two(q.diag[i]):
            raise FormError(f"b is not balanced at ({i + 1},{i + 1})")
    chosen = {} if split == "triangular" else dict(split)
    rows = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = q.diag[i]
        for j in range(i + 1, n):
            beta = b.rows[i][j]
            if (i, j) in chosen:
                chi_ij, chi_ji = (ring.coerce(c) for c in chosen.pop((i, j)))
                if ring.add(chi_ij, chi_ji) != beta:
                    raise FormError(f"split at ({i + 1},{j + 1}) does not sum to b_ij")
            else:
                chi_ij, chi_ji = beta, ring.zero
            rows[i][j], rows[j][i] = chi_ij, chi_ji
    if chosen:
        raise FormError(f"split keys outside i<j: {sorted(chosen)}")
    return Expansion(q.module, tuple(tuple(r) for r in rows))


def norm_form(gamma: GramMatrix) -> QuadraticScheme:
    ring = gamma.ring
    n = gamma.rank
    off = {(i, j): ring.two(gamma.rows[i][j]) for i in range(n) for j in range(i + 1, n)}
    return QuadraticScheme.from_parts(ring, [gamma.rows[i][i] for i in range(n)], off,
                                      gamma.module.labels)


@dataclass(frozen=True)
class FormPredicates:
    is_alternate: bool | None
    is_diagonally_zero: bool | None
    is_anisotropic: bool
    rigid_sufficient: bool | None
    is_quasilinear_scheme: bool | None


def predicates(f: Form) -> FormPredicates:
    ring = f.ring
    z = ring.zero
    if isinstance(f, GramMatrix):
        diag = [f.rows[i][i] for i in range(f.rank)]
        return FormPredicates(
            is_alternate=all(d == z for d in diag),
            is_diagonally_zero=None,
            is_anisotropic=all(d != z for d in diag),
            rigid_sufficient=None,
            is_quasilinear_scheme=None,
        )
    dz = all(d == z for d in f.diag)
    return FormPredicates(
        is_alternate=None,
        is_diagonally_zero=dz,
        is_anisotropic=all(d != z for d in f.diag),
        rigid_sufficient=dz,
        is_quasilinear_scheme=all(ring.quasilinear(f.diag[i], f.diag[j], a) for (i, j), a in f.off),
    )


def is_alternate(b: GramMatrix) -> bool:
    z = b.ring.zero
    return all(b.rows[i][i] == z for i in range(b.rank))


def is_diagonally_zero(q: QuadraticScheme) -> bool:
    z = q.ring.zero
    return all(d == z for d in q.diag)


def is_balanced(q: QuadraticScheme, b: GramMatrix) -> bool:
    _check_same(q, b)
    return all(b.rows[i][i] == q.ring.two(q.diag[i]) for i in range(q.rank))


# -- linear combinations and base changes ---------------------------------


def form_scale(a, f: Form) -> Form:
    ring = f.ring
    a = ring.coerce(a)
    if isinstance(f, GramMatrix):
        return GramMatrix(f.module, tuple(tuple(ring.mul(a, c) for c in row) for row in f.rows))
    return QuadraticScheme(f.module, tuple(ring.mul(a, c) for c in f.diag),
                           tuple((k, ring.mul(a, c)) for k, c in f.off))


def form_add(f: Form, g: Form) -> Form:
    _check_same(f, g)
    ring = f.ring
    if isinstance(f, GramMatrix) and isinstance(g, GramMatrix):
        rows = tuple(tuple(ring.add(a, c) for a, c in zip(r, s)) for r, s in zip(f.rows, g.rows))
        return GramMatrix(f.module, rows)
    if isinstance(f, QuadraticScheme) and isinstance(g, QuadraticScheme):
        keys = set(f.offmap) | set(g.offmap)
        off = tuple((k, ring.add(f.cross(*k), g.cross(*k))) for k in keys)
        return QuadraticScheme(f.module, tuple(ring.add(a, c) for a, c in zip(f.diag, g.diag)), off)
    raise TypeError("cannot add a bilinear form and a quadratic form")


def permute_form(f: Form, perm: Sequence[int], units: Sequence | None = None) -> Form:
    """Image of f under e_i -> u_i e_perm[i]: new coefficient at (perm i, perm j) is u_i u_j f_ij."""
    ring = f.ring
    n = f.rank
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation")
    u = [ring.one] * n if units is None else [ring.coerce(a) for a in units]
    mul = ring.mul
    if isinstance(f, GramMatrix):
        rows = [[ring.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows[perm[i]][perm[j]] = mul(mul(u[i], u[j]), f.rows[i][j])
        return GramMatrix(FreeModule(ring, n), tuple(tuple(r) for r in rows))
    diag = [ring.zero] * n
    for i in range(n):
        diag[perm[i]] = mul(mul(u[i], u[i]), f.diag[i])
    off = [((perm[i], perm[j]), mul(mul(u[i], u[j]), a)) for (i, j), a in f.off]
    return QuadraticScheme.from_parts(ring, diag, off)


def block_sum(*forms: Form) -> Form:
    """Orthogonal sum of forms of the same kind, bases concatenated."""
    if not forms:
        raise ValueError("need at least one form")
    ring = forms[0].ring
    for f in forms:
        if f.ring != ring:
            raise SemiringMismatch("forms over different semirings")
    n = sum(f.rank for f in forms)
    if all(isinstance(f, GramMatrix) for f in forms):
        rows = [[ring.zero] * n for _ in range(n)]
        o = 0
        for f in forms:
            for i in range(f.rank):
                for j in range(f.rank):
                    rows[o + i][o + j] = f.rows[i][j]
            o += f.rank
        return GramMatrix(FreeModule(ring, n), tuple(tuple(r) for r in rows))
    if all(isinstance(f, QuadraticScheme) for f in forms):
        diag, off, o = [], [], 0
        for f in forms:
            diag.extend(f.diag)
            off.extend(((i + o, j + o), a) for (i, j), a in f.off)
            o += f.rank
        return QuadraticScheme.from_parts(ring, diag, off)
    raise TypeError("cannot mix bilinear and quadratic forms")


def same_coefficients(f: Form, g: Form) -> bool:
    """Entrywise equality, ignoring base labels."""
    if type(f) is not type(g) or f.ring != g.ring or f.rank != g.rank:
        return False
    if isinstance(f, GramMatrix):
        return f.rows == g.rows
    return f.diag == g.diag and f.off == g.off
