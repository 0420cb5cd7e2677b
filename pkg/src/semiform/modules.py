"""Finite-rank free modules with an ordered base, supports and basic submodules."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .semiring import Check, ProductSemiring, Scalar, Semiring, SemiringMismatch


class ModuleMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FreeModule:
    ring: Semiring
    rank: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i + 1}" for i in range(self.rank)))
        if len(self.labels) != self.rank or len(set(self.labels)) != self.rank:
            raise ValueError("labels must be pairwise distinct, one per base vector")

    def vector(self, coeffs: Iterable) -> "Vector":
        raw = tuple(self.ring.coerce(c) for c in coeffs)
        if len(raw) != self.rank:
            raise ModuleMismatch(f"expected {self.rank} coefficients, got {len(raw)}")
        return Vector(self, raw)

    def zero(self) -> "Vector":
        return Vector(self, (self.ring.zero,) * self.rank)

    def basis_vector(self, i: int, scale=None) -> "Vector":
        c = [self.ring.zero] * self.rank
        c[i] = self.ring.one if scale is None else self.ring.coerce(scale)
        return Vector(self, tuple(c))

    def standard_base(self) -> list["Vector"]:
        return [self.basis_vector(i) for i in range(self.rank)]

    def basic(self, indices: Iterable[int]) -> "BasicSubmodule":
        return BasicSubmodule(self, frozenset(indices))

    def vectors_over(self, coefficients: Sequence, support: Iterable[int] | None = None):
        """All vectors with coefficients drawn from ``coefficients`` on ``support``."""
        support = range(self.rank) if support is None else sorted(support)
        z = self.ring.zero
        for combo in itertools.product(coefficients, repeat=len(support)):
            c = [z] * self.rank
            for i, a in zip(support, combo):
                c[i] = a
            yield Vector(self, tuple(c))


@dataclass(frozen=True)
class Vector:
    module: FreeModule
    coeffs: tuple

    def _same(self, other: "Vector"):
        if not isinstance(other, Vector):
            raise TypeError("expected a Vector")
        if other.module.ring != self.module.ring:
            raise SemiringMismatch("vectors over different semirings")
        if other.module.rank != self.module.rank:
            raise ModuleMismatch("vectors of different modules")

    def __add__(self, other: "Vector") -> "Vector":
        self._same(other)
        add = self.module.ring.add
        return Vector(self.module, tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, a) -> "Vector":
        ring = self.module.ring
        a = ring.coerce(a)
        return Vector(self.module, tuple(ring.mul(a, c) for c in self.coeffs))

    def __rmul__(self, a):
        return self.scale(a)

    def __getitem__(self, i) -> Scalar:
        return Scalar(self.module.ring, self.coeffs[i])

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        z = self.module.ring.zero
        return all(c == z for c in self.coeffs)

    def support(self) -> frozenset[int]:
        return support(self)

    def __str__(self):
        return "(" + ", ".join(self.module.ring.format_str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class BasicSubmodule:
    """A submodule spanned by a subset of the base, identified with that subset."""

    module: FreeModule
    indices: frozenset

    def __post_init__(self):
        if any(not 0 <= i < self.module.rank for i in self.indices):
            raise ValueError("index outside the base")


def support(x: Vector) -> frozenset[int]:
    z = x.module.ring.zero
    return frozenset(i for i, c in enumerate(x.coeffs) if c != z)


def basic_lattice(op: str, w1: BasicSubmodule, w2: BasicSubmodule | None = None) -> BasicSubmodule:
    """meet / join / complement / relative-complement on basic submodules."""
    n = w1.module.rank
    if op == "complement":
        return BasicSubmodule(w1.module, frozenset(range(n)) - w1.indices)
    if w2 is None:
        raise TypeError(f"{op} needs two operands")
    if w2.module != w1.module:
        raise ModuleMismatch("basic submodules of different modules")
    if op == "meet":
        return BasicSubmodule(w1.module, w1.indices & w2.indices)
    if op == "join":
        return BasicSubmodule(w1.module, w1.indices | w2.indices)
    if op == "relative-complement":
        if not w1.indices <= w2.indices:
            raise ValueError("relative complement needs W1 contained in W2")
        return BasicSubmodule(w1.module, w2.indices - w1.indices)
    raise ValueError(f"unknown lattice operation {op!r}")


def is_generalized_permutation(ring: Semiring, matrix: Sequence[Sequence]) -> bool:
    rows = [[ring.coerce(a) for a in row] for row in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    z = ring.zero
    for i in range(n):
        nz = [a for a in rows[i] if a != z]
        if len(nz) != 1 or ring.inverse(nz[0]) is None:
            return False
    for j in range(n):
        if sum(1 for i in range(n) if rows[i][j] != z) != 1:
            return False
    return True


def generalized_permutation_inverse(ring: Semiring, matrix: Sequence[Sequence]) -> list[list]:
    """Transpose the pattern and invert the units."""
    if not is_generalized_permutation(ring, matrix):
        raise ValueError("not a generalized permutation matrix")
    rows = [[ring.coerce(a) for a in row] for row in matrix]
    n = len(rows)
    inv = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if rows[i][j] != ring.zero:
                inv[j][i] = ring.inverse(rows[i][j])
    return inv


def mat_mul(ring: Semiring, a, b) -> list[list]:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[ring.sum(ring.mul(a[i][k], b[k][j]) for k in range(m)) for j in range(p)]
            for i in range(n)]


class BaseGuarantee(str, enum.Enum):
    GUARANTEED = "guaranteed"
    NOT_GUARANTEED = "not-guaranteed"
    UNKNOWN = "unknown"


def unique_base_guarantee(s: Semiring) -> BaseGuarantee:
    if s.is_antiring and (s.is_entire or s.is_indecomposable):
        return BaseGuarantee.GUARANTEED
    if isinstance(s, ProductSemiring):
        return BaseGuarantee.NOT_GUARANTEED
    return BaseGuarantee.UNKNOWN


@dataclass(frozen=True)
class BaseReport:
    is_base: Check
    projectively_standard: bool


def verify_base(module: FreeModule, candidates: Sequence[Vector], sample: Iterable | None = None) -> BaseReport:
    """Check that every target vector has exactly one representation in ``candidates``.

    Targets have coefficients from ``sample`` (default: the carrier, or the
    semiring's sample).  Representations are searched with coefficients from
    the carrier for finite semirings, otherwise from the closure of the sample
    under one addition and one multiplication.
    """
    ring = module.ring
    if len(candidates) != module.rank:
        raise ValueError("candidate count must equal the rank")
    for c in candidates:
        if c.module.rank != module.rank or c.module.ring != ring:
            raise ModuleMismatch("candidate vector from another module")
    elems = ring.elements()
    if sample is None:
        sample = elems if elems is not None else ring.sample()
    sample = tuple(dict.fromkeys(ring.coerce(a) for a in sample))
    if elems is not None:
        box = elems
        exhaustive = set(sample) >= set(elems)
    else:
        closure = set(sample)
        for a in sample:
            for b in sample:
                closure.add(ring.add(a, b))
                closure.add(ring.mul(a, b))
        box = tuple(sorted(closure, key=repr))
        exhaustive = False

    reps: dict[tuple, list[tuple]] = {}
    n = module.rank
    for coeffs in itertools.product(box, repeat=n):
        v = module.zero()
        for a, c in zip(coeffs, candidates):
            v = v + c.scale(a)
        reps.setdefault(v.coeffs, []).append(coeffs)

    checked = 0
    witness = None
    for target in module.vectors_over(sample):
        checked += 1
        found = reps.get(target.coeffs, [])
        if len(found) != 1:
            witness = (target, tuple(found))
            break
    if witness is None:
        for vec, found in reps.items():
            if len(found) > 1:
                witness = (Vector(module, vec), tuple(found))
                break
    verdict = Check(witness is None, exhaustive, witness, checked)

    matrix = [list(c.coeffs) for c in candidates]
    return BaseReport(verdict, is_generalized_permutation(ring, matrix))
