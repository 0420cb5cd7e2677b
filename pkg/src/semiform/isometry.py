"""Isometries between forms on modules with unique base.

An isometry is searched among generalized permutations
sigma(e_i) = u_i e_{perm[i]}; with a unique base every isometry has this shape.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .decomposition import BasePartition, decompose, is_block_union
from .forms import GramMatrix, QuadraticScheme, permute_form, same_coefficients
from .semiring import ProductSemiring, Semiring, SemiringMismatch


class IsometryError(ValueError):
    pass


class PreconditionError(ValueError):
    """A theorem hypothesis does not hold for the given input."""


@dataclass(frozen=True)
class IsometryWitness:
    ring: Semiring
    perm: tuple[int, ...]
    units: tuple

    def apply(self, f):
        return permute_form(f, self.perm, self.units)

    def compose(self, first: "IsometryWitness") -> "IsometryWitness":
        """self after first."""
        r = self.ring
        perm = tuple(self.perm[first.perm[i]] for i in range(len(self.perm)))
        units = tuple(r.mul(first.units[i], self.units[first.perm[i]]) for i in range(len(self.perm)))
        return IsometryWitness(r, perm, units)

    def inverse(self) -> "IsometryWitness":
        n = len(self.perm)
        perm = [0] * n
        units = [None] * n
        for i, j in enumerate(self.perm):
            perm[j] = i
            units[j] = self.ring.inverse(self.units[i])
        return IsometryWitness(self.ring, tuple(perm), tuple(units))

    @classmethod
    def identity(cls, ring: Semiring, n: int) -> "IsometryWitness":
        return cls(ring, tuple(range(n)), (ring.one,) * n)

    def cycles(self) -> str:
        seen = set()
        out = []
        for start in range(len(self.perm)):
            if start in seen or self.perm[start] == start:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i + 1)
                i = self.perm[i]
            out.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(out) or "()"

    def unit_literals(self) -> list:
        return [self.ring.format(u) for u in self.units]

    def __str__(self):
        return f"{self.cycles()} units [{', '.join(self.ring.format_str(u) for u in self.units)}]"


def _kind_check(f1, f2):
    if f1.ring != f2.ring:
        raise SemiringMismatch("forms over different semirings")
    if type(f1) is not type(f2):
        raise IsometryError("cannot compare a bilinear form with a quadratic form")


def _entry(f, i, j):
    if isinstance(f, GramMatrix):
        return f.rows[i][j]
    return f.diag[i] if i == j else f.cross(i, j)


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i, n)]


# -- unit solving ------------------------------------------------------------


def _solve_finite(ring, n, cons, candidates, first_only=True):
    """Backtrack over unit tuples in candidate order.  cons: (i, j, a, a') with u_i u_j a = a'."""
    by_last = [[] for _ in range(n)]
    for i, j, a, b in cons:
        by_last[max(i, j)].append((i, j, a, b))
    u = [None] * n
    found = []

    def rec(k):
        if k == n:
            found.append(tuple(u))
            return first_only
        for c in candidates:
            u[k] = c
            if all(ring.mul(ring.mul(u[i], u[j]), a) == b for i, j, a, b in by_last[k]):
                if rec(k + 1):
                    return True
        u[k] = None
        return False

    rec(0)
    return found


def _solve_log(ring, n, cons):
    """Units of max-plus / supertropical: classical u_i + u_j + a = a'."""
    z = ring.zero
    adj = [[] for _ in range(n)]
    diag = {}
    for i, j, a, b in cons:
        if a == z or b == z:
            if a != b:
                return None
            continue
        va, ga = ring.log_parts(a)
        vb, gb = ring.log_parts(b)
        if ga != gb:
            return None
        d = vb - va
        if i == j:
            diag.setdefault(i, []).append(d)
        else:
            adj[i].append((j, d))
            adj[j].append((i, d))
    sign = [0] * n
    const = [Fraction(0)] * n
    units = [None] * n
    for root in range(n):
        if sign[root]:
            continue
        sign[root] = 1
        comp = [root]
        edges = []
        stack = [root]
        while stack:
            i = stack.pop()
            for j, d in adj[i]:
                edges.append((i, j, d))
                if not sign[j]:
                    sign[j] = -sign[i]
                    const[j] = d - const[i]
                    comp.append(j)
                    stack.append(j)
        t = None
        conditions = [(i, j, d) for i, j, d in edges] + [(i, i, d) for i in comp for d in diag.get(i, [])]
        for i, j, d in conditions:
            s = sign[i] + sign[j]
            rhs = d - const[i] - const[j]
            if s == 0:
                if rhs != 0:
                    return None
                continue
            val = Fraction(rhs) / s
            if t is None:
                t = val
            elif t != val:
                return None
        t = Fraction(0) if t is None else t
        for i in comp:
            units[i] = ring.from_log(sign[i] * t + const[i])
    return tuple(units)


def _project(ring: ProductSemiring, cons, side):
    return [(i, j, a[side], b[side]) for i, j, a, b in cons]


def _has_log(ring):
    return hasattr(ring, "log_parts")


def _solve_units(ring, n, cons, candidates):
    if candidates is not None:
        found = _solve_finite(ring, n, cons, candidates)
        return found[0] if found else None
    if ring.units() is not None:
        found = _solve_finite(ring, n, cons, ring.units())
        return found[0] if found else None
    if _has_log(ring):
        return _solve_log(ring, n, cons)
    if isinstance(ring, ProductSemiring):
        left = _solve_units(ring.factors[0], n, _project(ring, cons, 0), None)
        if left is None:
            return None
        right = _solve_units(ring.factors[1], n, _project(ring, cons, 1), None)
        if right is None:
            return None
        return tuple(zip(left, right))
    raise IsometryError(f"no unit candidates and no unit solver for {ring.name}")


def _can_solve(ring) -> bool:
    if ring.units() is not None or _has_log(ring):
        return True
    if isinstance(ring, ProductSemiring):
        return _can_solve(ring.factors[0]) and _can_solve(ring.factors[1])
    return False


def _constraints(f1, f2, perm):
    n = f1.rank
    return [(i, j, _entry(f1, i, j), _entry(f2, perm[i], perm[j])) for i, j in _pairs(n)]


def _permutations(f1, f2, diag_ok):
    """Permutations in lex order that respect the zero pattern."""
    n = f1.rank
    z = f1.ring.zero
    nz1 = [[_entry(f1, i, j) != z for j in range(n)] for i in range(n)]
    nz2 = [[_entry(f2, i, j) != z for j in range(n)] for i in range(n)]
    deg1 = [sum(r) for r in nz1]
    deg2 = [sum(r) for r in nz2]
    perm = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            yield tuple(perm)
            return
        for t in range(n):
            if used[t] or deg1[i] != deg2[t] or not diag_ok(i, t):
                continue
            if nz1[i][i] != nz2[t][t] or any(nz1[i][j] != nz2[t][perm[j]] for j in range(i)):
                continue
            perm[i] = t
            used[t] = True
            yield from rec(i + 1)
            used[t] = False
        perm[i] = None

    return rec(0)


def _diag_filter(f1, f2, candidates):
    ring = f1.ring
    if candidates is None:
        return lambda i, t: True
    cache = {}

    def ok(i, t):
        key = (i, t)
        if key not in cache:
            a, b = _entry(f1, i, i), _entry(f2, t, t)
            cache[key] = any(ring.mul(ring.mul(u, u), a) == b for u in candidates)
        return cache[key]
    return ok


def _candidates(ring, unit_candidates):
    if unit_candidates is None:
        if not _can_solve(ring):
            raise IsometryError(f"{ring.name} needs an explicit unit candidate set")
        return None if ring.units() is None else tuple(ring.units())
    cands = tuple(dict.fromkeys(ring.coerce(u) for u in unit_candidates))
    if not cands:
        raise IsometryError("empty unit candidate set")
    for u in cands:
        if ring.inverse(u) is None:
            raise IsometryError(f"candidate {ring.format_str(u)} is not a unit")
    return cands


def isometry_search(f1, f2, unit_candidates: Iterable | None = None) -> IsometryWitness | None:
    """Lexicographically least (perm, units) with witness.apply(f1) == f2, or None."""
    _kind_check(f1, f2)
    ring = f1.ring
    cands = _candidates(ring, unit_candidates)
    if f1.rank != f2.rank:
        return None
    n = f1.rank
    for perm in _permutations(f1, f2, _diag_filter(f1, f2, cands)):
        units = _solve_units(ring, n, _constraints(f1, f2, perm), cands)
        if units is not None:
            w = IsometryWitness(ring, perm, units)
            if not same_coefficients(w.apply(f1), f2):
                raise AssertionError("unit solver returned a non-isometry")
            return w
    return None


# -- multiplicities ------------------------------------------------------------


@dataclass(frozen=True)
class MultiplicityClass:
    representative: object
    count: int
    blocks: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MultiplicityMap:
    classes: tuple[MultiplicityClass, ...]
    partition: BasePartition

    def __len__(self):
        return len(self.classes)

    def counts(self) -> list[int]:
        return [c.count for c in self.classes]

    def isotypical_components(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(i for b in c.blocks for i in b)) for c in self.classes]


def multiplicities(f, unit_candidates: Iterable | None = None) -> MultiplicityMap:
    cands = _candidates(f.ring, unit_candidates)
    p = decompose(f)
    reps: list[list] = []  # [representative, blocks]
    for block in p.blocks:
        g = f.restrict(block)
        for entry in reps:
            if entry[0].rank == g.rank and isometry_search(entry[0], g, cands) is not None:
                entry[1].append(block)
                break
        else:
            reps.append([g, [block]])
    classes = tuple(MultiplicityClass(_fresh(r), len(bs), tuple(bs)) for r, bs in reps)
    return MultiplicityMap(classes, p)


def _fresh(f):
    if isinstance(f, GramMatrix):
        return GramMatrix.from_rows(f.ring, f.rows)
    return QuadraticScheme.from_parts(f.ring, f.diag, f.off)


def match_multiplicities(m1: MultiplicityMap, m2: MultiplicityMap, unit_candidates=None):
    """Pair classes of m1 with isometric classes of m2.  Returns (pairs, unmatched1, unmatched2)."""
    pairs = []
    left = list(range(len(m1.classes)))
    right = list(range(len(m2.classes)))
    for a in list(left):
        ra = m1.classes[a].representative
        for b in right:
            rb = m2.classes[b].representative
            if ra.rank == rb.rank and isometry_search(ra, rb, unit_candidates) is not None:
                pairs.append((a, b))
                left.remove(a)
                right.remove(b)
                break
    return pairs, left, right


def isometric_by_multiplicity(f1, f2, unit_candidates: Iterable | None = None) -> bool:
    _kind_check(f1, f2)
    if f1.rank != f2.rank:
        return False
    m1 = multiplicities(f1, unit_candidates)
    m2 = multiplicities(f2, unit_candidates)
    pairs, l1, l2 = match_multiplicities(m1, m2, unit_candidates)
    if l1 or l2:
        return False
    return all(m1.classes[a].count == m2.classes[b].count for a, b in pairs)


# -- Witt cancellation ---------------------------------------------------------


@dataclass(frozen=True)
class LedgerRow:
    representative: object
    in_v: int
    in_w1: int
    in_w2: int

    @property
    def balanced(self) -> bool:
        return self.in_v == self.in_w1 + self.in_w2


@dataclass(frozen=True)
class WittVerdict:
    holds: bool
    complement: tuple[int, ...]
    complement_prime: tuple[int, ...]
    ledger: tuple[LedgerRow, ...]
    ledger_prime: tuple[LedgerRow, ...]


def _count_in(mv: MultiplicityMap, sub: MultiplicityMap, cands):
    pairs, _, extra = match_multiplicities(mv, sub, cands)
    if extra:
        raise PreconditionError("summand has a component class that the module lacks")
    got = {a: sub.classes[b].count for a, b in pairs}
    return [got.get(k, 0) for k in range(len(mv.classes))]


def _ledger(v, w1, w2, cands):
    mv = multiplicities(v, cands)
    c1 = _count_in(mv, multiplicities(v.restrict(w1), cands), cands)
    c2 = _count_in(mv, multiplicities(v.restrict(w2), cands), cands)
    return tuple(LedgerRow(c.representative, c.count, a, b) for c, a, b in zip(mv.classes, c1, c2))


def witt_cancel(v, v_prime, w1: Iterable[int], w1_prime: Iterable[int],
                unit_candidates: Iterable | None = None) -> WittVerdict:
    """Given V = W1 + W2 and V' = W1' + W2' with V ~ V' and W1 ~ W1', decide W2 ~ W2'.

    ``w1`` and ``w1_prime`` are 0-based index sets that must be unions of
    components.  Violated hypotheses raise PreconditionError.
    """
    _kind_check(v, v_prime)
    cands = _candidates(v.ring, unit_candidates)
    w1 = tuple(sorted(set(w1)))
    w1_prime = tuple(sorted(set(w1_prime)))
    for f, w, name in ((v, w1, "W1"), (v_prime, w1_prime, "W1'")):
        if any(not 0 <= i < f.rank for i in w):
            raise PreconditionError(f"{name} has an index outside the base")
        if not is_block_union(decompose(f), w):
            raise PreconditionError(f"{name} is not an orthogonal summand (not a union of components)")
    if not isometric_by_multiplicity(v, v_prime, cands):
        raise PreconditionError("V and V' are not isometric")
    if not isometric_by_multiplicity(v.restrict(w1), v_prime.restrict(w1_prime), cands):
        raise PreconditionError("W1 and W1' are not isometric")
    w2 = tuple(i for i in range(v.rank) if i not in w1)
    w2_prime = tuple(i for i in range(v_prime.rank) if i not in w1_prime)
    holds = isometric_by_multiplicity(v.restrict(w2), v_prime.restrict(w2_prime), cands)
    return WittVerdict(holds, w2, w2_prime,
                       _ledger(v, w1, w2, cands), _ledger(v_prime, w1_prime, w2_prime, cands))


def matching_summand(v, w1: Iterable[int], v_prime, unit_candidates=None) -> tuple[int, ...]:
    """A union of components of V' with the same multiplicities as W1 in V, least blocks first."""
    cands = _candidates(v.ring, unit_candidates)
    need = multiplicities(v.restrict(tuple(sorted(w1))), cands)
    mp = multiplicities(v_prime, cands)
    chosen = []
    for cls in need.classes:
        for other in mp.classes:
            r = other.representative
            if r.rank == cls.representative.rank and isometry_search(cls.representative, r, cands):
                if other.count < cls.count:
                    raise PreconditionError("V' has too few copies of a component of W1")
                chosen.extend(other.blocks[:cls.count])
                break
        else:
            raise PreconditionError("V' lacks a component class of W1")
    return tuple(sorted(i for b in chosen for i in b))


# -- orthogonal group ----------------------------------------------------------


@dataclass(frozen=True)
class OrthogonalGroup:
    elements: tuple[IsometryWitness, ...]
    isotypical_preserved: bool

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def orthogonal_group(f, unit_candidates: Iterable | None = None, max_rank: int = 8) -> OrthogonalGroup:
    ring = f.ring
    if f.rank > max_rank:
        raise IsometryError(f"rank {f.rank} exceeds the enumeration guard ({max_rank})")
    cands = _candidates(ring, unit_candidates)
    if cands is None:
        raise IsometryError("orthogonal group enumeration needs a finite unit candidate set")
    n = f.rank
    out = []
    for perm in _permutations(f, f, _diag_filter(f, f, cands)):
        for units in _solve_finite(ring, n, _constraints(f, f, perm), cands, first_only=False):
            out.append(IsometryWitness(ring, perm, units))
    iso = [set(c) for c in multiplicities(f, cands).isotypical_components()]
    preserved = all({w.perm[i] for i in comp} == comp for w in out for comp in iso)
    return OrthogonalGroup(tuple(out), preserved)
