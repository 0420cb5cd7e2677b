"""Commutative semirings with 0 and 1, the shipped catalog, and per-semiring oracles.

A semiring object does raw arithmetic on its own value representation
(``add``/``mul`` on plain Python values).  :class:`Scalar` wraps a raw value
together with its semiring so that public code can use ``+`` and ``*`` and so
that mixing semirings fails loudly.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

NEG_INF = float("-inf")


class SemiringMismatch(TypeError):
    """Raised when scalars or forms of different semirings are combined."""


class ScalarParseError(ValueError):
    pass


class Scalar:
    """An element of a specific semiring."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: "Semiring", value: Any):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise SemiringMismatch(f"cannot combine {self.ring.name} with {other.ring.name}")
            return other.value
        return self.ring.parse(other)

    def __add__(self, other):
        return Scalar(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return Scalar(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return Scalar(self.ring, self.ring.power(self.value, n))

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.ring == other.ring and self.value == other.value

    def __hash__(self):
        return hash((self.ring, self.value))

    def is_zero(self) -> bool:
        return self.value == self.ring.zero

    def inverse(self):
        inv = self.ring.inverse(self.value)
        return None if inv is None else Scalar(self.ring, inv)

    def __str__(self):
        return self.ring.format_str(self.value)

    def __repr__(self):
        return f"Scalar({self.ring.name}, {self.ring.format_str(self.value)})"


class Semiring:
    """Base class.  Subclasses define ``zero``, ``one``, ``add`` and ``mul``.

    Flags describe the structure: ``is_antiring`` (a+b=0 forces a=b=0),
    ``is_entire`` (no zero divisors), ``is_indecomposable`` (no complementary
    nonzero idempotents), ``has_nql`` and ``frobenius`` ((a+b)^2 = a^2+b^2).
    """

    kind = "abstract"
    zero: Any = None
    one: Any = None
    is_antiring = False
    is_entire = False
    is_indecomposable = False
    has_nql = False
    frobenius = False

    # -- identity -------------------------------------------------------
    @property
    def name(self) -> str:
        return self.kind

    def _key(self):
        return (self.kind,)

    def __eq__(self, other):
        return isinstance(other, Semiring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"<semiring {self.name}>"

    def descriptor(self) -> dict:
        return {"kind": self.kind}

    # -- arithmetic -----------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sum(self, values: Iterable) -> Any:
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def prod(self, values: Iterable) -> Any:
        acc = self.one
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def power(self, a, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        acc = self.one
        for _ in range(n):
            acc = self.mul(acc, a)
        return acc

    def two(self, a):
        """``a + a``."""
        return self.add(a, a)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def __call__(self, literal) -> Scalar:
        return Scalar(self, self.parse(literal))

    def scalar(self, raw) -> Scalar:
        return Scalar(self, raw)

    def coerce(self, x):
        """Raw value from a Scalar of this semiring or from a literal."""
        if isinstance(x, Scalar):
            if x.ring != self:
                raise SemiringMismatch(f"scalar of {x.ring.name} used in {self.name}")
            return x.value
        return self.parse(x)

    # -- carrier, units -------------------------------------------------
    def elements(self) -> tuple | None:
        """The full carrier for finite semirings, else None."""
        return None

    def units(self) -> tuple | None:
        """All units if there are finitely many, else None."""
        elems = self.elements()
        if elems is None:
            return None
        return tuple(a for a in elems if self.inverse(a) is not None)

    def inverse(self, a):
        elems = self.elements()
        if elems is None:
            return self.one if a == self.one else None
        for u in elems:
            if self.mul(a, u) == self.one and self.mul(u, a) == self.one:
                return u
        return None

    # -- sampling -------------------------------------------------------
    def sample(self) -> tuple:
        """Default sample for axiom checks (contains 0 and 1)."""
        elems = self.elements()
        if elems is None:
            raise NotImplementedError
        return elems

    def random_element(self, rng: random.Random):
        elems = self.elements()
        if elems is None:
            raise NotImplementedError
        return rng.choice(elems)

    def random_nonzero(self, rng: random.Random):
        while True:
            a = self.random_element(rng)
            if a != self.zero:
                return a

    def probe_scalars(self, coefficients: Iterable = ()) -> tuple:
        """Coefficients used when probing identities on vectors."""
        elems = self.elements()
        if elems is not None:
            return elems
        return self.sample()

    # -- companion splitting ---------------------------------------------
    def splits(self, beta) -> list | None:
        """All pairs (x, y) with x + y = beta, when finitely enumerable."""
        elems = self.elements()
        if elems is None:
            return None
        return [(x, y) for x in elems for y in elems if self.add(x, y) == beta]

    def random_split(self, beta, rng: random.Random):
        return rng.choice(self.splits(beta))

    # -- quasilinearity ---------------------------------------------------
    def quasilinear(self, a_eps, a_eta, beta) -> bool:
        """Is a_eps*x^2 + a_eta*y^2 + beta*x*y == a_eps*x^2 + a_eta*y^2 for all x, y?"""
        elems = self.elements()
        if elems is None:
            return beta == self.zero
        for x in elems:
            xx = self.mul(x, x)
            for y in elems:
                base = self.add(self.mul(a_eps, xx), self.mul(a_eta, self.mul(y, y)))
                if self.add(base, self.mul(beta, self.mul(x, y))) != base:
                    return False
        return True

    # -- literals -------------------------------------------------------
    def parse(self, literal):
        raise NotImplementedError

    def format(self, a):
        """JSON-compatible literal."""
        raise NotImplementedError

    def format_str(self, a) -> str:
        f = self.format(a)
        return f if isinstance(f, str) else str(f)


# ----------------------------------------------------------------------
# Concrete semirings


class NaturalSemiring(Semiring):
    """The natural numbers with the usual + and *."""

    kind = "nat"
    zero = 0
    one = 1
    is_antiring = True
    is_entire = True
    is_indecomposable = True
    has_nql = True
    frobenius = False

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def inverse(self, a):
        return 1 if a == 1 else None

    def units(self):
        return (1,)

    def sample(self):
        return tuple(range(7))

    def random_element(self, rng):
        return rng.randint(0, 5)

    def probe_scalars(self, coefficients=()):
        return (1, 2, 3)

    def random_split(self, beta, rng):
        x = rng.randint(0, beta)
        return x, beta - x

    def splits(self, beta):
        return [(x, beta - x) for x in range(beta + 1)]

    def quasilinear(self, a_eps, a_eta, beta):
        return beta == 0

    def parse(self, literal):
        if isinstance(literal, bool):
            raise ScalarParseError(f"not a natural number: {literal!r}")
        if isinstance(literal, str):
            if not literal.strip().isdigit():
                raise ScalarParseError(f"not a natural number: {literal!r}")
            return int(literal)
        if isinstance(literal, int) and literal >= 0:
            return literal
        raise ScalarParseError(f"not a natural number: {literal!r}")

    def format(self, a):
        return a


def _to_fraction(literal) -> Fraction:
    if isinstance(literal, bool):
        raise ScalarParseError(f"not a rational: {literal!r}")
    if isinstance(literal, (int, Fraction)):
        return Fraction(literal)
    if isinstance(literal, float):
        if literal != literal or literal in (float("inf"), NEG_INF) or not literal.is_integer():
            raise ScalarParseError(f"ambiguous float literal {literal!r}; use 'p/q'")
        return Fraction(int(literal))
    if isinstance(literal, str):
        try:
            return Fraction(literal.strip())
        except (ValueError, ZeroDivisionError):
            raise ScalarParseError(f"not a rational: {literal!r}") from None
    raise ScalarParseError(f"not a rational: {literal!r}")


def _format_fraction(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


class MaxPlusSemiring(Semiring):
    """Max-plus tropical semifield over the rationals with -inf as zero.

    Values are written classically: semiring addition is ``max``, semiring
    multiplication is ``+``, the semiring one is the number 0.
    """

    kind = "maxplus"
    zero = NEG_INF
    one = Fraction(0)
    is_antiring = True
    is_entire = True
    is_indecomposable = True
    has_nql = True
    frobenius = True

    # the zero is the only float value; finite values are Fractions, and a
    # type test is much cheaper than comparing a Fraction with a float
    def is_zero(self, a) -> bool:
        return type(a) is float

    def add(self, a, b):
        if type(a) is float:
            return b
        if type(b) is float:
            return a
        return a if a >= b else b

    def mul(self, a, b):
        if type(a) is float or type(b) is float:
            return NEG_INF
        return a + b

    def power(self, a, n):
        if n == 0:
            return self.one
        return NEG_INF if type(a) is float else a * n

    def inverse(self, a):
        return None if type(a) is float else -a

    def units(self):
        return None

    def sample(self):
        return (NEG_INF,) + tuple(Fraction(k) for k in range(-3, 4))

    def random_element(self, rng):
        if rng.random() < 0.2:
            return NEG_INF
        return Fraction(rng.randint(-4, 4))

    def probe_scalars(self, coefficients=()):
        finite = [c for c in coefficients if c != NEG_INF]
        big = 2 * max((abs(c) for c in finite), default=Fraction(0)) + 3
        pts = {Fraction(0), Fraction(-1), Fraction(1), big, -big}
        pts.update(-c / 2 for c in finite)
        return tuple(sorted(pts))

    def random_split(self, beta, rng):
        if beta == NEG_INF:
            return NEG_INF, NEG_INF
        other = NEG_INF if rng.random() < 0.3 else beta - rng.randint(0, 3)
        return (beta, other) if rng.random() < 0.5 else (other, beta)

    def quasilinear(self, a_eps, a_eta, beta):
        if beta == NEG_INF:
            return True
        if a_eps == NEG_INF or a_eta == NEG_INF:
            return False
        return 2 * beta <= a_eps + a_eta

    # unit solving works on log values
    def log_parts(self, a):
        return (None, None) if a == NEG_INF else (a, None)

    def from_log(self, value, tag=None):
        return value

    def parse(self, literal):
        if isinstance(literal, float) and literal == NEG_INF:
            return NEG_INF
        if isinstance(literal, str) and literal.strip() in ("-inf", "-∞"):
            return NEG_INF
        return _to_fraction(literal)

    def format(self, a):
        return "-inf" if a == NEG_INF else _format_fraction(a)


class SupertropicalSemiring(Semiring):
    """Supertropical extension of max-plus.

    A nonzero value is ``(v, ghost)`` with v rational.  Addition keeps the
    larger value and produces a ghost on ties; multiplication adds values and
    is ghost if either factor is.  Zero is ``(-inf, False)``.
    """

    kind = "supertropical"
    zero = (NEG_INF, False)
    one = (Fraction(0), False)
    is_antiring = True
    is_entire = True
    is_indecomposable = True
    has_nql = True
    frobenius = True

    def is_zero(self, a) -> bool:
        return type(a[0]) is float

    def add(self, a, b):
        if type(a[0]) is float:
            return b
        if type(b[0]) is float:
            return a
        if a[0] > b[0]:
            return a
        if b[0] > a[0]:
            return b
        return (a[0], True)

    def mul(self, a, b):
        if type(a[0]) is float or type(b[0]) is float:
            return self.zero
        return (a[0] + b[0], a[1] or b[1])

    def inverse(self, a):
        if a[0] == NEG_INF or a[1]:
            return None
        return (-a[0], False)

    def units(self):
        return None

    def sample(self):
        vals = [self.zero]
        for k in range(-3, 4):
            vals.append((Fraction(k), False))
        vals += [(Fraction(-1), True), (Fraction(0), True), (Fraction(2), True)]
        return tuple(vals)

    def random_element(self, rng):
        if rng.random() < 0.2:
            return self.zero
        return (Fraction(rng.randint(-4, 4)), rng.random() < 0.25)

    def probe_scalars(self, coefficients=()):
        finite = [c[0] for c in coefficients if c[0] != NEG_INF]
        big = 2 * max((abs(c) for c in finite), default=Fraction(0)) + 3
        pts = {Fraction(0), Fraction(-1), Fraction(1), big, -big}
        pts.update(-c / 2 for c in finite)
        return tuple((p, False) for p in sorted(pts))

    def random_split(self, beta, rng):
        v, ghost = beta
        if v == NEG_INF:
            return self.zero, self.zero
        if ghost and rng.random() < 0.4:
            return (v, False), (v, False)
        if rng.random() < 0.3:
            other = self.zero
        else:
            other = (v - rng.randint(1 if not ghost else 0, 3), rng.random() < 0.5)
        return ((v, ghost), other) if rng.random() < 0.5 else (other, (v, ghost))

    def quasilinear(self, a_eps, a_eta, beta):
        if beta[0] == NEG_INF:
            return True
        if a_eps[0] == NEG_INF or a_eta[0] == NEG_INF:
            return False
        return 2 * beta[0] <= a_eps[0] + a_eta[0]

    def log_parts(self, a):
        return (None, None) if a[0] == NEG_INF else a

    def from_log(self, value, tag=False):
        return (value, tag)

    def parse(self, literal):
        if isinstance(literal, tuple) and len(literal) == 2:
            v, g = literal
            v = NEG_INF if v == NEG_INF else _to_fraction(v)
            return self.zero if v == NEG_INF else (v, bool(g))
        if isinstance(literal, float) and literal == NEG_INF:
            return self.zero
        if isinstance(literal, str):
            s = literal.strip()
            if s in ("-inf", "-∞"):
                return self.zero
            if s.endswith(("g", "ν")):
                return (_to_fraction(s[:-1]), True)
            return (_to_fraction(s), False)
        return (_to_fraction(literal), False)

    def format(self, a):
        if a[0] == NEG_INF:
            return "-inf"
        return _format_fraction(a[0]) + ("g" if a[1] else "")


class FiniteSemiring(Semiring):
    """A finite semiring given by addition and multiplication tables.

    Elements are the indices ``0..k-1`` with index 0 the zero and index 1 the
    one; ``names`` gives their literals.  Flags default to exhaustive
    computation; explicit flags may be declared (axioms_check will report
    declared flags that the tables refute).
    """

    kind = "finite"

    def __init__(self, table_id: str, names: Sequence[str], add_table, mul_table, **flags):
        self.table_id = table_id
        self.names = tuple(str(n) for n in names)
        self._add = tuple(tuple(r) for r in add_table)
        self._mul = tuple(tuple(r) for r in mul_table)
        k = len(self.names)
        if len(self._add) != k or len(self._mul) != k:
            raise ValueError("table size does not match element count")
        self.zero = 0
        self.one = 1
        self._elems = tuple(range(k))
        computed = _exhaustive_flags(self)
        for flag, value in computed.items():
            setattr(self, flag, flags.pop(flag, value))
        if flags:
            raise TypeError(f"unknown flags {sorted(flags)}")

    @property
    def name(self):
        return f"finite:{self.table_id}"

    def _key(self):
        return ("finite", self.table_id, self._add, self._mul)

    def descriptor(self):
        return {"kind": f"finite:{self.table_id}"}

    def add(self, a, b):
        return self._add[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def elements(self):
        return self._elems

    def parse(self, literal):
        if isinstance(literal, bool):
            literal = int(literal)
        if isinstance(literal, str):
            if literal in self.names:
                return self.names.index(literal)
            raise ScalarParseError(f"{literal!r} is not an element of {self.name}")
        if isinstance(literal, int) and 0 <= literal < len(self.names):
            return literal
        raise ScalarParseError(f"{literal!r} is not an element of {self.name}")

    def format(self, a):
        return self.names[a]


class BooleanSemiring(FiniteSemiring):
    """B = {0, 1} with 1 + 1 = 1."""

    kind = "bool"

    def __init__(self):
        super().__init__("bool", ("0", "1"), ((0, 1), (1, 1)), ((0, 0), (0, 1)))

    @property
    def name(self):
        return "bool"

    def _key(self):
        return ("bool",)

    def descriptor(self):
        return {"kind": "bool"}

    def format(self, a):
        return a


class ProductSemiring(Semiring):
    """Binary product R1 x R2 with componentwise operations."""

    kind = "product"
    is_entire = False
    is_indecomposable = False

    def __init__(self, left: Semiring, right: Semiring):
        self.factors = (left, right)
        self.zero = (left.zero, right.zero)
        self.one = (left.one, right.one)
        self.is_antiring = left.is_antiring and right.is_antiring
        self.has_nql = left.has_nql and right.has_nql
        self.frobenius = left.frobenius and right.frobenius

    @property
    def name(self):
        return f"({self.factors[0].name} x {self.factors[1].name})"

    def _key(self):
        return ("product", self.factors)

    def descriptor(self):
        return {"kind": "product", "factors": [f.descriptor() for f in self.factors]}

    def add(self, a, b):
        l, r = self.factors
        return (l.add(a[0], b[0]), r.add(a[1], b[1]))

    def mul(self, a, b):
        l, r = self.factors
        return (l.mul(a[0], b[0]), r.mul(a[1], b[1]))

    def elements(self):
        le, re = (f.elements() for f in self.factors)
        if le is None or re is None:
            return None
        return tuple(itertools.product(le, re))

    def units(self):
        lu, ru = (f.units() for f in self.factors)
        if lu is None or ru is None:
            return None
        return tuple(itertools.product(lu, ru))

    def inverse(self, a):
        l, r = self.factors
        il, ir = l.inverse(a[0]), r.inverse(a[1])
        if il is None or ir is None:
            return None
        return (il, ir)

    def sample(self):
        elems = self.elements()
        if elems is not None:
            return elems
        ls, rs = (f.sample() for f in self.factors)
        return tuple(itertools.product(ls[:4], rs[:4]))

    def random_element(self, rng):
        l, r = self.factors
        return (l.random_element(rng), r.random_element(rng))

    def probe_scalars(self, coefficients=()):
        coefficients = list(coefficients)
        l, r = self.factors
        lp = l.probe_scalars([c[0] for c in coefficients])
        rp = r.probe_scalars([c[1] for c in coefficients])
        return tuple(itertools.product(lp, rp))

    def splits(self, beta):
        l, r = self.factors
        ls, rs = l.splits(beta[0]), r.splits(beta[1])
        if ls is None or rs is None:
            return None
        return [((a, c), (b, d)) for (a, b) in ls for (c, d) in rs]

    def random_split(self, beta, rng):
        l, r = self.factors
        a, b = l.random_split(beta[0], rng)
        c, d = r.random_split(beta[1], rng)
        return (a, c), (b, d)

    def quasilinear(self, a_eps, a_eta, beta):
        l, r = self.factors
        return (l.quasilinear(a_eps[0], a_eta[0], beta[0])
                and r.quasilinear(a_eps[1], a_eta[1], beta[1]))

    def parse(self, literal):
        if isinstance(literal, Scalar):
            return self.coerce(literal)
        if not isinstance(literal, (list, tuple)) or len(literal) != 2:
            raise ScalarParseError(f"product scalar must be a pair, got {literal!r}")
        l, r = self.factors
        return (l.parse(literal[0]), r.parse(literal[1]))

    def format(self, a):
        l, r = self.factors
        return [l.format(a[0]), r.format(a[1])]

    def format_str(self, a):
        l, r = self.factors
        return f"({l.format_str(a[0])},{r.format_str(a[1])})"


def _exhaustive_flags(s: Semiring) -> dict:
    elems = s.elements()
    z, one = s.zero, s.one
    antiring = all(s.add(a, b) != z for a in elems for b in elems if a != z or b != z)
    entire = all(s.mul(a, b) != z for a in elems for b in elems if a != z and b != z)
    idem = [m for m in elems if m != z and s.mul(m, m) == m]
    decomposable = any(s.mul(m1, m2) == z and s.add(m1, m2) == one for m1 in idem for m2 in idem)
    frob = all(s.power(s.add(a, b), 2) == s.add(s.power(a, 2), s.power(b, 2))
               for a in elems for b in elems)
    nonzero = [a for a in elems if a != z]
    nql = all(any(s.add(a, s.mul(m, c)) != a for m in elems) for a in nonzero for c in nonzero)
    return {"is_antiring": antiring, "is_entire": entire,
            "is_indecomposable": not decomposable, "frobenius": frob, "has_nql": nql}


# ----------------------------------------------------------------------
# Catalog

BOOL = BooleanSemiring()
NAT = NaturalSemiring()
MAXPLUS = MaxPlusSemiring()
SUPERTROPICAL = SupertropicalSemiring()


def _capped(n):
    k = n + 1
    add = [[min(a + b, n) for b in range(k)] for a in range(k)]
    mul = [[min(a * b, n) for b in range(k)] for a in range(k)]
    return add, mul


def _chain(n):
    # elements 0 < ... < n, listed with 0 and the top (= one) first
    order = [0, n] + list(range(1, n))
    idx = {v: i for i, v in enumerate(order)}
    add = [[idx[max(order[a], order[b])] for b in range(n + 1)] for a in range(n + 1)]
    mul = [[idx[min(order[a], order[b])] for b in range(n + 1)] for a in range(n + 1)]
    return [str(v) for v in order], add, mul


_trunc_add, _trunc_mul = _capped(3)
_chain_names, _chain_add, _chain_mul = _chain(2)

FINITE_CATALOG = {
    "trunc3": FiniteSemiring("trunc3", ("0", "1", "2", "3"), _trunc_add, _trunc_mul,
                             is_antiring=True, is_entire=True, is_indecomposable=True,
                             frobenius=False, has_nql=False),
    "chain3": FiniteSemiring("chain3", _chain_names, _chain_add, _chain_mul,
                             is_antiring=True, is_entire=True, is_indecomposable=True,
                             frobenius=True, has_nql=False),
    "z2": FiniteSemiring("z2", ("0", "1"), ((0, 1), (1, 0)), ((0, 0), (0, 1)),
                         is_antiring=False, is_entire=True, is_indecomposable=True,
                         frobenius=True, has_nql=True),
}


def from_descriptor(desc) -> Semiring:
    """Build a semiring from a descriptor such as ``{"kind": "maxplus"}``."""
    if isinstance(desc, str):
        desc = {"kind": desc}
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValueError(f"bad semiring descriptor {desc!r}")
    kind = desc["kind"]
    simple = {"bool": BOOL, "nat": NAT, "maxplus": MAXPLUS, "supertropical": SUPERTROPICAL}
    if kind in simple:
        return simple[kind]
    if kind.startswith("finite:"):
        table_id = kind.split(":", 1)[1]
        if table_id not in FINITE_CATALOG:
            raise ValueError(f"unknown finite semiring table {table_id!r}")
        return FINITE_CATALOG[table_id]
    if kind == "product":
        factors = desc.get("factors")
        if not isinstance(factors, list) or len(factors) != 2:
            raise ValueError("product descriptor needs exactly two factors")
        return ProductSemiring(from_descriptor(factors[0]), from_descriptor(factors[1]))
    raise ValueError(f"unknown semiring kind {kind!r}")


def catalog() -> list[Semiring]:
    return [BOOL, NAT, MAXPLUS, SUPERTROPICAL, *FINITE_CATALOG.values(),
            ProductSemiring(BOOL, BOOL)]


# ----------------------------------------------------------------------
# Oracles


@dataclass(frozen=True)
class Check:
    """Outcome of a finite check: holds on what was examined, or a witness."""

    holds: bool
    exhaustive: bool = False
    witness: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.holds


@dataclass
class FlagReport:
    verdicts: dict[str, Check]
    sample_size: int
    exhaustive: bool
    inconsistent: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.inconsistent


_FLAG_OF_AXIOM = {
    "antiring": "is_antiring",
    "entire": "is_entire",
    "indecomposable": "is_indecomposable",
    "frobenius": "frobenius",
    "nql": "has_nql",
}


def axioms_check(s: Semiring, sample: Iterable | None = None) -> FlagReport:
    """Check the semiring laws and the structural flags over all tuples of a sample."""
    sample = tuple(s.sample() if sample is None else (s.coerce(x) for x in sample))
    if s.zero not in sample or s.one not in sample:
        raise ValueError("sample must contain 0 and 1")
    elems = s.elements()
    exhaustive = elems is not None and set(elems) <= set(sample)
    add, mul, z, one = s.add, s.mul, s.zero, s.one
    pairs = list(itertools.product(sample, repeat=2))
    triples = list(itertools.product(sample, repeat=3))

    def first(candidates, bad):
        for t in candidates:
            if bad(*t):
                return Check(False, exhaustive, t, len(candidates))
        return Check(True, exhaustive, None, len(candidates))

    v = {}
    v["additive_identity"] = first([(a,) for a in sample], lambda a: add(z, a) != a)
    v["multiplicative_identity"] = first([(a,) for a in sample],
                                         lambda a: mul(one, a) != a or mul(z, a) != z)
    v["commutativity"] = first(pairs, lambda a, b: add(a, b) != add(b, a) or mul(a, b) != mul(b, a))
    v["associativity"] = first(triples, lambda a, b, c: add(add(a, b), c) != add(a, add(b, c))
                               or mul(mul(a, b), c) != mul(a, mul(b, c)))
    v["distributivity"] = first(triples, lambda a, b, c: mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
    v["antiring"] = first(pairs, lambda a, b: add(a, b) == z and (a != z or b != z))
    v["entire"] = first(pairs, lambda a, b: a != z and b != z and mul(a, b) == z)
    v["frobenius"] = first(pairs, lambda a, b: s.power(add(a, b), 2) != add(s.power(a, 2), s.power(b, 2)))
    v["zero_sum_double"] = first([(a,) for a in sample], lambda a: add(a, a) == z and a != z)
    v["indecomposable"] = first(
        pairs, lambda a, b: a != z and b != z and mul(a, a) == a and mul(b, b) == b
        and mul(a, b) == z and add(a, b) == one)
    nonzero = [a for a in sample if a != z]
    nql_bad = [(a, c) for a in nonzero for c in nonzero if all(add(a, mul(m, c)) == a for m in sample)]
    # a failure of NQL on a proper sample is not a refutation: mu may lie outside
    if nql_bad and exhaustive:
        v["nql"] = Check(False, True, nql_bad[0], len(nonzero) ** 2)
    else:
        v["nql"] = Check(True, exhaustive, None, len(nonzero) ** 2)

    report = FlagReport(v, len(sample), exhaustive)
    for axiom, flag in _FLAG_OF_AXIOM.items():
        declared = getattr(s, flag)
        verdict = v[axiom]
        if declared and not verdict.holds:
            report.inconsistent.append(flag)
        elif not declared and verdict.holds and exhaustive:
            report.inconsistent.append(flag)
    for law in ("additive_identity", "multiplicative_identity", "commutativity",
                "associativity", "distributivity"):
        if not v[law].holds:
            report.inconsistent.append(law)
    return report


def pair_quasilinear(s: Semiring, a_eps, a_eta, beta) -> bool:
    """Is a_eps*x^2 + a_eta*y^2 + beta*x*y additive in (x, y), i.e. the beta term always absorbed?"""
    return s.quasilinear(s.coerce(a_eps), s.coerce(a_eta), s.coerce(beta))


def has_nql(s: Semiring) -> bool:
    if s.elements() is not None:
        return _exhaustive_flags(s)["has_nql"]
    return s.has_nql


def try_invert(s: Semiring, a) -> Scalar | None:
    """The inverse of ``a`` as a Scalar, or None when ``a`` is not a unit."""
    inv = s.inverse(s.coerce(a))
    return None if inv is None else Scalar(s, inv)
