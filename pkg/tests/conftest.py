import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from semiform import (BOOL, FINITE_CATALOG, MAXPLUS, NAT, NEG_INF, SUPERTROPICAL, GramMatrix,
                      ProductSemiring, QuadraticScheme)

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BXB = ProductSemiring(BOOL, BOOL)
FINITE = [BOOL, *FINITE_CATALOG.values()]
ENTIRE_ANTIRINGS = [BOOL, NAT, MAXPLUS, SUPERTROPICAL, FINITE_CATALOG["trunc3"], FINITE_CATALOG["chain3"]]
ALL = [BOOL, NAT, MAXPLUS, SUPERTROPICAL, *FINITE_CATALOG.values(), BXB]


def scalars(ring):
    if ring.elements() is not None:
        return st.sampled_from(ring.elements())
    if ring is NAT:
        return st.integers(0, 6)
    finite = st.builds(Fraction, st.integers(-8, 8), st.sampled_from([1, 2]))
    if ring is MAXPLUS:
        return st.one_of(st.just(NEG_INF), finite)
    if ring is SUPERTROPICAL:
        return st.one_of(st.just(ring.zero), st.tuples(finite, st.booleans()))
    if isinstance(ring, ProductSemiring):
        return st.tuples(scalars(ring.factors[0]), scalars(ring.factors[1]))
    raise ValueError(ring)


def nonzero_scalars(ring):
    return scalars(ring).filter(lambda a: a != ring.zero)


@st.composite
def grams(draw, ring, n=None, max_rank=4):
    n = draw(st.integers(1, max_rank)) if n is None else n
    rows = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = draw(scalars(ring))
    return GramMatrix.from_rows(ring, rows)


@st.composite
def schemes(draw, ring, n=None, max_rank=4):
    n = draw(st.integers(1, max_rank)) if n is None else n
    diag = [draw(scalars(ring)) for _ in range(n)]
    off = {(i, j): draw(scalars(ring)) for i in range(n) for j in range(i + 1, n)}
    return QuadraticScheme.from_parts(ring, diag, off)


def vectors(ring, n):
    return st.lists(scalars(ring), min_size=n, max_size=n).map(tuple)


@pytest.fixture
def rng():
    return random.Random(12345)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> bool:
    ACCEPTANCE_LINES.append(f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
