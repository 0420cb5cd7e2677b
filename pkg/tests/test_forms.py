import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiform import (BOOL, MAXPLUS, NAT, SUPERTROPICAL, AsymmetricGram, FormError, FreeModule,
                      GramMatrix, QuadraticScheme, alternate_part, balanced_companion,
                      eval_bilinear, eval_quadratic, is_companion, make_expansion, norm_form,
                      predicates, quasiminimal_reduce)
from semiform.forms import form_add, form_scale, permute_form

from conftest import ALL, BXB, FINITE, grams, scalars, schemes, vectors


def poly_quadratic(q, x):
    """Independent evaluation: expand the polynomial monomial by monomial."""
    ring = q.ring
    terms = [ring.prod([q.diag[i], x[i], x[i]]) for i in range(q.rank)]
    terms += [ring.prod([q.cross(i, j), x[i], x[j]]) for i in range(q.rank) for j in range(i + 1, q.rank)]
    return ring.sum(terms)


class TestEvaluation:
    def test_bilinear_examples(self):
        b = GramMatrix.diagonal(NAT, [1, 1])
        m = b.module
        assert eval_bilinear(b, m.basis_vector(0), m.basis_vector(1)).value == 0
        h = GramMatrix.from_rows(NAT, [[0, 1], [1, 0]])
        v = h.module.vector([1, 1])
        assert eval_bilinear(h, v, v).value == 2

    def test_quadratic_examples(self):
        q = QuadraticScheme.diagonal(NAT, [3])
        assert eval_quadratic(q, q.module.vector([2])).value == 12
        q = QuadraticScheme.from_parts(NAT, [1, 1], {(0, 1): 1})
        assert eval_quadratic(q, q.module.vector([1, 1])).value == 3
        q = QuadraticScheme.from_parts(MAXPLUS, ["-inf", "-inf"], {(0, 1): 5})
        assert eval_quadratic(q, q.module.vector([2, -7])).value == 5 + 2 - 7

    @given(st.data())
    def test_zero_vector(self, data):
        ring = data.draw(st.sampled_from(ALL))
        b = data.draw(grams(ring))
        y = b.module.vector(data.draw(vectors(ring, b.rank)))
        assert eval_bilinear(b, b.module.zero(), y).value == ring.zero

    @given(st.data())
    def test_scheme_evaluation_matches_polynomial(self, data):
        ring = data.draw(st.sampled_from(ALL))
        q = data.draw(schemes(ring))
        x = data.draw(vectors(ring, q.rank))
        assert eval_quadratic(q, q.module.vector(x)).value == poly_quadratic(q, x)

    def test_module_mismatch(self):
        b = GramMatrix.diagonal(NAT, [1, 1])
        with pytest.raises(ValueError):
            eval_bilinear(b, FreeModule(NAT, 3).zero(), b.module.zero())

    def test_asymmetric_gram(self):
        with pytest.raises(AsymmetricGram, match=r"asymmetric at \(1,2\)"):
            GramMatrix.from_rows(NAT, [[1, 2], [3, 1]])

    def test_bad_scheme_key(self):
        with pytest.raises(FormError):
            QuadraticScheme.from_parts(NAT, [1, 1], {(0, 0): 1})


class TestCompanions:
    def test_natural_square(self):
        q = QuadraticScheme.diagonal(NAT, [1])
        assert is_companion(q, GramMatrix.from_rows(NAT, [[2]])).holds
        bad = is_companion(q, GramMatrix.from_rows(NAT, [[1]]))
        assert not bad.holds
        x, y = bad.witness
        assert x.coeffs == (1,) and y.coeffs == (1,)

    def test_boolean_companions_not_unique(self):
        q = QuadraticScheme.diagonal(BOOL, [1])
        for c in (0, 1):
            chk = is_companion(q, GramMatrix.from_rows(BOOL, [[c]]))
            assert chk.holds and chk.exhaustive

    def test_balanced_examples(self):
        q = QuadraticScheme.diagonal(NAT, [1, 2, 3])
        assert balanced_companion(q).rows == ((2, 0, 0), (0, 4, 0), (0, 0, 6))
        q = QuadraticScheme.from_parts(NAT, [1, 2], {(0, 1): 5})
        assert balanced_companion(q).rows == ((2, 5), (5, 4))
        assert balanced_companion(QuadraticScheme.diagonal(BOOL, [1])).rows == ((1,),)

    @pytest.mark.parametrize("ring", FINITE + [BXB], ids=lambda r: r.name)
    def test_balanced_is_companion_exhaustive(self, ring):
        rng = random.Random(3)
        for _ in range(15):
            n = rng.randint(1, 2)
            q = QuadraticScheme.from_parts(ring, [rng.choice(ring.elements()) for _ in range(n)],
                                           {(0, 1): rng.choice(ring.elements())} if n == 2 else {})
            b = balanced_companion(q)
            chk = is_companion(q, b)
            assert chk.exhaustive and chk.holds
            bf = quasiminimal_reduce(q, b)
            assert is_companion(q, bf).holds

    @given(st.data())
    def test_balanced_is_companion_sampled(self, data):
        ring = data.draw(st.sampled_from([NAT, MAXPLUS, SUPERTROPICAL]))
        q = data.draw(schemes(ring, max_rank=3))
        b = balanced_companion(q)
        assert is_companion(q, b, pairs=100).holds
        assert is_companion(q, quasiminimal_reduce(q, b), pairs=100).holds

    def test_balanced_diagonal_is_twice(self):
        q = QuadraticScheme.from_parts(NAT, [1, 2], {(0, 1): 5})
        b = balanced_companion(q)
        for i, e in enumerate(q.module.standard_base()):
            assert eval_bilinear(b, e, e).value == 2 * eval_quadratic(q, e).value


class TestQuasiminimal:
    def test_examples(self):
        q = QuadraticScheme.diagonal(NAT, [1, 1])
        assert quasiminimal_reduce(q, balanced_companion(q)).rows == ((2, 0), (0, 2))
        q = QuadraticScheme.from_parts(MAXPLUS, [0, 0], {(0, 1): -5})
        bf = quasiminimal_reduce(q, balanced_companion(q))
        assert bf.rows[0][1] == MAXPLUS.zero and bf.rows[0][0] == 0
        q = QuadraticScheme.from_parts(NAT, [1, 1], {(0, 1): 1})
        b = balanced_companion(q)
        assert quasiminimal_reduce(q, b) == b

    def test_rejects_non_companion_on_finite(self):
        q = QuadraticScheme.from_parts(BOOL, [0, 0], {(0, 1): 1})
        with pytest.raises(FormError):
            quasiminimal_reduce(q, GramMatrix.diagonal(BOOL, [0, 0]))

    @given(st.data())
    def test_stays_balanced(self, data):
        ring = data.draw(st.sampled_from(ALL))
        q = data.draw(schemes(ring, max_rank=3))
        bf = quasiminimal_reduce(q, balanced_companion(q), validate=False)
        assert all(bf.rows[i][i] == ring.two(q.diag[i]) for i in range(q.rank))


class TestAlternateAndNorm:
    def test_alternate_examples(self):
        b = GramMatrix.from_rows(NAT, [[1, 1], [1, 0]])
        assert alternate_part(b).rows == ((0, 1), (1, 0))
        assert alternate_part(GramMatrix.diagonal(NAT, [3, 4])).rows == ((0, 0), (0, 0))
        h = GramMatrix.from_rows(NAT, [[0, 1], [1, 0]])
        assert alternate_part(h) == h

    @given(st.data())
    def test_alternate_idempotent(self, data):
        ring = data.draw(st.sampled_from(ALL))
        b = data.draw(grams(ring))
        a = alternate_part(b)
        assert alternate_part(a) == a

    def test_norm_examples(self):
        n = norm_form(GramMatrix.from_rows(NAT, [[1, 1], [1, 1]]))
        assert n.diag == (1, 1) and n.offmap == {(0, 1): 2}
        n = norm_form(GramMatrix.diagonal(NAT, [3, 4]))
        assert n.diag == (3, 4) and n.off == ()
        n = norm_form(GramMatrix.from_rows(BOOL, [[1, 1], [1, 1]]))
        assert n.offmap == {(0, 1): 1}

    @given(st.data())
    def test_norm_form_evaluates_diagonal(self, data):
        ring = data.draw(st.sampled_from(ALL))
        g = data.draw(grams(ring))
        x = g.module.vector(data.draw(vectors(ring, g.rank)))
        assert eval_quadratic(norm_form(g), x) == eval_bilinear(g, x, x)


class TestExpansion:
    def test_triangular(self):
        q = QuadraticScheme.from_parts(NAT, [1, 2], {(0, 1): 3})
        b = GramMatrix.from_rows(NAT, [[2, 3], [3, 4]])
        assert make_expansion(q, b).rows == ((1, 3), (0, 2))
        assert make_expansion(q, b, {(0, 1): (1, 2)}).rows == ((1, 1), (2, 2))

    def test_diagonal(self):
        q = QuadraticScheme.diagonal(NAT, [1, 2])
        assert make_expansion(q, balanced_companion(q)).rows == ((1, 0), (0, 2))

    def test_bad_split(self):
        q = QuadraticScheme.from_parts(NAT, [1, 2], {(0, 1): 3})
        with pytest.raises(FormError):
            make_expansion(q, balanced_companion(q), {(0, 1): (1, 1)})

    def test_unbalanced(self):
        q = QuadraticScheme.diagonal(NAT, [1])
        with pytest.raises(FormError):
            make_expansion(q, GramMatrix.from_rows(NAT, [[1]]))

    @given(st.data())
    def test_expansion_equations(self, data):
        ring = data.draw(st.sampled_from([NAT, MAXPLUS, BOOL, SUPERTROPICAL]))
        q = data.draw(schemes(ring, max_rank=3))
        b = balanced_companion(q)
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        split = {(i, j): ring.random_split(b.rows[i][j], rng) for i in range(q.rank) for j in range(i + 1, q.rank)}
        e = make_expansion(q, b, split)
        n = q.rank
        for i in range(n):
            assert e.rows[i][i] == q.diag[i]
            for j in range(n):
                if i != j:
                    assert ring.add(e.rows[i][j], e.rows[j][i]) == b.rows[i][j]


class TestPredicates:
    def test_examples(self):
        assert predicates(GramMatrix.from_rows(NAT, [[0, 1], [1, 0]])).is_alternate
        p = predicates(QuadraticScheme.diagonal(NAT, [1, 2]))
        assert p.is_anisotropic and not p.is_diagonally_zero
        p = predicates(QuadraticScheme.from_parts(NAT, [0, 0], {(0, 1): 4}))
        assert p.rigid_sufficient
        assert not p.is_quasilinear_scheme

    def test_diagonal_zero_pins_companion(self):
        # over semirings with (a+b)^2 = a^2 + b^2 and a+a=0 => a=0, a
        # diagonally zero scheme has exactly one companion on base pairs
        for ring in (BOOL,):
            q = QuadraticScheme.from_parts(ring, [0, 0], {(0, 1): 1})
            found = []
            for c in ring.elements():
                for d in ring.elements():
                    for e in ring.elements():
                        b = GramMatrix.from_rows(ring, [[c, d], [d, e]])
                        if is_companion(q, b).holds:
                            found.append(b)
            assert found == [balanced_companion(q)]


class TestLinearHelpers:
    @given(st.data())
    def test_scale_and_add_evaluate_pointwise(self, data):
        ring = data.draw(st.sampled_from(ALL))
        n = data.draw(st.integers(1, 3))
        q1 = data.draw(schemes(ring, n))
        q2 = data.draw(schemes(ring, n))
        lam = data.draw(scalars(ring))
        x = q1.module.vector(data.draw(vectors(ring, n)))
        lhs = eval_quadratic(form_add(form_scale(lam, q1), q2), x).value
        rhs = ring.add(ring.mul(lam, eval_quadratic(q1, x).value), eval_quadratic(q2, x).value)
        assert lhs == rhs

    def test_permute_form(self):
        g = GramMatrix.from_rows(NAT, [[1, 2], [2, 3]])
        assert permute_form(g, [1, 0]).rows == ((3, 2), (2, 1))
