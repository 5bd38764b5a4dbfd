import os
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanoperiods import (
    LatticePolytope,
    LaurentPolynomial,
    constant_term,
    format_polynomial,
    multiply,
    parse_polynomial,
    period_sequence,
)
from fanoperiods import _pure
from fanoperiods.errors import (
    DimensionMismatchError,
    NonzeroConstantTermError,
    ParseError,
)
from fanoperiods.laurent import _pack_support, _prune_data

from oracles import multinomial_period

try:
    from fanoperiods import _speedups
except ImportError:
    _speedups = None


def mono(*e):
    return LaurentPolynomial.monomial(e)


class TestArithmetic:
    def test_inverse_monomials_cancel(self):
        assert mono(1) * mono(-1) == LaurentPolynomial.one(1)

    def test_binomial_square(self):
        f = mono(1, 0) + mono(0, 1)
        sq = f * f
        assert sq == LaurentPolynomial(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})

    def test_square_of_p2_mirror_has_no_constant_term(self, ex1_poly):
        sq = multiply(ex1_poly, ex1_poly)
        assert len(sq) == 9
        assert constant_term(sq) == 0

    def test_zero_coefficients_pruned(self):
        f = mono(1) - mono(1)
        assert f.is_zero()
        assert len(f) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            multiply(mono(1), mono(1, 0))

    def test_rational_coefficients(self):
        f = LaurentPolynomial(1, {(1,): Fraction(1, 2), (-1,): Fraction(3, 2)})
        assert constant_term(f * f) == 2 * Fraction(1, 2) * Fraction(3, 2)

    def test_pow(self, ex1_poly):
        assert ex1_poly ** 3 == ex1_poly * ex1_poly * ex1_poly
        assert ex1_poly ** 0 == LaurentPolynomial.one(2)


class TestConstantTerm:
    def test_absent(self, ex1_poly):
        assert constant_term(ex1_poly) == 0

    def test_present(self):
        f = LaurentPolynomial(1, {(0,): 4, (1,): 1})
        assert constant_term(f) == 4

    def test_cube_of_p2_mirror(self, ex1_poly):
        # (3m)!/(m!)^3 at m = 1
        assert constant_term(ex1_poly ** 3) == 6


class TestPeriodSequence:
    def test_p2_head(self, ex1_poly):
        assert list(period_sequence(ex1_poly, 6)) == [1, 0, 0, 6, 0, 0, 90]

    def test_example5_heads(self, p519664):
        from fanoperiods import minkowski_polynomials

        f2, f1 = minkowski_polynomials(p519664).polynomials
        assert list(period_sequence(f1, 10)) == [
            1, 0, 6, 0, 90, 0, 1860, 0, 44730, 0, 1172556,
        ]
        assert list(period_sequence(f2, 10)) == [
            1, 0, 4, 0, 60, 0, 1120, 0, 24220, 0, 567504,
        ]

    def test_example6_head(self, ex6_poly):
        assert list(period_sequence(ex6_poly, 9)) == [
            1, 0, 8, 0, 120, 0, 2240, 0, 47320, 0,
        ]

    def test_nonzero_constant_term_rejected(self):
        f = LaurentPolynomial(1, {(0,): 1, (1,): 1})
        with pytest.raises(NonzeroConstantTermError):
            period_sequence(f, 3)

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            period_sequence(LaurentPolynomial.zero(2), 3)

    def test_c0_is_one_and_integrality(self, ex2_poly):
        seq = period_sequence(ex2_poly, 15)
        assert seq[0] == 1 and seq[1] == 0
        assert all(Fraction(c).denominator == 1 for c in seq)

    def test_matches_multinomial_oracle(self, ex2_poly):
        assert list(period_sequence(ex2_poly, 8)) == multinomial_period(
            ex2_poly, 8
        )

    def test_oracle_on_random_small_polynomials(self):
        rng = random.Random(20240404)
        for _ in range(6):
            n = rng.choice([1, 2, 3])
            support = set()
            while len(support) < rng.randint(2, 4):
                e = tuple(rng.randint(-2, 2) for _ in range(n))
                if any(e):
                    support.add(e)
            f = LaurentPolynomial(
                n,
                {
                    e: Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                    for e in support
                },
            )
            if f.is_zero():
                continue
            assert list(period_sequence(f, 6)) == multinomial_period(f, 6)

    def test_unimodular_invariance(self, ex1_poly):
        rng = random.Random(7)
        for _ in range(3):
            u = _random_unimodular(2, rng)
            assert period_sequence(ex1_poly.apply_matrix(u), 9) == \
                period_sequence(ex1_poly, 9)

    def test_four_variables_supported(self):
        f = LaurentPolynomial(
            4, {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 1): 1,
                (-1, -1, -1, -1): 1}
        )
        seq = period_sequence(f, 4)
        assert seq[0] == 1
        assert list(seq) == multinomial_period(f, 4)


def _random_unimodular(n, rng):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for k in range(n):
            u[i][k] += c * u[j][k]
    return u


class TestKernels:
    @pytest.mark.skipif(_speedups is None, reason="extension not built")
    def test_compiled_matches_pure(self, ex2_poly, p519664):
        from fanoperiods import minkowski_polynomials

        f3 = minkowski_polynomials(p519664).polynomials[0]
        for f, m in [(ex2_poly, 25), (f3, 20)]:
            support = list(f.support())
            coeffs = [int(f.coefficient(e)) for e in support]
            keys, width = _pack_support(support, coeffs, m)
            prune = _prune_data(f, width)
            assert _speedups.power_constant_terms(
                keys, coeffs, m, prune
            ) == _pure.power_constant_terms(keys, coeffs, m, prune)

    def test_pruning_changes_nothing(self, ex4_poly):
        support = list(ex4_poly.support())
        coeffs = [int(ex4_poly.coefficient(e)) for e in support]
        keys, width = _pack_support(support, coeffs, 18)
        prune = _prune_data(ex4_poly, width)
        assert prune is not None
        assert _pure.power_constant_terms(
            keys, coeffs, 18, prune
        ) == _pure.power_constant_terms(keys, coeffs, 18, None)

    def test_env_override(self, ex1_poly, monkeypatch):
        monkeypatch.setenv("FANOPERIODS_PURE", "1")
        from fanoperiods import kernel_in_use

        assert kernel_in_use() == "pure"
        assert list(period_sequence(ex1_poly, 6)) == [1, 0, 0, 6, 0, 0, 90]


class TestGeometryHooks:
    def test_newton_polytope_triangle(self, ex1_poly):
        assert ex1_poly.newton_polytope().vertices == (
            (-1, -1), (0, 1), (1, 0),
        )

    def test_newton_polytope_quadrilateral(self, ex2_poly):
        assert ex2_poly.newton_polytope().vertices == (
            (-1, -1), (0, 1), (1, 0), (1, 1),
        )

    def test_newton_polytope_single_monomial(self):
        f = mono(2, 1)
        assert f.newton_polytope().vertices == ((2, 1),)

    def test_newton_polytope_of_zero(self):
        with pytest.raises(ValueError):
            LaurentPolynomial.zero(2).newton_polytope()

    def test_face_restriction_edge(self, ex1_poly):
        p = ex1_poly.newton_polytope()
        edge = next(
            e for e in p.faces(1)
            if set(e.vertices) == {(1, 0), (0, 1)}
        )
        assert ex1_poly.face_restriction(edge) == LaurentPolynomial(
            2, {(1, 0): 1, (0, 1): 1}
        )

    def test_face_restriction_vertex(self, ex2_poly):
        p = ex2_poly.newton_polytope()
        v = next(f for f in p.faces(0) if f.vertices == ((1, 1),))
        assert ex2_poly.face_restriction(v) == mono(1, 1)

    def test_face_restriction_pentagon(self, p519664):
        from fanoperiods import minkowski_polynomials

        f1 = minkowski_polynomials(p519664).polynomials[1]
        pentagon = next(
            f for f in f1.newton_polytope().faces(2) if len(f.vertices) == 5
        )
        restricted = f1.face_restriction(pentagon)
        assert restricted.coefficient((-1, 0, 0)) == 3
        assert len(restricted) == 6

    def test_face_of_other_polytope_rejected(self, ex1_poly, ex2_poly):
        alien = ex2_poly.newton_polytope().faces(1)[0]
        with pytest.raises(ValueError):
            ex1_poly.face_restriction(alien)


class TestTextFormat:
    def test_round_trip(self, ex2_poly):
        assert parse_polynomial(format_polynomial(ex2_poly)) == ex2_poly

    def test_parse_with_comments_and_rationals(self):
        text = "# comment\ndim 2\n1 0 : 1/2\n-1 0 : 3\n"
        f = parse_polynomial(text)
        assert f.coefficient((1, 0)) == Fraction(1, 2)

    def test_parse_errors_carry_line_numbers(self):
        with pytest.raises(ParseError) as err:
            parse_polynomial("dim 2\n1 : 3\n", path="f.poly")
        assert "f.poly:2" in str(err.value)

    def test_deterministic_order(self, ex4_poly):
        text = format_polynomial(ex4_poly)
        assert text == format_polynomial(parse_polynomial(text))


@settings(max_examples=30, deadline=None)
@given(
    st.dictionaries(
        st.tuples(
            st.integers(min_value=-2, max_value=2),
            st.integers(min_value=-2, max_value=2),
        ),
        st.integers(min_value=-4, max_value=4),
        min_size=1,
        max_size=5,
    )
)
def test_constant_term_of_product_matches_convolution(terms):
    f = LaurentPolynomial(2, terms)
    g = LaurentPolynomial(
        2, {(-e[0], -e[1]): c for e, c in terms.items()}
    )
    expected = sum(
        (f.coefficient(e) * g.coefficient((-e[0], -e[1]))
         for e in f.support()),
        Fraction(0),
    )
    assert constant_term(multiply(f, g)) == expected
