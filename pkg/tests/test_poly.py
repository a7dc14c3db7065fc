"""Exact polynomial arithmetic, calculus and substitution."""

from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import polys, rationals
from triderive import DegreeCapError, DomainError, Poly, phi_projection, rat, rat_str
from triderive.poly import format_poly, iter_exponents


def x(i: int, nvars: int = 3) -> Poly:
    return Poly.var(nvars, i)


class TestConstruction:
    def test_zero_terms_are_dropped(self):
        p = Poly(2, {(1, 0): Fraction(0), (0, 1): Fraction(2)})
        assert p.terms == {(0, 1): Fraction(2)}

    def test_bad_exponent_length(self):
        with pytest.raises(DomainError):
            Poly(2, {(1,): 1})

    def test_negative_exponent(self):
        with pytest.raises(DomainError):
            Poly.monomial(2, (-1, 0))

    def test_var_index_out_of_range(self):
        with pytest.raises(DomainError):
            Poly.var(2, 3)

    def test_mixed_ring_arithmetic_rejected(self):
        with pytest.raises(DomainError):
            Poly.var(2, 1) + Poly.var(3, 1)


class TestQueries:
    def test_degrees(self):
        p = x(1) ** 2 * x(2) + x(3)
        assert p.total_degree() == 3
        assert p.degree_in(1) == 2
        assert p.degree_in(3) == 1
        assert Poly.zero(3).total_degree() == -1

    def test_max_var_and_subring(self):
        p = x(1) ** 4 + x(2)
        assert p.max_var() == 2
        assert p.uses_only(2)
        assert not p.uses_only(1)
        assert Poly.const(3, 5).max_var() == 0

    def test_coefficient_lookup(self):
        p = x(1) * x(2).scale(Fraction(3, 2))
        assert p.coefficient((1, 1, 0)) == Fraction(3, 2)
        assert p.coefficient((0, 0, 1)) == 0
        assert p.constant_term() == 0


class TestArithmetic:
    @given(polys(2), polys(2), polys(2))
    def test_ring_laws(self, p, q, r):
        assert p + q == q + p
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    @given(polys(2))
    def test_additive_inverse(self, p):
        assert p - p == Poly.zero(2)
        assert p + (-p) == Poly.zero(2)

    @given(polys(2), rationals())
    def test_scale_matches_constant_multiply(self, p, c):
        assert p.scale(c) == p * Poly.const(2, c)

    def test_product_oracle(self):
        # (x1 + x2)(x1 - x2) = x1^2 - x2^2
        p = (x(1) + x(2)) * (x(1) - x(2))
        assert p == x(1) ** 2 - x(2) ** 2

    @given(polys(2, max_total=2), st.integers(0, 5))
    def test_power_is_iterated_product(self, p, k):
        expected = Poly.const(2, 1)
        for _ in range(k):
            expected = expected * p
        assert p ** k == expected

    def test_negative_power_rejected(self):
        with pytest.raises(DomainError):
            x(1) ** -1


class TestDegreeCap:
    def test_product_over_cap(self):
        p = Poly.monomial(1, (40,))
        with pytest.raises(DegreeCapError):
            p * p

    def test_power_over_cap(self):
        with pytest.raises(DegreeCapError):
            Poly.var(1, 1) ** 65

    def test_substitution_over_cap(self):
        p = Poly.monomial(1, (30,))
        with pytest.raises(DegreeCapError):
            p.substitute([Poly.monomial(1, (3,))])


class TestCalculus:
    def test_diff_oracle(self):
        p = x(1) ** 3 * x(2) + x(2) ** 2
        assert p.diff(1) == x(1) ** 2 * x(2).scale(3)
        assert p.diff(2) == x(1) ** 3 + x(2).scale(2)
        assert p.diff(3) == Poly.zero(3)

    @given(polys(2), polys(2))
    def test_leibniz_rule(self, p, q):
        assert (p * q).diff(1) == p.diff(1) * q + p * q.diff(1)

    @given(polys(2), polys(2))
    def test_diff_commutes(self, p, q):
        assert p.diff(1).diff(2) == p.diff(2).diff(1)

    def test_diff_many(self):
        p = x(1) ** 4
        assert p.diff_many(1, 2) == (x(1) ** 2).scale(12)
        assert p.diff_many(1, 5) == Poly.zero(3)

    def test_diff_index_range(self):
        with pytest.raises(DomainError):
            x(1).diff(4)


class TestSubstitution:
    def test_identity_substitution(self):
        p = x(1) ** 2 * x(3) - x(2)
        assert p.substitute([x(1), x(2), x(3)]) == p

    def test_worked_example(self):
        # x1^2*x2 at x2 := x1 + 1 (in the same ring)
        p = Poly.var(2, 1) ** 2 * Poly.var(2, 2)
        q = p.substitute([Poly.var(2, 1), Poly.var(2, 1) + Poly.const(2, 1)])
        assert q == Poly.var(2, 1) ** 3 + Poly.var(2, 1) ** 2

    def test_changes_ring(self):
        p = Poly.var(2, 1) + Poly.var(2, 2)
        q = p.substitute([Poly.var(1, 1), Poly.var(1, 1) ** 2])
        assert q.nvars == 1
        assert q == Poly.var(1, 1) + Poly.var(1, 1) ** 2

    @given(polys(2, max_total=2), polys(2, max_total=2, max_terms=2),
           polys(2, max_total=2, max_terms=2))
    def test_substitution_is_a_ring_map(self, p, q, im1):
        im = [im1, Poly.var(2, 2)]
        assert (p + q).substitute(im) == p.substitute(im) + q.substitute(im)
        assert (p * q).substitute(im) == p.substitute(im) * q.substitute(im)

    def test_wrong_image_count(self):
        with pytest.raises(DomainError):
            Poly.var(2, 1).substitute([Poly.var(2, 1)])

    def test_mixed_image_rings(self):
        with pytest.raises(DomainError):
            Poly.var(2, 1).substitute([Poly.var(2, 1), Poly.var(3, 1)])

    def test_embed_and_set_var_to_zero(self):
        p = Poly.var(2, 1) * Poly.var(2, 2)
        q = p.embed(4)
        assert q.nvars == 4 and q.degree_in(1) == 1
        assert q.set_var_to_zero(2) == Poly.zero(4)


class TestProjectionAndFormat:
    def test_phi_projection_is_constant_term(self):
        p = Poly.const(2, 3) + Poly.var(2, 1)
        assert phi_projection(p) == 3

    def test_sorted_terms_descending_graded_lex(self):
        p = x(2) + x(1) ** 2 + Poly.const(3, 1)
        assert [e for e, _ in p.sorted_terms()] == [
            (2, 0, 0), (0, 1, 0), (0, 0, 0)]

    def test_format_examples(self):
        assert format_poly(Poly.zero(2)) == "0"
        assert format_poly(Poly.const(2, Fraction(-3, 2))) == "-3/2"
        p = Poly.var(2, 1) ** 2 - Poly.var(2, 2).scale(Fraction(1, 3))
        assert format_poly(p) == "x1^2 - 1/3*x2"

    def test_iter_exponents_counts(self):
        # distributing total degree <= 2 over two slots: 6 tuples
        assert len(list(iter_exponents(2, 2))) == 6

    def test_rat_round_trip(self):
        assert rat("3/4") == Fraction(3, 4)
        assert rat_str(Fraction(-5, 3)) == "-5/3"
        assert rat_str(Fraction(7)) == "7"
        with pytest.raises(DomainError):
            rat(1.5)
