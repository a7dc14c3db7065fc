"""Triangular automorphisms: group laws, exp/log, conjugation."""

from fractions import Fraction

import pytest
from hypothesis import given

from conftest import lie_elems, triangular_auts, unipotent_auts
from triderive import (DomainError, LieElem, Poly, TriAut, bracket,
                       conjugate_derivation, exp_ad_apply, exp_map, log_map,
                       normalize_mod_shn, reconstruct_from_frames)
from triderive.triaut import format_triaut, split_ct_shift


class TestConstruction:
    def test_translation_parts_must_be_triangular(self):
        with pytest.raises(DomainError):
            TriAut([Poly.zero(2), Poly.var(2, 2)])

    def test_first_part_must_be_constant(self):
        with pytest.raises(DomainError):
            TriAut([Poly.var(2, 1), Poly.zero(2)])

    def test_scales_must_be_nonzero(self):
        with pytest.raises(DomainError):
            TriAut.torus([1, 0])

    def test_predicates(self):
        assert TriAut.identity(3).is_identity()
        assert TriAut.torus([2, 3, 4]).is_torus()
        assert TriAut.shift([1, 2, 3]).is_shift()
        sigma = TriAut([Poly.zero(2), Poly.var(2, 1) ** 2])
        assert sigma.is_unipotent() and sigma.is_ct()
        assert not TriAut.one_shift(2, 2, 1).is_ct()

    def test_images(self):
        sigma = TriAut([Poly.zero(2), Poly.var(2, 1) ** 2], [2, 3])
        assert sigma.image(1) == Poly.var(2, 1).scale(2)
        assert sigma.image(2) == Poly.var(2, 2).scale(3) + Poly.var(2, 1) ** 2


class TestGroupLaws:
    @given(triangular_auts(3))
    def test_inverse(self, sigma):
        assert sigma.compose(sigma.invert()).is_identity()
        assert sigma.invert().compose(sigma).is_identity()

    @given(triangular_auts(3, max_total=2), triangular_auts(3, max_total=2))
    def test_composition_applies_right_factor_first(self, s, t):
        p = Poly.var(3, 3) + Poly.var(3, 1) * Poly.var(3, 2)
        assert s.compose(t).apply(p) == s.apply(t.apply(p))

    @given(triangular_auts(2), triangular_auts(2), triangular_auts(2))
    def test_associative(self, a, b, c):
        assert a.compose(b).compose(c) == a.compose(b.compose(c))

    def test_apply_is_ring_map(self):
        sigma = TriAut([Poly.const(3, 1), Poly.var(3, 1) ** 2, Poly.zero(3)])
        p = Poly.var(3, 1) + Poly.var(3, 2)
        q = Poly.var(3, 2) * Poly.var(3, 3)
        assert sigma.apply(p * q) == sigma.apply(p) * sigma.apply(q)


class TestExpLog:
    def test_pinned_exponential(self):
        # exp(x1^2 d2) translates x2 by x1^2 and fixes x1
        sigma = exp_map(LieElem.basis(2, (2,), 2))
        assert sigma == TriAut([Poly.zero(2), Poly.var(2, 1) ** 2])

    def test_exp_of_d1_is_a_unit_shift(self):
        assert exp_map(LieElem.d(2, 1)) == TriAut.one_shift(2, 1, 1)

    def test_log_rejects_non_unipotent(self):
        with pytest.raises(DomainError):
            log_map(TriAut.torus([2, 1]))

    @given(lie_elems(3, max_degree=2, max_terms=2))
    def test_double_round_trip(self, u):
        sigma = exp_map(u)
        assert log_map(sigma) == u
        assert exp_map(log_map(sigma)) == sigma

    def test_one_parameter_subgroup(self):
        u = LieElem.basis(3, (1, 2), 3) + LieElem.basis(3, (1,), 2)
        assert exp_map(u).compose(exp_map(u.scale(-1))).is_identity()


class TestConjugation:
    def test_pinned_example(self):
        # exp(x1^2 d2) sends d1 to d1 - 2 x1 d2
        sigma = exp_map(LieElem.basis(2, (2,), 2))
        out = conjugate_derivation(sigma, LieElem.d(2, 1))
        assert out == LieElem.d(2, 1) + LieElem.basis(2, (1,), 2, -2)

    @given(triangular_auts(3, max_total=2), lie_elems(3, max_degree=2, max_terms=2),
           lie_elems(3, max_degree=2, max_terms=2))
    def test_respects_brackets(self, sigma, u, v):
        lhs = conjugate_derivation(sigma, bracket(u, v))
        rhs = bracket(conjugate_derivation(sigma, u),
                      conjugate_derivation(sigma, v))
        assert lhs == rhs

    @given(triangular_auts(2), triangular_auts(2), lie_elems(2, max_terms=2))
    def test_homomorphism_in_the_group(self, s, t, u):
        lhs = conjugate_derivation(s.compose(t), u)
        rhs = conjugate_derivation(s, conjugate_derivation(t, u))
        assert lhs == rhs

    @given(lie_elems(3, max_degree=2, max_terms=2),
           lie_elems(3, max_degree=2, max_terms=2))
    def test_exp_ad_matches_conjugation(self, u, v):
        assert exp_ad_apply(u, v) == conjugate_derivation(exp_map(u), v)


class TestNormalForms:
    def test_normalize_mod_shn(self):
        sigma = TriAut([Poly.zero(2), Poly.const(2, 5) + Poly.var(2, 1) ** 2])
        assert normalize_mod_shn(sigma) == TriAut([Poly.zero(2), Poly.var(2, 1) ** 2])
        assert normalize_mod_shn(sigma).is_normalized_unipotent()

    def test_split_ct_shift(self):
        tau = TriAut([Poly.zero(3), Poly.var(3, 1) ** 2,
                      Poly.var(3, 1) * Poly.var(3, 2)])
        mu = (Fraction(1), Fraction(-2), Fraction(3))
        sigma = tau.compose(TriAut.shift(mu))
        got_tau, got_mu = split_ct_shift(sigma)
        assert got_tau == tau
        assert got_mu == mu

    def test_reconstruct_from_frames(self):
        # frames list the images of d1..dn under conjugation
        sigma = TriAut([Poly.zero(2), Poly.var(2, 1) ** 2])
        frames = [conjugate_derivation(sigma, LieElem.d(2, i)) for i in (1, 2)]
        assert reconstruct_from_frames(frames) == sigma

    def test_format(self):
        sigma = TriAut([Poly.zero(2), Poly.var(2, 1) ** 2], [1, 2])
        assert format_triaut(sigma) == "[0, x1^2 ; 1, 2]"
        assert format_triaut(TriAut([Poly.zero(2), Poly.var(2, 1)])) == "[0, x1]"
