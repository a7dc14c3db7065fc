"""The automorphism group in canonical coordinates: action, product, inverse."""

from fractions import Fraction

import pytest

from triderive import (AutoAction, DomainError, GnElem, LieElem, OpSeries,
                       Poly, TriAut, act, bracket, commutator, convert_form,
                       decompose, exp_ad_auto, exp_map, gn_inverse,
                       multiply_formula, torus_apply)
from triderive.lie import standard_generators


def x(i: int, n: int = 3) -> Poly:
    return Poly.var(n, i)


def gn(n: int, form: str = "A", t=None, tau=None, s=None, f=None, e=None) -> GnElem:
    if t is None:
        t = [1] * n
    if tau is None:
        tau = TriAut.identity(n)
    if s is None and form == "A":
        s = [0] * (n - 2)
    if f is None:
        f = OpSeries.one(n - 1, "F" if form == "A" else "FP")
    if e is None:
        e = [OpSeries.zero_e(k + 1) for k in range(n - 2)]
    return GnElem(n, form, t, tau, s, f, e)


def same_action(g: GnElem, fn, n: int, max_exponent: int = 4) -> bool:
    return all(act(g, u) == fn(u) for u in standard_generators(n, max_exponent))


class TestGnElem:
    def test_identity(self):
        for form in ("A", "B"):
            assert GnElem.identity(3, form).is_identity()

    def test_form_a_requires_ct_tau(self):
        with pytest.raises(DomainError):
            gn(3, tau=TriAut.one_shift(3, 2, 1))

    def test_form_b_rejects_shift_data(self):
        with pytest.raises(DomainError):
            GnElem(3, "B", [1, 1, 1], TriAut.identity(3), (0,),
                   OpSeries.one(2, "FP"), [OpSeries.zero_e(1)])

    def test_series_symbols_are_checked(self):
        with pytest.raises(DomainError):
            gn(3, f=OpSeries.one(1))
        with pytest.raises(DomainError):
            gn(3, e=[OpSeries.zero_e(2)])

    def test_agrees_with_ignores_deep_coefficients(self):
        a = gn(3, f=OpSeries("F", 2, 4, {2: 1}))
        b = gn(3, f=OpSeries("F", 2, 2, {2: 1}))
        assert a.agrees_with(b)
        assert not a.agrees_with(gn(3, f=OpSeries("F", 2, 4, {2: 2})))


class TestAction:
    def test_feed_block(self):
        g = gn(3, e=[OpSeries("E", 1, None, {1: 1})])
        u = LieElem.basis(3, (1,), 2)
        assert act(g, u) == u + LieElem.d(3, 3)

    def test_unit_series_block(self):
        g = gn(3, f=OpSeries("F", 2, None, {1: 1}))
        u = LieElem.basis(3, (0, 2), 3)
        assert act(g, u) == u + LieElem.basis(3, (0, 1), 3, 2)

    def test_torus_block(self):
        g = gn(3, t=[2, 3, 5])
        u = LieElem.basis(3, (1,), 2)
        assert act(g, u) == u.scale(Fraction(2, 3))
        assert torus_apply((Fraction(2), Fraction(3), Fraction(5)), u) == act(g, u)

    def test_respects_brackets(self):
        g = gn(3, t=[2, 1, 3], tau=TriAut([Poly.zero(3), x(1) ** 2, x(1) * x(2)]),
               s=[Fraction(1, 2)], f=OpSeries("F", 2, None, {2: 1}),
               e=[OpSeries("E", 1, None, {1: 2})])
        u = LieElem.basis(3, (2,), 2) + LieElem.d(3, 1)
        v = LieElem.basis(3, (1, 1), 3) + LieElem.basis(3, (0,), 2)
        assert act(g, bracket(u, v)) == bracket(act(g, u), act(g, v))

    def test_action_memoizes_and_validates(self):
        calls = []

        def fn(u):
            calls.append(u)
            return u

        action = AutoAction(2, fn)
        probe = LieElem.d(2, 1)
        action(probe)
        action(probe)
        assert len(calls) == 1
        bad = AutoAction(2, lambda u: "no")
        with pytest.raises(DomainError):
            bad(probe)


class TestDecompose:
    def test_round_trip_pinned(self):
        g = gn(3, t=[2, 1, 3], tau=TriAut([Poly.zero(3), x(1) ** 2, x(1) * x(2)]),
               s=[Fraction(1, 2)], f=OpSeries("F", 2, 6, {1: Fraction(1, 2), 3: 1}),
               e=[OpSeries("E", 1, 6, {2: 1})])
        assert decompose(AutoAction.from_gnelem(g), order=6) == g

    def test_adjoint_action_is_inner(self):
        u = LieElem.basis(3, (2,), 2) + LieElem.basis(3, (0, 1), 3)
        g = decompose(exp_ad_auto(u), order=8)
        assert g.t == (1, 1, 1)
        assert g.tau == exp_map(u)
        assert g.s == (0,)
        assert g.f.is_one()
        assert all(series.is_zero_e() for series in g.e)

    def test_rejects_non_actions(self):
        torpedo = AutoAction(2, lambda u: u + LieElem.d(2, 2))
        with pytest.raises(DomainError):
            decompose(torpedo)


class TestConvertForm:
    def test_round_trip_exact(self):
        g = gn(3, t=[2, 1, 3], tau=TriAut([Poly.zero(3), x(1) ** 2, x(1) * x(2)]),
               s=[Fraction(1, 2)], f=OpSeries("F", 2, None, {2: 1}),
               e=[OpSeries("E", 1, None, {1: 2})])
        b = convert_form(g, "B")
        assert b.form == "B" and b.s is None
        assert convert_form(b, "A") == g

    def test_linear_term_truncates(self):
        g = gn(2, f=OpSeries("F", 1, None, {1: 1}))
        b = convert_form(g, "B", order=6)
        assert b.f.order == 6
        back = convert_form(b, "A", order=6)
        assert back.f.agrees_with(g.f, 6)


class TestGroupOperations:
    def small_pair(self):
        g = GnElem(3, "B", [2, 1, 1], TriAut([Poly.zero(3), x(1) ** 2, Poly.zero(3)]),
                   None, OpSeries("FP", 2, 8, {2: Fraction(1, 2)}),
                   [OpSeries("E", 1, 8, {1: 1})])
        h = GnElem(3, "B", [1, 3, 2], TriAut([Poly.zero(3), Poly.zero(3),
                                              x(1) * x(2)]),
                   None, OpSeries("FP", 2, 8, {3: 1}), [OpSeries.zero_e(1, 8)])
        return g, h

    def test_product_matches_composition(self):
        g, h = self.small_pair()
        prod = multiply_formula(g, h)
        assert same_action(prod, lambda u: act(g, act(h, u)), 3)

    def test_inverse(self):
        g, _ = self.small_pair()
        ginv = gn_inverse(g)
        assert multiply_formula(g, ginv).agrees_with(GnElem.identity(3, "B"), 8)
        for u in standard_generators(3, 4):
            assert act(ginv, act(g, u)) == u

    def test_commutator_of_tori_is_trivial(self):
        a = gn(3, t=[2, 3, 5], form="B", s=None)
        b = gn(3, t=[7, 1, 2], form="B", s=None)
        assert commutator(a, b).is_identity()

    def test_multiplication_needs_form_b(self):
        with pytest.raises(DomainError):
            multiply_formula(gn(3), gn(3))
