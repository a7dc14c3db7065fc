"""Ordinal degrees in Cantor normal form and the basis enumeration."""

import hypothesis.strategies as st
import pytest
from hypothesis import given

from triderive import DomainError, OrdinalCNF, ord_compare, ord_of_algebra, ord_of_basis
from triderive.lie import iter_basis_keys, key_sort_key
from triderive.ordinals import format_ordinal


def ordinals(max_exp: int = 3) -> st.SearchStrategy[OrdinalCNF]:
    return st.dictionaries(
        st.integers(0, max_exp), st.integers(1, 5), max_size=3,
    ).map(OrdinalCNF)


class TestNormalForm:
    def test_zero(self):
        assert OrdinalCNF.zero().is_zero()
        assert format_ordinal(OrdinalCNF.zero()) == "0"

    def test_from_int(self):
        assert format_ordinal(OrdinalCNF.from_int(7)) == "7"
        assert OrdinalCNF.from_int(0).is_zero()

    def test_zero_coefficients_are_dropped(self):
        assert OrdinalCNF({2: 0, 0: 3}) == OrdinalCNF.from_int(3)

    def test_rejects_negative_exponent(self):
        with pytest.raises(DomainError):
            OrdinalCNF({-1: 1})

    def test_rejects_negative_coefficient(self):
        with pytest.raises(DomainError):
            OrdinalCNF({2: -1})

    def test_format(self):
        a = OrdinalCNF({2: 1, 1: 3, 0: 4})
        assert format_ordinal(a) == "w^2*1 + w*3 + 4"
        assert format_ordinal(OrdinalCNF.omega_power(1, 2)) == "w*2"


class TestCompare:
    def test_oracle_chain(self):
        # 0 < 5 < w < w*2 < w^2 < w^2 + w*5
        chain = [OrdinalCNF.zero(), OrdinalCNF.from_int(5),
                 OrdinalCNF.omega_power(1), OrdinalCNF.omega_power(1, 2),
                 OrdinalCNF.omega_power(2), OrdinalCNF({2: 1, 1: 5})]
        for i, a in enumerate(chain):
            for j, b in enumerate(chain):
                assert ord_compare(a, b) == (i > j) - (i < j)

    def test_finite_part_breaks_ties(self):
        assert ord_compare(OrdinalCNF({1: 2, 0: 3}), OrdinalCNF({1: 2, 0: 4})) == -1

    def test_rich_comparisons(self):
        assert OrdinalCNF.from_int(3) < OrdinalCNF.omega_power(1)
        assert OrdinalCNF.omega_power(2) >= OrdinalCNF({1: 9, 0: 9})

    @given(ordinals(), ordinals(), ordinals())
    def test_strict_total_order(self, a, b, c):
        assert ord_compare(a, a) == 0
        assert ord_compare(a, b) == -ord_compare(b, a)
        if ord_compare(a, b) <= 0 and ord_compare(b, c) <= 0:
            assert ord_compare(a, c) <= 0


class TestBasisDegrees:
    def test_pinned_values(self):
        assert format_ordinal(ord_of_basis((), 1, 3)) == "w^2*1 + w*1 + 1"
        assert format_ordinal(ord_of_basis((0, 2), 3, 3)) == "w*2 + 1"
        assert format_ordinal(ord_of_basis((0, 0), 3, 3)) == "1"
        assert format_ordinal(ord_of_basis((4,), 2, 3)) == "w^2*1 + 5"

    def test_algebra_degree_is_degree_of_d1(self):
        assert ord_of_algebra(2) == ord_of_basis((), 1, 2)
        assert format_ordinal(ord_of_algebra(3)) == "w^2*1 + w*1 + 1"

    def test_alpha_length_must_match_index(self):
        with pytest.raises(DomainError):
            ord_of_basis((1, 1), 2, 3)

    @pytest.mark.parametrize("n", [2, 3])
    def test_order_isomorphism_on_initial_segment(self, n):
        # The map key -> ordinal degree must be strictly monotone against
        # the basis order; checked exhaustively through degree 3.
        keys = sorted(iter_basis_keys(n, 3), key=key_sort_key)
        degrees = [ord_of_basis(alpha, i, n) for alpha, i in keys]
        for a, b in zip(degrees, degrees[1:]):
            assert ord_compare(a, b) == -1
