"""Shared hypothesis profile and value strategies for the test suite."""

from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from triderive import LieElem, Poly, TriAut

settings.register_profile(
    "suite",
    settings(max_examples=40, deadline=None, derandomize=True,
             suppress_health_check=[HealthCheck.too_slow,
                                    HealthCheck.filter_too_much]))
settings.load_profile("suite")


def rationals(span: int = 6, nonzero: bool = False) -> st.SearchStrategy[Fraction]:
    nums = st.integers(-span, span)
    if nonzero:
        nums = nums.filter(bool)
    return st.builds(Fraction, nums, st.integers(1, 4))


def exponent_tuples(nvars: int, max_total: int = 3) -> st.SearchStrategy[tuple]:
    return st.lists(
        st.integers(0, max_total), min_size=nvars, max_size=nvars,
    ).map(tuple).filter(lambda e: sum(e) <= max_total)


def polys(nvars: int, max_total: int = 3, max_terms: int = 4,
          max_var: int | None = None) -> st.SearchStrategy[Poly]:
    """Sparse polynomials; max_var restricts to the subring on x1..xk."""
    exps = exponent_tuples(nvars, max_total)
    if max_var is not None:
        exps = exps.filter(lambda e: not any(e[max_var:]))
    return st.dictionaries(exps, rationals(nonzero=True), max_size=max_terms).map(
        lambda d: Poly(nvars, d))


def lie_elems(n: int, max_degree: int = 3,
              max_terms: int = 3) -> st.SearchStrategy[LieElem]:
    def key(i: int):
        return exponent_tuples(i - 1, max_degree).map(lambda a: (a, i))

    keys = st.integers(1, n).flatmap(key)
    return st.dictionaries(keys, rationals(nonzero=True), max_size=max_terms).map(
        lambda d: sum((LieElem.basis(n, a, i, c) for (a, i), c in d.items()),
                      LieElem.zero(n)))


def unipotent_auts(n: int, max_total: int = 2) -> st.SearchStrategy[TriAut]:
    parts = [st.just(Poly.zero(n))]
    for i in range(2, n + 1):
        parts.append(polys(n, max_total, max_terms=2, max_var=i - 1))
    return st.tuples(*parts).map(lambda a: TriAut(list(a)))


def triangular_auts(n: int, max_total: int = 2) -> st.SearchStrategy[TriAut]:
    lams = st.lists(rationals(span=3, nonzero=True), min_size=n, max_size=n)
    return st.tuples(unipotent_auts(n, max_total), lams).map(
        lambda pair: TriAut(list(pair[0].a), pair[1]))
