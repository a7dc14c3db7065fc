"""The automorphism group of the triangular derivation algebra, in
canonical coordinates.

Every automorphism factors uniquely into commuting-frame data: a torus
part t (coordinate scalings), a triangular part tau, a shift part s, a
unit series f acting on the top coefficient through d/dx_{n-1}, and a
tuple e of no-constant series feeding lower coefficients into the top
one.  Two coordinate layouts are supported:

  Form A:  sigma = t . tau . s . f . e      (tau with no constant terms,
           s a shift of x1..x_{n-2}, f a unit series)
  Form B:  sigma = tau . t . e . f          (tau unipotent modulo shifts
           of x_n, the shift data absorbed into tau, f without linear
           term)

Form A is what the black-box decomposition produces; Form B is where
the closed multiplication formula lives.  ``act`` evaluates either form
on a derivation, ``decompose`` recovers Form A coordinates from action
queries alone, and ``convert_form`` moves between the two layouts.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, InternalError
from .lie import LieElem, bracket, exp_ad_apply, standard_generators
from .poly import Poly, RatLike, rat
from .series import DEFAULT_ORDER, OpSeries, factor_shift, _min_order
from .triaut import (TriAut, conjugate_derivation, exp_map, normalize_mod_shn,
                     reconstruct_from_frames, split_ct_shift)


def torus_apply(lams: Sequence[Fraction], u: LieElem) -> LieElem:
    """Action of the coordinate scaling x_k -> lam_k x_k on a derivation:
    x^a d_i picks up lam^a / lam_i."""
    if len(lams) != u.n:
        raise DomainError("need one scale per coordinate")
    terms = {}
    for (alpha, i), c in u.terms.items():
        factor = 1 / lams[i - 1]
        for k, a in enumerate(alpha):
            if a:
                factor *= lams[k] ** a
        terms[(alpha, i)] = c * factor
    return LieElem(u.n, terms)


def _shift_aut(n: int, mus: Sequence[Fraction]) -> TriAut:
    """Shift of x1..x_{n-2} by the given constants, as an automorphism."""
    parts = [Poly.const(n, m) for m in mus] + [Poly.zero(n), Poly.zero(n)]
    return TriAut(parts)


class GnElem:
    """Immutable group element in canonical coordinates (Form A or B)."""

    __slots__ = ("n", "form", "t", "tau", "s", "f", "e")

    def __init__(self, n: int, form: str, t: Sequence[RatLike], tau: TriAut,
                 s: Sequence[RatLike] | None, f: OpSeries,
                 e: Sequence[OpSeries]):
        if n < 2:
            raise DomainError("rank must be at least 2")
        if form not in ("A", "B"):
            raise DomainError(f"unknown form {form!r}")
        tvals = tuple(rat(c) for c in t)
        if len(tvals) != n or any(not c for c in tvals):
            raise DomainError("torus part needs n nonzero scales")
        if tau.n != n:
            raise DomainError("triangular part has the wrong rank")
        evals = tuple(e)
        if len(evals) != n - 2:
            raise DomainError("need one feed series per index 2..n-1")
        for k, series in enumerate(evals):
            if series.kind != "E" or series.var != k + 1:
                raise DomainError(
                    f"feed series for index {k + 2} must be no-constant in d{k + 1}")
        if f.var != n - 1:
            raise DomainError("the unit series must live in the last inner symbol")
        if form == "A":
            if s is None:
                raise DomainError("Form A carries shift data")
            svals: tuple[Fraction, ...] | None = tuple(rat(c) for c in s)
            if len(svals) != n - 2:
                raise DomainError("shift part needs n-2 entries")
            if not tau.is_ct():
                raise DomainError(
                    "Form A triangular part must fix x1 and have no constant terms")
            if f.kind != "F":
                raise DomainError("Form A unit series must be of kind F")
        else:
            if s is not None:
                raise DomainError("Form B absorbs the shift data into tau")
            svals = None
            if not tau.is_normalized_unipotent():
                raise DomainError(
                    "Form B triangular part must be unipotent with no constant "
                    "term in its last translation")
            if f.kind != "FP":
                raise DomainError("Form B unit series must lack a linear term")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "t", tvals)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "s", svals)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "e", evals)

    @staticmethod
    def identity(n: int, form: str = "A") -> GnElem:
        f = OpSeries.one(n - 1, "F" if form == "A" else "FP")
        e = [OpSeries.zero_e(k + 1) for k in range(n - 2)]
        s = [Fraction(0)] * (n - 2) if form == "A" else None
        return GnElem(n, form, [1] * n, TriAut.identity(n), s, f, e)

    def is_identity(self) -> bool:
        return (all(c == 1 for c in self.t) and self.tau.is_identity()
                and (self.s is None or not any(self.s))
                and self.f.is_one() and all(x.is_zero_e() for x in self.e))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GnElem):
            return NotImplemented
        return (self.n == other.n and self.form == other.form
                and self.t == other.t and self.tau == other.tau
                and self.s == other.s and self.f == other.f
                and self.e == other.e)

    def __hash__(self) -> int:
        return hash((self.n, self.form, self.t, self.tau, self.s, self.f, self.e))

    def agrees_with(self, other: GnElem, through: int | None = None) -> bool:
        """Structural equality with series compared through the common order."""
        if (self.n, self.form, self.t, self.tau, self.s) != \
                (other.n, other.form, other.t, other.tau, other.s):
            return False
        if not self.f.agrees_with(other.f, through):
            return False
        return all(a.agrees_with(b, through) for a, b in zip(self.e, other.e))

    def __repr__(self) -> str:
        return (f"GnElem(n={self.n}, form={self.form!r}, t={self.t}, "
                f"tau={self.tau!r}, s={self.s}, f={self.f!r}, e={self.e!r})")


# -- evaluating the action ------------------------------------------------------


def _apply_feeds(e: Sequence[OpSeries], u: LieElem) -> LieElem:
    """u  ->  u + sum_i e_i(p_i) d_n where p_i is the d_i coefficient."""
    n = u.n
    extra = Poly.zero(n)
    for k, series in enumerate(e):
        i = k + 2
        pi = u.coefficient_poly(i)
        if pi:
            extra = extra + series.apply(pi)
    if not extra:
        return u
    coeffs = u.coefficient_polys()
    coeffs[n - 1] = coeffs[n - 1] + extra
    return LieElem.from_coefficients(coeffs)


def _apply_unit_series(f: OpSeries, u: LieElem) -> LieElem:
    """Rewrites only the d_n coefficient: p_n -> f(p_n)."""
    n = u.n
    pn = u.coefficient_poly(n)
    if not pn:
        return u
    coeffs = u.coefficient_polys()
    coeffs[n - 1] = f.apply(pn)
    return LieElem.from_coefficients(coeffs)


def act(g: GnElem, u: LieElem) -> LieElem:
    """Evaluate the automorphism on a derivation, factor by factor."""
    if g.n != u.n:
        raise DomainError(f"mixed ranks: {g.n} vs {u.n}")
    if g.form == "A":
        w = _apply_feeds(g.e, u)
        w = _apply_unit_series(g.f, w)
        assert g.s is not None
        if any(g.s):
            w = conjugate_derivation(_shift_aut(g.n, g.s), w)
        if not g.tau.is_identity():
            w = conjugate_derivation(g.tau, w)
        return torus_apply(g.t, w)
    w = _apply_unit_series(g.f, u)
    w = _apply_feeds(g.e, w)
    w = torus_apply(g.t, w)
    if not g.tau.is_identity():
        w = conjugate_derivation(g.tau, w)
    return w


class AutoAction:
    """A rank-n automorphism action given only as a black-box evaluator.

    Results are memoized, so repeated probes of the same derivation are
    free; the evaluator must be deterministic.
    """

    __slots__ = ("n", "_fn", "_memo")

    def __init__(self, n: int, fn: Callable[[LieElem], LieElem]):
        if n < 2:
            raise DomainError("rank must be at least 2")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_fn", fn)
        object.__setattr__(self, "_memo", {})

    def __call__(self, u: LieElem) -> LieElem:
        if u.n != self.n:
            raise DomainError(f"probe has rank {u.n}, action has rank {self.n}")
        out = self._memo.get(u)
        if out is None:
            out = self._fn(u)
            if not isinstance(out, LieElem) or out.n != self.n:
                raise DomainError("action evaluator returned a foreign value")
            self._memo[u] = out
        return out

    @staticmethod
    def from_triaut(sigma: TriAut) -> AutoAction:
        return AutoAction(sigma.n, lambda u: conjugate_derivation(sigma, u))

    @staticmethod
    def from_gnelem(g: GnElem) -> AutoAction:
        return AutoAction(g.n, lambda u: act(g, u))

    @staticmethod
    def composed(outer: AutoAction, inner: AutoAction) -> AutoAction:
        if outer.n != inner.n:
            raise DomainError("composing actions of different ranks")
        return AutoAction(outer.n, lambda u: outer(inner(u)))


def exp_ad_auto(u: LieElem) -> AutoAction:
    """The action exp(ad u), evaluated termwise through the bracket."""
    return AutoAction(u.n, lambda v: exp_ad_apply(u, v))


# -- recovering coordinates from the action --------------------------------------


def _phi_extract(w: LieElem, m: int) -> Fraction:
    """Project a d_n-supported element to the coefficient of d_n that
    survives killing x_m, computed by the resummation
    sum_k (-1)^k x_m^k / k! ad(d_m)^k.

    The straight reading (substitute x_m := 0 in the d_n coefficient)
    agrees; the test suite checks the equivalence.
    """
    n = w.n
    for _, j in w.terms:
        if j != n:
            raise DomainError("projection expects a top-coefficient element")
    dm = LieElem.d(n, m)
    xm = Poly.var(n, m)
    acc = LieElem.zero(n)
    cur = w
    factor = Poly.const(n, 1)
    k = 0
    while cur:
        contrib = cur.coefficient_poly(n) * factor
        acc = acc + LieElem.from_coefficients(
            [Poly.zero(n)] * (n - 1) + [contrib])
        cur = bracket(dm, cur)
        k += 1
        factor = factor * xm.scale(Fraction(-1, k))
    out = acc.coefficient_poly(n)
    const = out.constant_term()
    if out != Poly.const(n, const):
        raise InternalError("projection left more than a constant behind")
    return const


def _unit_key(i: int, n: int) -> tuple[tuple[int, ...], int]:
    return ((0,) * (i - 1), i)


def _spot_check(action: AutoAction, rng: random.Random, pairs: int = 20) -> None:
    """Cheap sanity probes: the action must be linear and respect brackets
    on random generator pairs before we trust it with a decomposition."""
    n = action.n
    gens = standard_generators(n, 3)
    scalars = [Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3)]
    for _ in range(pairs):
        u = rng.choice(gens)
        v = rng.choice(gens)
        c1 = rng.choice(scalars)
        c2 = rng.choice(scalars)
        combo = action(u.scale(c1) + v.scale(c2))
        if combo != action(u).scale(c1) + action(v).scale(c2):
            raise DomainError("action is not linear on generators")
        if action(bracket(u, v)) != bracket(action(u), action(v)):
            raise DomainError("action does not respect brackets on generators")


def decompose(action: AutoAction, order: int = DEFAULT_ORDER,
              validate: bool = True) -> GnElem:
    """Recover Form A coordinates of an automorphism from action queries.

    Only standard generators are probed.  Series data is recovered through
    the given order; everything else is exact.  Raises DomainError when
    the probes show the black box is not an automorphism action of the
    expected triangular shape.
    """
    n = action.n
    if order < 1:
        raise DomainError("order must be at least 1")
    if validate:
        _spot_check(action, random.Random(7042))

    # Torus block: the image of d_i determines 1/lambda_i.
    images = [action(LieElem.d(n, i)) for i in range(1, n + 1)]
    lams: list[Fraction] = []
    for i, w in enumerate(images, start=1):
        c = w.terms.get(_unit_key(i, n))
        if not c:
            raise DomainError(f"image of d{i} lost its d{i} component")
        for (alpha, j), _ in w.terms.items():
            if j < i or (j == i and any(alpha)):
                raise DomainError(f"image of d{i} is not lower triangular")
        lams.append(1 / c)
    t = tuple(lams)
    tinv = tuple(1 / c for c in t)

    # Triangular block: rescale the frame to unit leading terms and solve.
    frames = [torus_apply(tinv, w) for w in images]
    tau = reconstruct_from_frames(frames)
    if not tau.is_ct():
        raise InternalError("frame reconstruction left constant terms")

    tt_tau = TriAut.torus(t).compose(tau)
    peel_tt = tt_tau.invert()

    def residual(alpha: tuple[int, ...], i: int, scale: Fraction) -> LieElem:
        """(t tau)^(-1)-conjugated image of scale * x^alpha d_i."""
        w = action(LieElem.basis(n, alpha, i)).scale(scale)
        return conjugate_derivation(peel_tt, w)

    # Unit series: probe x_{n-1}^i d_n and project.
    f_coeffs: dict[int, Fraction] = {}
    for i in range(1, order + 1):
        alpha = (0,) * (n - 2) + (i,)
        w = residual(alpha, n, Fraction(1, _fact(i)))
        c = _phi_extract(w, n - 1)
        if c:
            f_coeffs[i] = c
    f = OpSeries("F", n - 1, order, f_coeffs)
    f_inv = f.reciprocal()

    # Shift block: after peeling f, the image of x_i d_{i+1} shows mu_i.
    mus: list[Fraction] = []
    for i in range(1, n - 1):
        alpha = (0,) * (i - 1) + (1,)
        w = _apply_unit_series(f_inv, residual(alpha, i + 1, Fraction(1)))
        if w.terms.get((alpha, i + 1)) != 1:
            raise DomainError(f"image of x{i}*d{i + 1} is not shift-shaped")
        mus.append(w.terms.get(_unit_key(i + 1, n), Fraction(0)))
    s = tuple(mus)
    peel_shift = _shift_aut(n, s).invert() if any(mus) else None

    # Feed series: what remains on x_{i-1}^j d_i beyond the element itself.
    e_list: list[OpSeries] = []
    for i in range(2, n):
        coeffs: dict[int, Fraction] = {}
        for j in range(1, order + 1):
            scale = Fraction(1, _fact(j))
            alpha = (0,) * (i - 2) + (j,)
            w = _apply_unit_series(f_inv, residual(alpha, i, scale))
            if peel_shift is not None:
                w = conjugate_derivation(peel_shift, w)
            c = _phi_extract(w - LieElem.basis(n, alpha, i, scale), i - 1)
            if c:
                coeffs[j] = c
        e_list.append(OpSeries("E", i - 1, order, coeffs))

    return GnElem(n, "A", t, tau, s, f, e_list)


def _fact(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


# -- changing coordinate layouts --------------------------------------------------


def convert_form(g: GnElem, target: str, order: int | None = None) -> GnElem:
    """Rewrite between Form A and Form B.

    The only information loss possible is truncation when an exponential
    shift factor meets an exact series; the result's series orders record
    exactly what is still known.
    """
    if target not in ("A", "B"):
        raise DomainError(f"unknown form {target!r}")
    if target == g.form:
        return g
    n = g.n
    tt = TriAut.torus(g.t)
    if target == "B":
        lam1, fp = factor_shift(g.f, order)
        assert g.s is not None
        inner = g.tau.compose(_shift_aut(n, g.s))
        if lam1:
            inner = inner.compose(TriAut.one_shift(n, n - 1, lam1))
        tau_b = normalize_mod_shn(tt.compose(inner).compose(tt.invert()))
        return GnElem(n, "B", g.t, tau_b, None, fp, g.e)

    unipotent = tt.invert().compose(g.tau).compose(tt)
    tau_a, mu = split_ct_shift(unipotent)
    if mu[n - 1]:
        raise InternalError("normalized element produced a last-coordinate shift")
    lam1 = mu[n - 2]
    if lam1:
        target_order = _min_order(g.f.order, order)
        if target_order is None:
            target_order = DEFAULT_ORDER
        fa = OpSeries.exp_shift(n - 1, lam1, target_order).mul(
            g.f.truncate(target_order))
    else:
        fa = g.f.truncate(order) if order is not None else g.f
    fa = OpSeries("F", fa.var, fa.order, fa.coeffs)
    return GnElem(n, "A", g.t, tau_a, tuple(mu[: n - 2]), fa, g.e)


# -- the closed multiplication ------------------------------------------------------


def multiply_formula(g: GnElem, h: GnElem) -> GnElem:
    """Product of two Form B elements, directly in coordinates.

    Sliding g's series factors through h's unipotent part deposits a
    correction exp(c d_n) with c = (f_g - 1)(b_n) + sum_i e_{g,i}(b_i),
    where the b_i are h's translation parts; after that only torus
    rescalings and coefficient-wise series arithmetic remain.
    """
    if g.form != "B" or h.form != "B":
        raise DomainError("the multiplication formula needs Form B inputs")
    if g.n != h.n:
        raise DomainError(f"mixed ranks: {g.n} vs {h.n}")
    n = g.n

    b = [h.tau.a[i] for i in range(n)]
    c = g.f.apply_without_unit(b[n - 1])
    for k, series in enumerate(g.e):
        if b[k + 1]:
            c = c + series.apply(b[k + 1])

    tt = TriAut.torus(g.t)
    tau_new = g.tau
    if c:
        correction = torus_apply(
            g.t, LieElem.from_coefficients([Poly.zero(n)] * (n - 1) + [c]))
        tau_new = tau_new.compose(exp_map(correction))
    tau_new = tau_new.compose(tt.compose(h.tau).compose(tt.invert()))
    tau_new = normalize_mod_shn(tau_new)

    t_new = tuple(a * b2 for a, b2 in zip(g.t, h.t))

    e_new = []
    for k, series in enumerate(g.e):
        i = k + 2
        moved = series.scale_coeffs(h.t[n - 1] / h.t[i - 1]) \
                      .scale_powers(h.t[i - 2])
        e_new.append(moved.add_e(h.e[k]))

    f_new = g.f.scale_powers(h.t[n - 2]).mul(h.f)
    f_new = OpSeries("FP", f_new.var, f_new.order, f_new.coeffs)

    return GnElem(n, "B", t_new, tau_new, None, f_new, e_new)


def gn_inverse(g: GnElem, order: int | None = None) -> GnElem:
    """Group inverse, assembled from the inverses of the pure factors."""
    gb = convert_form(g, "B", order)
    n = gb.n

    inv_order = order if order is not None else gb.f.order
    if inv_order is None and gb.f.coeffs:
        inv_order = DEFAULT_ORDER
    f_inv = gb.f.reciprocal(inv_order)
    f_inv = OpSeries("FP", f_inv.var, f_inv.order, f_inv.coeffs)

    out = _pure_f(n, f_inv)
    e_inv = [series.negate_e() for series in gb.e]
    out = multiply_formula(out, _pure_e(n, e_inv))
    out = multiply_formula(out, _pure_torus(n, tuple(1 / c for c in gb.t)))
    out = multiply_formula(
        out, _pure_tau(n, normalize_mod_shn(gb.tau.invert())))
    if g.form == "A":
        return convert_form(out, "A", order)
    return out


def commutator(g: GnElem, h: GnElem) -> GnElem:
    """g h g^(-1) h^(-1) through the multiplication formula."""
    gb = convert_form(g, "B")
    hb = convert_form(h, "B")
    out = multiply_formula(gb, hb)
    out = multiply_formula(out, gn_inverse(gb))
    return multiply_formula(out, gn_inverse(hb))


def _pure_torus(n: int, t: Sequence[RatLike]) -> GnElem:
    return GnElem(n, "B", t, TriAut.identity(n), None,
                  OpSeries.one(n - 1, "FP"),
                  [OpSeries.zero_e(k + 1) for k in range(n - 2)])


def _pure_tau(n: int, tau: TriAut) -> GnElem:
    return GnElem(n, "B", [1] * n, tau, None, OpSeries.one(n - 1, "FP"),
                  [OpSeries.zero_e(k + 1) for k in range(n - 2)])


def _pure_f(n: int, f: OpSeries) -> GnElem:
    return GnElem(n, "B", [1] * n, TriAut.identity(n), None, f,
                  [OpSeries.zero_e(k + 1) for k in range(n - 2)])


def _pure_e(n: int, e: Sequence[OpSeries]) -> GnElem:
    return GnElem(n, "B", [1] * n, TriAut.identity(n), None,
                  OpSeries.one(n - 1, "FP"), e)
