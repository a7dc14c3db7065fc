"""Triangular polynomial automorphisms.

An automorphism here sends x_i to lambda_i * x_i + a_i with a nonzero
scalar lambda_i and a polynomial a_i in x1..x_{i-1} only (so a_1 is a
constant).  These maps form a group; the unipotent ones (all lambda_i
equal 1) are exactly the exponentials of triangular derivations, and
conjugation by any triangular automorphism preserves the derivation
algebra, which is what makes the whole calculus exact.

Notation for values: [a1, ..., an ; l1, ..., ln], with the lambda block
omitted when the map is unipotent.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InternalError
from .lie import LieElem, bracket
from .poly import Poly, RatLike, rat, rat_str


class TriAut:
    """Immutable triangular automorphism of the rank-n polynomial ring."""

    __slots__ = ("n", "a", "lam", "_images", "_inv")

    def __init__(self, a: Sequence[Poly], lam: Sequence[RatLike] | None = None):
        n = len(a)
        if n < 1:
            raise DomainError("rank must be at least 1")
        if lam is None:
            lams = tuple(Fraction(1) for _ in range(n))
        else:
            if len(lam) != n:
                raise DomainError("need one scale per variable")
            lams = tuple(rat(c) for c in lam)
        if any(not c for c in lams):
            raise DomainError("scales must be nonzero")
        polys = []
        for i, p in enumerate(a, start=1):
            if p.nvars != n:
                raise DomainError("translation parts must live in the rank-n ring")
            if not p.uses_only(i - 1):
                raise DomainError(f"translation part of x{i} may only use x1..x{i - 1}")
            polys.append(p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", tuple(polys))
        object.__setattr__(self, "lam", lams)
        object.__setattr__(self, "_images", None)
        object.__setattr__(self, "_inv", None)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def identity(n: int) -> TriAut:
        return TriAut([Poly.zero(n) for _ in range(n)])

    @staticmethod
    def torus(lam: Sequence[RatLike]) -> TriAut:
        n = len(lam)
        return TriAut([Poly.zero(n) for _ in range(n)], lam)

    @staticmethod
    def shift(mu: Sequence[RatLike]) -> TriAut:
        n = len(mu)
        return TriAut([Poly.const(n, m) for m in mu])

    @staticmethod
    def one_shift(n: int, index: int, amount: RatLike) -> TriAut:
        """Translate only x_index by a constant."""
        parts = [Poly.zero(n) for _ in range(n)]
        parts[index - 1] = Poly.const(n, amount)
        return TriAut(parts)

    # -- predicates -------------------------------------------------------

    def is_identity(self) -> bool:
        return all(c == 1 for c in self.lam) and all(p.is_zero() for p in self.a)

    def is_unipotent(self) -> bool:
        return all(c == 1 for c in self.lam)

    def is_torus(self) -> bool:
        return all(p.is_zero() for p in self.a)

    def is_shift(self) -> bool:
        return self.is_unipotent() and all(
            p.is_zero() or p.total_degree() == 0 for p in self.a)

    def is_ct(self) -> bool:
        """Unipotent, fixes x1, and no translation has a constant term."""
        return (self.is_unipotent() and self.a[0].is_zero()
                and all(not p.constant_term() for p in self.a))

    def is_normalized_unipotent(self) -> bool:
        """Unipotent with no constant term in the last translation part,
        the canonical representative modulo last-coordinate shifts."""
        return self.is_unipotent() and not self.a[-1].constant_term()

    # -- the group operations ----------------------------------------------

    def image(self, i: int) -> Poly:
        """The polynomial this map sends x_i to."""
        return Poly.var(self.n, i).scale(self.lam[i - 1]) + self.a[i - 1]

    def images(self) -> tuple[Poly, ...]:
        cached = self._images
        if cached is None:
            cached = tuple(self.image(i) for i in range(1, self.n + 1))
            object.__setattr__(self, "_images", cached)
        return cached

    def apply(self, p: Poly) -> Poly:
        """Apply to a polynomial by substituting the images."""
        if p.nvars != self.n:
            raise DomainError("polynomial must live in the rank-n ring")
        return p.substitute(self.images())

    def compose(self, other: TriAut) -> TriAut:
        """Composition applying ``other`` first: result(p) = self(other(p))."""
        if self.n != other.n:
            raise DomainError(f"mixed ranks: {self.n} vs {other.n}")
        return _from_images(self.n, [self.apply(q) for q in other.images()])

    def invert(self) -> TriAut:
        """Group inverse, built coordinate by coordinate.  Cached: the
        instance is immutable and conjugation inverts the same map over
        and over."""
        cached = self._inv
        if cached is not None:
            return cached
        n = self.n
        inverse_images: list[Poly] = []
        for i in range(1, n + 1):
            # a_i only uses x1..x_{i-1}, whose inverse images are known.
            images = inverse_images + [Poly.var(n, j) for j in range(i, n + 1)]
            shifted = Poly.var(n, i) - self.a[i - 1].substitute(images)
            inverse_images.append(shifted.scale(1 / self.lam[i - 1]))
        inv = _from_images(n, inverse_images)
        object.__setattr__(self, "_inv", inv)
        object.__setattr__(inv, "_inv", self)
        return inv

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriAut):
            return NotImplemented
        return self.n == other.n and self.lam == other.lam and self.a == other.a

    def __hash__(self) -> int:
        return hash((self.n, self.lam, self.a))

    def __str__(self) -> str:
        return format_triaut(self)

    def __repr__(self) -> str:
        return f"TriAut({format_triaut(self)!r})"


def _from_images(n: int, images: Sequence[Poly]) -> TriAut:
    """Rebuild a TriAut from raw images, checking the triangular shape."""
    lams = []
    parts = []
    for i, q in enumerate(images, start=1):
        unit = tuple(1 if k == i - 1 else 0 for k in range(n))
        lam = q.coefficient(unit)
        rest = q - Poly.monomial(n, unit, lam)
        if not lam or not rest.uses_only(i - 1):
            raise InternalError(f"image of x{i} is not triangular: {q}")
        lams.append(lam)
        parts.append(rest)
    return TriAut(parts, lams)


# -- the bridge to derivations -------------------------------------------------


def conjugate_derivation(sigma: TriAut, u: LieElem) -> LieElem:
    """The derivation sigma u sigma^(-1), coordinate-wise: its d_j
    coefficient is sigma(u(sigma^(-1)(x_j)))."""
    if sigma.n != u.n:
        raise DomainError(f"mixed ranks: {sigma.n} vs {u.n}")
    inv = sigma.invert()
    coeffs = []
    for j in range(1, sigma.n + 1):
        coeffs.append(sigma.apply(u.apply_to(inv.image(j))))
    try:
        return LieElem.from_coefficients(coeffs)
    except DomainError as exc:
        raise InternalError(f"conjugation left the triangular algebra: {exc}")


def exp_map(delta: LieElem) -> TriAut:
    """The automorphism exp(delta): x_i -> sum_k delta^k(x_i) / k!.

    Terminates because triangular derivations act locally nilpotently on
    polynomials.
    """
    n = delta.n
    images = []
    for i in range(1, n + 1):
        term = Poly.var(n, i)
        acc = term
        k = 0
        while term:
            k += 1
            term = delta.apply_to(term).scale(Fraction(1, k))
            acc = acc + term
        images.append(acc)
    return _from_images(n, images)


def log_map(sigma: TriAut) -> LieElem:
    """Inverse of exp_map on unipotent automorphisms, via the logarithm
    series b_j = -sum_i (1 - sigma)^i (x_j) / i."""
    if not sigma.is_unipotent():
        raise DomainError("logarithm needs a unipotent automorphism")
    n = sigma.n
    coeffs = []
    for j in range(1, n + 1):
        w = Poly.var(n, j) - sigma.image(j)
        acc = Poly.zero(n)
        i = 1
        while w:
            acc = acc - w.scale(Fraction(1, i))
            w = w - sigma.apply(w)
            i += 1
        coeffs.append(acc)
    return LieElem.from_coefficients(coeffs)


def normalize_mod_shn(sigma: TriAut) -> TriAut:
    """Drop the constant term of the last translation part.

    Shifts of x_n act trivially on the derivation algebra, so this picks
    the canonical representative of sigma's coset.
    """
    mu = sigma.a[-1].constant_term()
    if not mu:
        return sigma
    parts = list(sigma.a)
    parts[-1] = parts[-1] - Poly.const(sigma.n, mu)
    return TriAut(parts, sigma.lam)


def split_ct_shift(sigma: TriAut) -> tuple[TriAut, tuple[Fraction, ...]]:
    """Factor a unipotent map as (no-constant-terms part) o (shift).

    Returns (tau, mu) with sigma = tau o shift(mu); tau keeps each
    translation minus its constant term.  Requires a_1 itself constant,
    which holds for every unipotent triangular map since a_1 has no
    variables to use.
    """
    if not sigma.is_unipotent():
        raise DomainError("factorization needs a unipotent automorphism")
    mu = tuple(p.constant_term() for p in sigma.a)
    parts = [p - Poly.const(sigma.n, m) for p, m in zip(sigma.a, mu)]
    return TriAut(parts), mu


def reconstruct_from_frames(frames: Sequence[LieElem]) -> TriAut:
    """Find the triangular automorphism matching coordinate derivations
    to a commuting frame.

    frames[i-1] must have the shape mu_i d_i + (terms with index > i)
    with mu_i nonzero, and the frames must pairwise commute.  The result
    sigma satisfies sigma d_i sigma^(-1) = frames[i-1]; it is the unique
    such map with no constant terms in its translations, and its scales
    are the 1/mu_i.
    """
    n = len(frames)
    if n < 2:
        raise DomainError("need at least two frames")
    mus = []
    for i, f in enumerate(frames, start=1):
        if f.n != n:
            raise DomainError("frames must live in rank n")
        mu = f.terms.get(((0,) * (i - 1), i), Fraction(0))
        if not mu:
            raise DomainError(f"frame {i} has no constant d_{i} component")
        for (alpha, j), _ in f.terms.items():
            if j < i or (j == i and any(alpha)):
                raise DomainError(
                    f"frame {i} contains the disallowed term x^{alpha} d_{j}")
        mus.append(mu)
    for i in range(n):
        for j in range(i + 1, n):
            if bracket(frames[i], frames[j]):
                raise DomainError(f"frames {i + 1} and {j + 1} do not commute")

    # x_i' = phi_{i-1} ... phi_1 (x_i / mu_i), where phi_m resums with the
    # m-th frame: phi_m(p) = sum_k (-x_m')^k / k! * frames[m]^k(p).
    images: list[Poly] = []
    for i in range(1, n + 1):
        p = Poly.var(n, i).scale(1 / mus[i - 1])
        for m in range(1, i):
            frame = frames[m - 1]
            xm = images[m - 1]
            acc = Poly.zero(n)
            deriv = p
            factor = Poly.const(n, 1)
            k = 0
            while deriv:
                acc = acc + factor * deriv
                deriv = frame.apply_to(deriv)
                k += 1
                factor = factor * xm.scale(Fraction(-1, k))
            p = acc
        images.append(p)
    return _from_images(n, images)


def format_triaut(sigma: TriAut) -> str:
    """Canonical text: "[a1, ..., an ; l1, ..., ln]", scales omitted when
    the map is unipotent."""
    body = ", ".join(str(p) for p in sigma.a)
    if sigma.is_unipotent():
        return f"[{body}]"
    scales = ", ".join(rat_str(c) for c in sigma.lam)
    return f"[{body} ; {scales}]"
