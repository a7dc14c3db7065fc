"""Exact sparse polynomials over the rationals.

A polynomial in x1..xn is stored as a dict mapping exponent tuples of
length ``nvars`` to nonzero Fraction coefficients.  All operations are
exact and return fresh objects; instances are never mutated after
construction.

Total degrees are guarded by a module-level cap so that runaway growth in
composed substitutions fails loudly instead of consuming the machine.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DegreeCapError, DomainError

Rat = Fraction
RatLike = Union[Fraction, int]

# Maximum total degree any operation may produce.  Reassign to loosen or
# tighten; operations check bounds before doing the expensive work.
DEGREE_CAP = 64


def rat(value: RatLike | str) -> Rat:
    """Coerce an int, Fraction or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise DomainError(f"not a rational: {value!r}")


def rat_str(value: Rat) -> str:
    """Canonical text for a rational: bare integer or "p/q"."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _check_cap(degree: int, context: str) -> None:
    if degree > DEGREE_CAP:
        raise DegreeCapError(
            f"{context} would reach total degree {degree}, over the cap {DEGREE_CAP}")


class Poly:
    """Immutable sparse polynomial with a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], RatLike] | None = None):
        if nvars < 0:
            raise DomainError("nvars must be nonnegative")
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise DomainError(f"bad exponent tuple {exps} for {nvars} variables")
                c = rat(coeff)
                if c:
                    clean[exps] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> Poly:
        return Poly(nvars)

    @staticmethod
    def const(nvars: int, value: RatLike) -> Poly:
        return Poly(nvars, {(0,) * nvars: rat(value)})

    @staticmethod
    def var(nvars: int, index: int) -> Poly:
        """The variable x_index, 1-based."""
        if not 1 <= index <= nvars:
            raise DomainError(f"variable index {index} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[index - 1] = 1
        return Poly(nvars, {tuple(exps): Fraction(1)})

    @staticmethod
    def monomial(nvars: int, exps: Sequence[int], coeff: RatLike = 1) -> Poly:
        return Poly(nvars, {tuple(exps): rat(coeff)})

    # -- basic queries -----------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def total_degree(self) -> int:
        """Largest term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        """Largest exponent of x_index; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[index - 1] for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def max_var(self) -> int:
        """Largest variable index actually used; 0 for constants."""
        best = 0
        for exps in self.terms:
            for k in range(self.nvars - 1, best - 1, -1):
                if exps[k]:
                    best = k + 1
                    break
        return best

    def uses_only(self, k: int) -> bool:
        """True when the polynomial lies in the subring on x1..xk."""
        return self.max_var() <= k

    # -- arithmetic ---------------------------------------------------

    def _require_same_ring(self, other: Poly) -> None:
        if self.nvars != other.nvars:
            raise DomainError(
                f"mixed variable counts: {self.nvars} vs {other.nvars}")

    def __add__(self, other: Poly) -> Poly:
        self._require_same_ring(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            prev = terms.get(exps)
            if prev is None:
                terms[exps] = c
            else:
                s = prev + c
                if s:
                    terms[exps] = s
                else:
                    del terms[exps]
        return _make(self.nvars, terms)

    def __neg__(self) -> Poly:
        return _make(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, factor: RatLike) -> Poly:
        f = rat(factor)
        if not f:
            return Poly(self.nvars)
        return _make(self.nvars, {e: c * f for e, c in self.terms.items()})

    def __mul__(self, other: Poly) -> Poly:
        self._require_same_ring(other)
        if not self.terms or not other.terms:
            return Poly(self.nvars)
        # Top-degree product terms cannot cancel, so this bound is exact.
        _check_cap(self.total_degree() + other.total_degree(), "product")
        # Clearing denominators keeps the inner loop in plain integers:
        # one normalization per output monomial, not one per term pair.
        d1 = math.lcm(*(c.denominator for c in self.terms.values()))
        d2 = math.lcm(*(c.denominator for c in other.terms.values()))
        left = [(e, c.numerator * (d1 // c.denominator))
                for e, c in self.terms.items()]
        right = [(e, c.numerator * (d2 // c.denominator))
                 for e, c in other.terms.items()]
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in left:
            for e2, c2 in right:
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc[exps] = acc.get(exps, 0) + c1 * c2
        den = d1 * d2
        if den == 1:
            return _make(self.nvars,
                         {e: Fraction(c) for e, c in acc.items() if c})
        return _make(self.nvars,
                     {e: Fraction(c, den) for e, c in acc.items() if c})

    def __pow__(self, exponent: int) -> Poly:
        if exponent < 0:
            raise DomainError("negative polynomial power")
        if exponent == 0:
            return Poly.const(self.nvars, 1)
        if self.terms:
            _check_cap(self.total_degree() * exponent, "power")
        out: Poly | None = None
        base = self
        e = exponent
        while True:
            if e & 1:
                out = base if out is None else out * base
            e >>= 1
            if not e:
                return out  # type: ignore[return-value]
            base = base * base

    # -- calculus and substitution ------------------------------------

    def diff(self, index: int) -> Poly:
        """Partial derivative with respect to x_index (1-based)."""
        if not 1 <= index <= self.nvars:
            raise DomainError(f"variable index {index} out of range 1..{self.nvars}")
        k = index - 1
        terms: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[k]
            if e:
                lowered = exps[:k] + (e - 1,) + exps[k + 1:]
                terms[lowered] = terms.get(lowered, Fraction(0)) + c * e
        return _make(self.nvars, terms)

    def diff_many(self, index: int, times: int) -> Poly:
        out = self
        for _ in range(times):
            if not out:
                break
            out = out.diff(index)
        return out

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Evaluate at x_i := images[i-1]; images share one target ring."""
        if len(images) != self.nvars:
            raise DomainError(
                f"need {self.nvars} substitution images, got {len(images)}")
        if not self.terms:
            target = images[0].nvars if images else self.nvars
            return Poly(target)
        target = images[0].nvars
        for im in images:
            if im.nvars != target:
                raise DomainError("substitution images live in different rings")
        degs = [im.total_degree() for im in images]
        # variables mapped to themselves contribute a bare monomial factor
        fixed = [False] * self.nvars
        if target == self.nvars:
            for i, im in enumerate(images):
                if len(im.terms) == 1:
                    (exps, c), = im.terms.items()
                    fixed[i] = c == 1 and sum(exps) == 1 and exps[i] == 1
        power_cache: list[dict[int, Poly]] = [{} for _ in images]

        def power(i: int, e: int) -> Poly:
            cached = power_cache[i].get(e)
            if cached is None:
                cached = images[i] ** e
                power_cache[i][e] = cached
            return cached

        acc: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            bound = sum(e * max(d, 0) for e, d in zip(exps, degs))
            _check_cap(bound, "substitution")
            head = tuple(e if fixed[i] else 0 for i, e in enumerate(exps)) \
                if target == self.nvars else (0,) * target
            term: Poly | None = None
            for i, e in enumerate(exps):
                if e and not fixed[i]:
                    q = power(i, e)
                    term = q if term is None else term * q
            pieces = {head: c} if term is None else {
                tuple(h + f for h, f in zip(head, e2)): c * c2
                for e2, c2 in term.terms.items()}
            for key, val in pieces.items():
                prev = acc.get(key)
                if prev is None:
                    acc[key] = val
                else:
                    s = prev + val
                    if s:
                        acc[key] = s
                    else:
                        del acc[key]
        return _make(target, acc)

    def embed(self, nvars: int) -> Poly:
        """Reinterpret in a ring with more variables (padding exponents)."""
        if nvars < self.nvars:
            raise DomainError("cannot embed into fewer variables")
        if nvars == self.nvars:
            return self
        pad = (0,) * (nvars - self.nvars)
        return _make(nvars, {e + pad: c for e, c in self.terms.items()})

    def set_var_to_zero(self, index: int) -> Poly:
        """Substitute x_index := 0, keeping the ambient ring."""
        k = index - 1
        terms = {e: c for e, c in self.terms.items() if e[k] == 0}
        return _make(self.nvars, terms)

    # -- canonical term order ------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded lexicographic order (x1 largest)."""
        return sorted(self.terms.items(),
                      key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {format_poly(self)!r})"


def _make(nvars: int, terms: dict[tuple[int, ...], Fraction]) -> Poly:
    """Internal constructor that trusts its (already normalized) terms."""
    p = Poly.__new__(Poly)
    object.__setattr__(p, "nvars", nvars)
    object.__setattr__(p, "terms", terms)
    return p


def phi_projection(p: Poly) -> Fraction:
    """Constant-term projection onto the ground field."""
    return p.constant_term()


def phi_projection_series(p: Poly) -> Fraction:
    """Same projection computed the slow way, as the composition over all
    variables of sum_k (-1)^k x_i^k/k! d^k/dx_i^k.

    Each inner sum kills every monomial with a positive x_i exponent and
    fixes the rest, so the composite agrees with phi_projection; keeping
    both implementations lets the test suite check that.
    """
    out = p
    for i in range(1, p.nvars + 1):
        acc = Poly(p.nvars)
        xi = Poly.var(p.nvars, i)
        deriv = out
        factor = Poly.const(p.nvars, 1)
        k = 0
        while deriv:
            acc = acc + factor * deriv
            deriv = deriv.diff(i)
            k += 1
            factor = factor * xi.scale(Fraction(-1, k))
        out = acc
    return out.constant_term()


def format_monomial(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: terms in descending graded-lex order."""
    if not p.terms:
        return "0"
    chunks: list[str] = []
    for exps, coeff in p.sorted_terms():
        mono = format_monomial(exps)
        mag = abs(coeff)
        if not mono:
            body = rat_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{rat_str(mag)}*{mono}"
        if not chunks:
            chunks.append(body if coeff > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(chunks)


def iter_exponents(nvars: int, max_total: int) -> Iterator[tuple[int, ...]]:
    """All exponent tuples with the given length and total degree bound."""
    if nvars == 0:
        yield ()
        return
    for head in range(max_total + 1):
        for tail in iter_exponents(nvars - 1, max_total - head):
            yield (head,) + tail


def factorial(k: int) -> Fraction:
    return Fraction(math.factorial(k))
