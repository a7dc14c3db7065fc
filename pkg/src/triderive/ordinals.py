"""Ordinals below w^w in Cantor normal form, plus the degree map that
attaches one to each basis derivation x^a d_i.

An ordinal is a finite map {exponent k -> positive integer coefficient},
read as sum of coeff * w^k terms.  Comparison is lexicographic from the
highest exponent down, which is the usual CNF order.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import DomainError


class OrdinalCNF:
    """Immutable ordinal below w^w."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        if coeffs:
            for exp, c in coeffs.items():
                if exp < 0:
                    raise DomainError("ordinal exponents must be nonnegative")
                if c < 0:
                    raise DomainError("ordinal coefficients must be nonnegative")
                if c:
                    clean[exp] = c
        object.__setattr__(self, "coeffs", clean)

    @staticmethod
    def zero() -> OrdinalCNF:
        return OrdinalCNF()

    @staticmethod
    def from_int(value: int) -> OrdinalCNF:
        return OrdinalCNF({0: value})

    @staticmethod
    def omega_power(exp: int, coeff: int = 1) -> OrdinalCNF:
        return OrdinalCNF({exp: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def _key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.coeffs.items(), reverse=True))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrdinalCNF):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self._key())

    def __lt__(self, other: OrdinalCNF) -> bool:
        return ord_compare(self, other) < 0

    def __le__(self, other: OrdinalCNF) -> bool:
        return ord_compare(self, other) <= 0

    def __gt__(self, other: OrdinalCNF) -> bool:
        return ord_compare(self, other) > 0

    def __ge__(self, other: OrdinalCNF) -> bool:
        return ord_compare(self, other) >= 0

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"OrdinalCNF({format_ordinal(self)!r})"


def ord_compare(a: OrdinalCNF, b: OrdinalCNF) -> int:
    """Three-way CNF comparison: -1, 0 or 1."""
    exps = sorted(set(a.coeffs) | set(b.coeffs), reverse=True)
    for e in exps:
        ca = a.coeffs.get(e, 0)
        cb = b.coeffs.get(e, 0)
        if ca != cb:
            return 1 if ca > cb else -1
    return 0


def format_ordinal(a: OrdinalCNF) -> str:
    """Canonical text, e.g. "w^2*3 + w*1 + 4"; the zero ordinal is "0"."""
    if not a.coeffs:
        return "0"
    parts = []
    for exp, c in sorted(a.coeffs.items(), reverse=True):
        if exp == 0:
            parts.append(str(c))
        elif exp == 1:
            parts.append(f"w*{c}")
        else:
            parts.append(f"w^{exp}*{c}")
    return " + ".join(parts)


def ord_of_basis(alpha: Sequence[int], i: int, n: int) -> OrdinalCNF:
    """Ordinal degree of the basis derivation x^alpha d_i inside rank n.

    The assignment is the unique order isomorphism onto [1, ord of the
    whole algebra]: the block of index-i derivations sits above every
    block of larger index, contributing w^(n-1) + ... + w^i, and within a
    block the exponent alpha contributes digit-wise with the coordinate
    alpha_m weighted by w^(m-1).
    """
    if not 1 <= i <= n:
        raise DomainError(f"derivation index {i} out of range 1..{n}")
    if len(alpha) != i - 1:
        raise DomainError(f"exponent for d_{i} needs {i - 1} coordinates")
    if any(a < 0 for a in alpha):
        raise DomainError("negative exponent")
    coeffs: dict[int, int] = {}
    for k in range(i, n):
        coeffs[k] = 1
    for m in range(1, i):
        a = alpha[m - 1]
        if a:
            coeffs[m - 1] = coeffs.get(m - 1, 0) + a
    coeffs[0] = coeffs.get(0, 0) + 1
    return OrdinalCNF(coeffs)


def ord_of_algebra(n: int) -> OrdinalCNF:
    """Ordinal degree of the largest basis derivation d_1 in rank n."""
    if n < 1:
        raise DomainError("rank must be at least 1")
    return OrdinalCNF({k: 1 for k in range(n)})
