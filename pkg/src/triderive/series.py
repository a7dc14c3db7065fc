"""Formal series in a single partial derivative, used as operators.

An OpSeries in the symbol D = d/dx_m stores coefficients for degrees
1..order; the degree-0 coefficient is implied by the kind:

  * kind "F":  unit series 1 + c1 D + c2 D^2 + ...
  * kind "FP": unit series with c1 forced to 0 (no linear term)
  * kind "E":  no constant term, c1 D + c2 D^2 + ...

``order`` is the truncation order: coefficients of degree > order are
unknown, and any query that would need them raises TruncationError
rather than guessing zero.  ``order=None`` marks an exact series, i.e. a
polynomial in D whose higher coefficients are genuinely zero.  Products
and sums propagate the smallest order involved; the one lossy operation
is splitting off an exponential shift factor, which turns an exact
series into a truncated one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import DomainError, TruncationError
from .poly import Poly, RatLike, rat, rat_str

KINDS = ("F", "FP", "E")

# Truncation order used when no better one is available from the inputs.
DEFAULT_ORDER = 16


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class OpSeries:
    """Immutable truncated series in one partial derivative."""

    __slots__ = ("kind", "var", "order", "coeffs")

    def __init__(self, kind: str, var: int, order: int | None,
                 coeffs: Mapping[int, RatLike] | None = None):
        if kind not in KINDS:
            raise DomainError(f"unknown series kind {kind!r}")
        if var < 1:
            raise DomainError("series variable index must be at least 1")
        if order is not None and order < 0:
            raise DomainError("series order must be nonnegative")
        clean: dict[int, Fraction] = {}
        if coeffs:
            for deg, c in coeffs.items():
                if deg < 1:
                    raise DomainError(
                        "degree-0 series coefficients are implied by the kind")
                if order is not None and deg > order:
                    raise DomainError(
                        f"coefficient at degree {deg} beyond order {order}")
                cf = rat(c)
                if cf:
                    clean[deg] = cf
        if kind == "FP" and clean.get(1):
            raise DomainError("this series kind forbids a linear term")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", clean)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def one(var: int, kind: str = "F", order: int | None = None) -> OpSeries:
        if kind == "E":
            raise DomainError("the unit series is not of the no-constant kind")
        return OpSeries(kind, var, order)

    @staticmethod
    def zero_e(var: int, order: int | None = None) -> OpSeries:
        return OpSeries("E", var, order)

    @staticmethod
    def exp_shift(var: int, amount: RatLike, order: int | None) -> OpSeries:
        """exp(amount * D) truncated at the given order; exact when the
        amount is zero."""
        lam = rat(amount)
        if not lam:
            return OpSeries("F", var, None)
        if order is None:
            raise DomainError("a nonzero exponential needs a finite order")
        coeffs: dict[int, Fraction] = {}
        c = Fraction(1)
        for k in range(1, order + 1):
            c = c * lam / k
            coeffs[k] = c
        return OpSeries("F", var, order, coeffs)

    # -- queries ------------------------------------------------------------

    def unit(self) -> Fraction:
        return Fraction(0) if self.kind == "E" else Fraction(1)

    def coefficient(self, deg: int) -> Fraction:
        """The coefficient at a degree within the stored order."""
        if deg == 0:
            return self.unit()
        if self.order is not None and deg > self.order:
            raise TruncationError(
                f"series only stored through degree {self.order}, asked for {deg}",
                required=deg, available=self.order)
        return self.coeffs.get(deg, Fraction(0))

    def support(self) -> int:
        """Largest stored degree with a nonzero coefficient (0 if none)."""
        return max(self.coeffs, default=0)

    def is_one(self) -> bool:
        return self.kind != "E" and not self.coeffs

    def is_zero_e(self) -> bool:
        return self.kind == "E" and not self.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpSeries):
            return NotImplemented
        return (self.kind == other.kind and self.var == other.var
                and self.order == other.order and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.kind, self.var, self.order,
                     frozenset(self.coeffs.items())))

    def agrees_with(self, other: OpSeries, through: int | None = None) -> bool:
        """Equality of coefficients through the common valid order."""
        if self.var != other.var or self.unit() != other.unit():
            return False
        limit = _min_order(self.order, other.order)
        limit = _min_order(limit, through)
        if limit is None:
            return self.coeffs == other.coeffs
        for deg in range(1, limit + 1):
            if self.coeffs.get(deg, Fraction(0)) != other.coeffs.get(deg, Fraction(0)):
                return False
        return True

    # -- operator application -------------------------------------------------

    def apply(self, p: Poly) -> Poly:
        """Apply sum_k c_k (d/dx_var)^k to a polynomial.

        Exact whenever the stored order covers the x_var degree of p;
        beyond that the missing coefficients would matter, so it raises.
        """
        if p.nvars < self.var:
            raise DomainError("polynomial does not involve the series variable")
        need = p.degree_in(self.var)
        if self.order is not None and need > self.order:
            raise TruncationError(
                f"need series coefficients through degree {need}, "
                f"stored through {self.order}", required=need, available=self.order)
        out = p.scale(self.unit())
        deriv = p
        for k in range(1, max(need, 0) + 1):
            deriv = deriv.diff(self.var)
            if not deriv:
                break
            c = self.coeffs.get(k)
            if c:
                out = out + deriv.scale(c)
        return out

    def apply_without_unit(self, p: Poly) -> Poly:
        """Apply the series minus its constant term."""
        return self.apply(p) - p.scale(self.unit())

    # -- ring operations --------------------------------------------------------

    def _require_compatible(self, other: OpSeries) -> None:
        if self.var != other.var:
            raise DomainError("series in different symbols")

    def mul(self, other: OpSeries) -> OpSeries:
        """Series product; both factors must be unit series."""
        self._require_compatible(other)
        if self.kind == "E" or other.kind == "E":
            raise DomainError("products are defined for unit series only")
        order = _min_order(self.order, other.order)
        limit = order if order is not None else self.support() + other.support()
        coeffs: dict[int, Fraction] = {}
        for deg in range(1, limit + 1):
            total = self.coeffs.get(deg, Fraction(0)) + other.coeffs.get(deg, Fraction(0))
            for i in range(1, deg):
                a = self.coeffs.get(i)
                if a:
                    b = other.coeffs.get(deg - i)
                    if b:
                        total += a * b
            if total:
                coeffs[deg] = total
        kind = "FP" if not coeffs.get(1) and self.kind == other.kind == "FP" else "F"
        return OpSeries(kind, self.var, order, coeffs)

    def reciprocal(self, order: int | None = None) -> OpSeries:
        """Multiplicative inverse of a unit series up to the given order
        (defaulting to the stored order, which must then be finite)."""
        if self.kind == "E":
            raise DomainError("only unit series are invertible")
        order = order if order is not None else self.order
        if order is None:
            if not self.coeffs:
                return self
            raise DomainError("inverting an exact series needs an explicit order")
        if self.order is not None and self.order < order:
            raise TruncationError(
                "cannot invert beyond the stored order",
                required=order, available=self.order)
        coeffs: dict[int, Fraction] = {}
        for deg in range(1, order + 1):
            total = -self.coeffs.get(deg, Fraction(0))
            for i in range(1, deg):
                b = coeffs.get(i)
                if b:
                    a = self.coeffs.get(deg - i)
                    if a:
                        total -= a * b
            if total:
                coeffs[deg] = total
        kind = "FP" if self.kind == "FP" else "F"
        return OpSeries(kind, self.var, order, coeffs)

    def add_e(self, other: OpSeries) -> OpSeries:
        """Sum of two no-constant series (their natural group operation)."""
        self._require_compatible(other)
        if self.kind != "E" or other.kind != "E":
            raise DomainError("coefficient-wise sums are for no-constant series")
        order = _min_order(self.order, other.order)
        coeffs = dict(self.coeffs)
        for deg, c in other.coeffs.items():
            s = coeffs.get(deg, Fraction(0)) + c
            if s:
                coeffs[deg] = s
            else:
                del coeffs[deg]
        if order is not None:
            coeffs = {d: c for d, c in coeffs.items() if d <= order}
        return OpSeries("E", self.var, order, coeffs)

    def negate_e(self) -> OpSeries:
        if self.kind != "E":
            raise DomainError("negation is for no-constant series")
        return OpSeries("E", self.var, self.order,
                        {d: -c for d, c in self.coeffs.items()})

    def scale_coeffs(self, factor: RatLike) -> OpSeries:
        """Multiply every coefficient by one scalar (degree-0 unaffected,
        so unit series require factor compatibility: use on "E" freely)."""
        f = rat(factor)
        return OpSeries(self.kind, self.var, self.order,
                        {d: c * f for d, c in self.coeffs.items()})

    def scale_powers(self, gamma: RatLike) -> OpSeries:
        """Substitute D -> gamma * D, i.e. c_k -> c_k * gamma^k.

        This is how a torus coordinate change acts on the symbol.
        """
        g = rat(gamma)
        if not g:
            raise DomainError("power rescale needs a nonzero factor")
        return OpSeries(self.kind, self.var, self.order,
                        {d: c * g ** d for d, c in self.coeffs.items()})

    def truncate(self, order: int | None) -> OpSeries:
        """Forget coefficients beyond the given order (never extends)."""
        order = _min_order(self.order, order)
        coeffs = self.coeffs
        if order is not None:
            coeffs = {d: c for d, c in coeffs.items() if d <= order}
        return OpSeries(self.kind, self.var, order, coeffs)

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return (f"OpSeries({self.kind!r}, var={self.var}, order={self.order}, "
                f"{format_series(self)!r})")


def factor_shift(f: OpSeries, order: int | None = None) -> tuple[Fraction, OpSeries]:
    """Split a unit series as exp(lam * D) * remainder with the remainder
    lacking a linear term; lam is just the degree-1 coefficient.

    Splitting an exact series with lam != 0 has to truncate (the
    exponential has infinite support), which is where ``order`` comes in;
    it defaults to the stored order and must be finite in that case.
    """
    if f.kind == "E":
        raise DomainError("shift factorization applies to unit series")
    lam = f.coeffs.get(1, Fraction(0))
    if not lam:
        rest = f.truncate(order) if order is not None else f
        return Fraction(0), OpSeries("FP", f.var, rest.order, rest.coeffs)
    target = _min_order(f.order, order)
    if target is None:
        raise DomainError(
            "splitting an exact series with a linear term needs a finite order")
    inv_shift = OpSeries.exp_shift(f.var, -lam, target)
    rest = inv_shift.mul(f.truncate(target))
    return lam, OpSeries("FP", rest.var, rest.order, rest.coeffs)


def format_series(s: OpSeries) -> str:
    """Canonical text in the symbol D, ascending degree, e.g. "1 + 1/2*D^2"."""
    chunks: list[str] = []
    if s.kind != "E":
        chunks.append("1")
    for deg in sorted(s.coeffs):
        c = s.coeffs[deg]
        mono = "D" if deg == 1 else f"D^{deg}"
        mag = abs(c)
        body = mono if mag == 1 else f"{rat_str(mag)}*{mono}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if c > 0 else f"- {body}")
    if not chunks:
        return "0"
    return " ".join(chunks)
