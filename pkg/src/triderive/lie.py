"""The Lie algebra of triangular polynomial derivations.

Rank n fixes the algebra spanned by x^a d_i where a runs over exponent
tuples with exactly i-1 coordinates, so the coefficient of d_i only uses
x1..x_{i-1}.  Elements are finite rational combinations of these basis
derivations, stored sparsely as {(a, i): coefficient}.

The basis carries a linear order (larger derivation index first is
SMALLER; within one index, compare exponents from the most significant
coordinate x_{i-1} down) and an ordinal-valued degree compatible with it.
Brackets strictly drop that degree, which powers the termination
arguments used elsewhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import DomainError, InternalError
from .ordinals import OrdinalCNF, ord_compare, ord_of_basis
from .poly import Poly, Rat, RatLike, iter_exponents, rat

# A basis derivation x^alpha d_i is keyed by (alpha, i).
Key = tuple[tuple[int, ...], int]


def _check_key(alpha: tuple[int, ...], i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise DomainError(f"derivation index {i} out of range 1..{n}")
    if len(alpha) != i - 1:
        raise DomainError(
            f"exponent {alpha} for d_{i} needs {i - 1} coordinates")
    if any(a < 0 for a in alpha):
        raise DomainError("negative exponent")


class LieElem:
    """Immutable element of the rank-n triangular derivation algebra."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Key, RatLike] | None = None):
        if n < 2:
            raise DomainError("rank must be at least 2")
        clean: dict[Key, Fraction] = {}
        if terms:
            for (alpha, i), coeff in terms.items():
                alpha = tuple(alpha)
                _check_key(alpha, i, n)
                c = rat(coeff)
                if c:
                    clean[(alpha, i)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(n: int) -> LieElem:
        return LieElem(n)

    @staticmethod
    def basis(n: int, alpha: Sequence[int], i: int, coeff: RatLike = 1) -> LieElem:
        return LieElem(n, {(tuple(alpha), i): rat(coeff)})

    @staticmethod
    def d(n: int, i: int) -> LieElem:
        """The coordinate derivation d_i."""
        return LieElem.basis(n, (0,) * (i - 1), i)

    @staticmethod
    def from_coefficients(polys: Sequence[Poly]) -> LieElem:
        """Build sum p_i d_i from coefficient polynomials in x1..xn.

        Each p_i must use only x1..x_{i-1}.
        """
        n = len(polys)
        terms: dict[Key, Fraction] = {}
        for i, p in enumerate(polys, start=1):
            if p.nvars != n:
                raise DomainError("coefficient polynomials must live in rank-n ring")
            if not p.uses_only(i - 1):
                raise DomainError(f"coefficient of d_{i} may only use x1..x{i - 1}")
            for exps, c in p.terms.items():
                terms[(exps[: i - 1], i)] = c
        return LieElem(n, terms)

    # -- structure queries ----------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieElem):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def degree(self) -> int:
        """Largest |alpha| over the support; -1 when zero."""
        if not self.terms:
            return -1
        return max(sum(alpha) for alpha, _ in self.terms)

    def coefficient_poly(self, i: int) -> Poly:
        """The d_i coefficient as a polynomial in the full rank-n ring."""
        if not 1 <= i <= self.n:
            raise DomainError(f"derivation index {i} out of range 1..{self.n}")
        pad = (0,) * (self.n - i + 1)
        return Poly(self.n, {alpha + pad: c
                             for (alpha, j), c in self.terms.items() if j == i})

    def coefficient_polys(self) -> list[Poly]:
        return [self.coefficient_poly(i) for i in range(1, self.n + 1)]

    def min_index(self) -> int:
        """Smallest derivation index in the support; n+1 when zero."""
        if not self.terms:
            return self.n + 1
        return min(i for _, i in self.terms)

    # -- linear arithmetic ------------------------------------------------

    def _require_same_rank(self, other: LieElem) -> None:
        if self.n != other.n:
            raise DomainError(f"mixed ranks: {self.n} vs {other.n}")

    def __add__(self, other: LieElem) -> LieElem:
        self._require_same_rank(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Fraction(0)) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return _make(self.n, terms)

    def __neg__(self) -> LieElem:
        return _make(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: LieElem) -> LieElem:
        return self + (-other)

    def scale(self, factor: RatLike) -> LieElem:
        f = rat(factor)
        if not f:
            return LieElem(self.n)
        return _make(self.n, {k: c * f for k, c in self.terms.items()})

    # -- as an operator on polynomials -------------------------------------

    def apply_to(self, p: Poly) -> Poly:
        """Apply the derivation sum p_i d/dx_i to a polynomial."""
        if p.nvars != self.n:
            raise DomainError("polynomial must live in the rank-n ring")
        out = Poly(self.n)
        for i in range(1, self.n + 1):
            dp = p.diff(i)
            if dp:
                pi = self.coefficient_poly(i)
                if pi:
                    out = out + pi * dp
        return out

    def __str__(self) -> str:
        return format_lie(self)

    def __repr__(self) -> str:
        return f"LieElem({self.n}, {format_lie(self)!r})"


def _make(n: int, terms: dict[Key, Fraction]) -> LieElem:
    u = LieElem.__new__(LieElem)
    object.__setattr__(u, "n", n)
    object.__setattr__(u, "terms", terms)
    return u


# -- basis order and ordinal degree -----------------------------------------


def key_sort_key(key: Key) -> tuple:
    """Sort key realizing the basis order (ascending)."""
    alpha, i = key
    return (-i, tuple(reversed(alpha)))


def basis_compare(key1: Key, key2: Key) -> int:
    """Three-way comparison of basis derivations: -1, 0 or 1.

    x^a d_i beats x^b d_j when i < j; for equal index the exponents are
    compared from the most significant coordinate x_{i-1} downwards.
    """
    k1 = key_sort_key(key1)
    k2 = key_sort_key(key2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


def leading_term(u: LieElem) -> tuple[Fraction, Key]:
    """Coefficient and key of the largest basis derivation in the support."""
    if not u.terms:
        raise DomainError("zero element has no leading term")
    key = max(u.terms, key=key_sort_key)
    return u.terms[key], key


def ord_of_element(u: LieElem) -> OrdinalCNF:
    """Ordinal degree: the degree of the leading basis derivation.

    The zero element gets ordinal 0, below every nonzero degree.
    """
    if not u.terms:
        return OrdinalCNF.zero()
    _, (alpha, i) = leading_term(u)
    return ord_of_basis(alpha, i, u.n)


def ideal_membership(u: LieElem, lam: OrdinalCNF) -> bool:
    """Whether u lies in the span of basis derivations of degree <= lam."""
    return ord_compare(ord_of_element(u), lam) <= 0


def project(u: LieElem, i: int) -> LieElem:
    """Image in the quotient by the span of derivations with index > i,
    i.e. the terms with derivation index <= i."""
    if not 1 <= i <= u.n:
        raise DomainError(f"index {i} out of range 1..{u.n}")
    return _make(u.n, {k: c for k, c in u.terms.items() if k[1] <= i})


# -- bracket -----------------------------------------------------------------


def _bracket_keys(a: tuple[int, ...], i: int, b: tuple[int, ...], j: int
                  ) -> tuple[Fraction, Key] | None:
    """Structure constant: [x^a d_i, x^b d_j] for i < j."""
    bi = b[i - 1]
    if not bi:
        return None
    gamma = list(b)
    gamma[i - 1] -= 1
    for k, av in enumerate(a):
        gamma[k] += av
    return Fraction(bi), (tuple(gamma), j)


def bracket(u: LieElem, v: LieElem) -> LieElem:
    """Lie bracket, computed from the structure constants."""
    u._require_same_rank(v)
    terms: dict[Key, Fraction] = {}
    for (a, i), ca in u.terms.items():
        for (b, j), cb in v.terms.items():
            if i == j:
                continue
            if i < j:
                hit = _bracket_keys(a, i, b, j)
                sign = 1
            else:
                hit = _bracket_keys(b, j, a, i)
                sign = -1
            if hit is None:
                continue
            factor, key = hit
            s = terms.get(key, Fraction(0)) + sign * factor * ca * cb
            if s:
                terms[key] = s
            else:
                del terms[key]
    return _make(u.n, terms)


def exp_ad_apply(u: LieElem, v: LieElem) -> LieElem:
    """Apply exp(ad u) to v; terminates because brackets drop the ordinal
    degree strictly.  The iteration cap flags a bug, not bad input."""
    u._require_same_rank(v)
    cap = 10 * (v.degree() + 2)
    out = v
    term = v
    k = 0
    while term:
        k += 1
        if k > cap:
            raise InternalError("exp(ad u) failed to terminate within the cap")
        term = bracket(u, term).scale(Fraction(1, k))
        out = out + term
    return out


# -- generators and the center ------------------------------------------------


def iter_basis_keys(n: int, max_degree: int) -> Iterator[Key]:
    """All basis keys of rank n with |alpha| <= max_degree, ascending index."""
    for i in range(1, n + 1):
        for alpha in iter_exponents(i - 1, max_degree):
            yield (alpha, i)


def standard_generators(n: int, max_exponent: int) -> list[LieElem]:
    """d_1 together with x_{i-1}^j d_i for 2 <= i <= n, 0 <= j <= max_exponent."""
    gens = [LieElem.d(n, 1)]
    for i in range(2, n + 1):
        for j in range(max_exponent + 1):
            alpha = [0] * (i - 1)
            alpha[i - 2] = j
            gens.append(LieElem.basis(n, alpha, i))
    return gens


def rational_nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the solution space of rows * x = 0, by exact elimination."""
    matrix = [row[:] for row in rows if any(row)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for k in range(r, len(matrix)):
            if matrix[k][col]:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        inv = 1 / matrix[r][col]
        matrix[r] = [x * inv for x in matrix[r]]
        for k in range(len(matrix)):
            if k != r and matrix[k][col]:
                factor = matrix[k][col]
                matrix[k] = [a - factor * b for a, b in zip(matrix[k], matrix[r])]
        pivots.append(col)
        r += 1
        if r == len(matrix):
            break
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis: list[list[Fraction]] = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row_idx, col in enumerate(pivots):
            vec[col] = -matrix[row_idx][free]
        basis.append(vec)
    return basis


def center_solve(n: int, max_degree: int) -> list[LieElem]:
    """Solve for elements of degree <= max_degree commuting with every
    standard generator of exponent <= max_degree + 1.

    Returns a basis of the solution space, each element scaled so its
    leading coefficient is 1.
    """
    if max_degree < 0:
        raise DomainError("degree bound must be nonnegative")
    keys = list(iter_basis_keys(n, max_degree))
    index = {key: pos for pos, key in enumerate(keys)}
    gens = standard_generators(n, max_degree + 1)

    equations: dict[tuple[int, Key], list[Fraction]] = {}
    for pos, key in enumerate(keys):
        basis_elem = _make(n, {key: Fraction(1)})
        for g_idx, g in enumerate(gens):
            for out_key, c in bracket(basis_elem, g).terms.items():
                row = equations.get((g_idx, out_key))
                if row is None:
                    row = [Fraction(0)] * len(keys)
                    equations[(g_idx, out_key)] = row
                row[pos] += c

    solutions = rational_nullspace(list(equations.values()), len(keys))
    out = []
    for vec in solutions:
        elem = _make(n, {keys[pos]: c for pos, c in enumerate(vec) if c})
        lead, _ = leading_term(elem)
        out.append(elem.scale(1 / lead))
    out.sort(key=lambda e: key_sort_key(leading_term(e)[1]))
    return out


# -- canonical text -----------------------------------------------------------


def format_lie(u: LieElem) -> str:
    """Canonical text: terms in descending basis order, e.g. "3*x1*d2 + d2"."""
    if not u.terms:
        return "0"
    from .poly import format_monomial, rat_str

    chunks: list[str] = []
    for key in sorted(u.terms, key=key_sort_key, reverse=True):
        alpha, i = key
        coeff = u.terms[key]
        mono = format_monomial(alpha)
        mag = abs(coeff)
        body = f"d{i}" if not mono else f"{mono}*d{i}"
        if mag != 1:
            body = f"{rat_str(mag)}*{body}"
        if not chunks:
            chunks.append(body if coeff > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(chunks)
