"""Text and JSON interchange for every value the library computes with.

Grammar (whitespace insignificant, no implicit multiplication):

    rational  := INT | INT "/" POSINT
    monomial  := factor ("*" factor)*          factor := rational | "x"INT["^"INT]
    poly      := ["+"|"-"] monomial (("+"|"-") monomial)*
    lie term  := [monomial "*"] "d"INT         summed like poly terms
    triaut    := "[" poly ("," poly)* [";" rational ("," rational)*] "]"
    ordinal   := ("w"["^"INT]["*"INT] | INT) joined by "+"
    series    := like poly but in the single symbol "D"

Parsers report syntax errors (ParseError) and meaning errors such as a
d2 coefficient using x2 (SemanticError) with byte spans into the input.
Group elements travel as JSON; rationals inside JSON are "p/q" strings.

Printing is canonical: descending graded-lex for polynomials, descending
basis order for derivations, ascending degree for series.  For every
value, parse(print(v)) == v.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Callable, Sequence

from .autgroup import GnElem
from .errors import DomainError, ParseError, SemanticError
from .lie import LieElem, format_lie
from .ordinals import OrdinalCNF, format_ordinal
from .poly import Poly, format_poly, rat_str
from .series import OpSeries, format_series
from .triaut import TriAut, format_triaut

KINDS = ("poly", "lie", "triaut", "ordinal", "series", "gnelem-json")


# -- tokens ----------------------------------------------------------------------


class _Token:
    __slots__ = ("kind", "text", "start", "end")

    def __init__(self, kind: str, text: str, start: int, end: int):
        self.kind = kind
        self.text = text
        self.start = start
        self.end = end

    def __repr__(self) -> str:
        return f"_Token({self.kind}, {self.text!r}, {self.start}..{self.end})"


_SYMBOLS = {"+", "-", "*", "/", "^", "[", "]", ";", ","}


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    length = len(text)
    while pos < length:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            end = pos
            while end < length and text[end].isdigit():
                end += 1
            tokens.append(_Token("int", text[pos:end], pos, end))
            pos = end
            continue
        if ch.isalpha():
            end = pos + 1
            while end < length and text[end].isdigit():
                end += 1
            tokens.append(_Token("name", text[pos:end], pos, end))
            pos = end
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, pos, pos + 1))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos, pos + 1)
    tokens.append(_Token("end", "", length, length))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"expected {what}, found {found!r}",
                             tok.start, tok.end)
        return self.next()

    def fail(self, what: str) -> ParseError:
        tok = self.peek()
        found = tok.text or "end of input"
        return ParseError(f"expected {what}, found {found!r}", tok.start, tok.end)

    def done(self) -> None:
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}",
                             tok.start, tok.end)

    # -- shared pieces -----------------------------------------------------

    def sign(self) -> int:
        tok = self.peek()
        if tok.kind == "+":
            self.next()
            return 1
        if tok.kind == "-":
            self.next()
            return -1
        return 1

    def rational(self) -> Fraction:
        num = self.expect("int", "a number")
        if self.peek().kind == "/":
            self.next()
            den = self.expect("int", "a denominator")
            if den.text == "0":
                raise SemanticError("zero denominator", den.start, den.end)
            return Fraction(int(num.text), int(den.text))
        return Fraction(int(num.text))

    def indexed_name(self, letter: str, what: str) -> tuple[int, _Token]:
        tok = self.expect("name", what)
        if not tok.text.startswith(letter) or len(tok.text) < 2:
            raise ParseError(f"expected {what}, found {tok.text!r}",
                             tok.start, tok.end)
        index = int(tok.text[1:])
        if index < 1:
            raise SemanticError(f"{what} indices start at 1", tok.start, tok.end)
        return index, tok

    def caret_int(self) -> int:
        self.expect("^", "'^'")
        tok = self.expect("int", "an exponent")
        return int(tok.text)


# -- polynomials -------------------------------------------------------------------


def _parse_monomial(p: _Parser, max_index: int | None,
                    stop_on_d: bool) -> tuple[Fraction, dict[int, int], _Token | None]:
    """One product of factors.  Returns (coefficient, {var index: exp},
    d-token) where the d-token is only hunted when stop_on_d is set."""
    coeff = Fraction(1)
    exps: dict[int, int] = {}
    saw_factor = False
    while True:
        tok = p.peek()
        if tok.kind == "int":
            coeff *= p.rational()
        elif tok.kind == "name" and tok.text[0] == "x":
            index, name_tok = p.indexed_name("x", "a variable")
            if max_index is not None and index > max_index:
                raise SemanticError(
                    f"variable x{index} exceeds rank {max_index}",
                    name_tok.start, name_tok.end)
            power = 1
            if p.peek().kind == "^":
                power = p.caret_int()
            exps[index] = exps.get(index, 0) + power
        elif stop_on_d and tok.kind == "name" and tok.text[0] == "d":
            d_tok = p.next()
            return coeff, exps, d_tok
        else:
            raise p.fail("a factor")
        saw_factor = True
        if p.peek().kind == "*":
            p.next()
            continue
        if not saw_factor:
            raise p.fail("a factor")
        return coeff, exps, None


def parse_poly(text: str, n: int | None = None) -> Poly:
    """Parse a polynomial; the ring size is n or the largest index seen."""
    p = _Parser(text)
    terms: list[tuple[Fraction, dict[int, int]]] = []
    first = True
    while True:
        tok = p.peek()
        if tok.kind == "end":
            if first:
                raise p.fail("a polynomial")
            break
        if not first:
            if tok.kind not in ("+", "-"):
                raise p.fail("'+' or '-'")
        sgn = p.sign()
        coeff, exps, _ = _parse_monomial(p, n, stop_on_d=False)
        terms.append((coeff * sgn, exps))
        first = False
    p.done()
    nvars = n if n is not None else max(
        (max(e) for _, e in terms if e), default=0)
    out = Poly.zero(nvars)
    for coeff, exps in terms:
        tup = tuple(exps.get(i, 0) for i in range(1, nvars + 1))
        out = out + Poly.monomial(nvars, tup, coeff)
    return out


# -- derivations ---------------------------------------------------------------------


def parse_lie(text: str, n: int | None = None) -> LieElem:
    """Parse a sum of derivation terms like "2*x1^2*d2 - d1"."""
    p = _Parser(text)
    raw: list[tuple[Fraction, dict[int, int], int, int, int]] = []
    max_d = 0
    max_x = 0
    first = True
    while True:
        tok = p.peek()
        if tok.kind == "end":
            if first:
                raise p.fail("a derivation")
            break
        if not first and tok.kind not in ("+", "-"):
            raise p.fail("'+' or '-'")
        start = tok.start
        sgn = p.sign()
        coeff, exps, d_tok = _parse_monomial(p, n, stop_on_d=True)
        if d_tok is None:
            tok = p.peek()
            raise ParseError("term is missing its d-part", start, tok.start)
        index = int(d_tok.text[1:])
        if index < 1:
            raise SemanticError("derivation indices start at 1",
                                d_tok.start, d_tok.end)
        raw.append((coeff * sgn, exps, index, start, d_tok.end))
        max_d = max(max_d, index)
        max_x = max(max_x, max(exps, default=0))
        first = False
    p.done()
    rank = n if n is not None else max(max_d, max_x + 1, 2)
    terms: dict[tuple[tuple[int, ...], int], Fraction] = {}
    for coeff, exps, index, start, end in raw:
        if index > rank:
            raise SemanticError(f"d{index} exceeds rank {rank}", start, end)
        if exps and max(exps) >= index:
            reason = ("coefficient of d1 must be constant" if index == 1 else
                      f"coefficient of d{index} may only use x1..x{index - 1}")
            raise SemanticError(reason, start, end)
        alpha = tuple(exps.get(i, 0) for i in range(1, index))
        key = (alpha, index)
        total = terms.get(key, Fraction(0)) + coeff
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)
    return LieElem(rank, terms)


# -- triangular automorphisms ----------------------------------------------------------


def parse_triaut(text: str, n: int | None = None) -> TriAut:
    """Parse "[a1, ..., an ; l1, ..., ln]" (the scale block optional)."""
    p = _Parser(text)
    p.expect("[", "'['")
    # First pass: slice out the comma-separated chunks so each polynomial
    # can be parsed with the final rank in hand.
    entries: list[tuple[int, int]] = []
    start = p.peek().start
    scales: list[Fraction] | None = None
    while True:
        tok = p.peek()
        if tok.kind == "end":
            raise p.fail("']'")
        if tok.kind in (",", ";", "]"):
            entries.append((start, tok.start))
            p.next()
            if tok.kind == ",":
                start = p.peek().start
                continue
            if tok.kind == ";":
                scales = []
                while True:
                    sgn = p.sign()
                    scales.append(p.rational() * sgn)
                    nxt = p.peek()
                    if nxt.kind == ",":
                        p.next()
                        continue
                    p.expect("]", "']'")
                    break
            break
        p.next()
    p.done()
    rank = len(entries)
    if n is not None and n != rank:
        raise SemanticError(f"expected rank {n}, found {rank} entries",
                            0, len(text))
    if scales is not None and len(scales) != rank:
        raise SemanticError(f"need {rank} scales, found {len(scales)}",
                            0, len(text))
    parts = []
    for i, (s, e) in enumerate(entries, start=1):
        chunk = text[s:e]
        if not chunk.strip():
            raise ParseError("empty entry", s, max(e, s + 1))
        try:
            poly = parse_poly(chunk, rank)
        except (ParseError, SemanticError) as exc:
            raise type(exc)(exc.reason, s + exc.start, s + exc.end)
        if not poly.uses_only(i - 1):
            raise SemanticError(
                f"translation part of x{i} may only use x1..x{i - 1}", s, e)
        parts.append(poly)
    for c in scales or []:
        if not c:
            raise SemanticError("scales must be nonzero", 0, len(text))
    return TriAut(parts, scales)


# -- ordinals ----------------------------------------------------------------------------


def parse_ordinal(text: str) -> OrdinalCNF:
    """Parse "w^2*3 + w*1 + 4" style ordinal text; "0" is the zero ordinal."""
    p = _Parser(text)
    coeffs: dict[int, int] = {}
    first = True
    while True:
        tok = p.peek()
        if tok.kind == "end":
            if first:
                raise p.fail("an ordinal")
            break
        if not first and tok.kind != "+":
            raise p.fail("'+'")
        if not first:
            p.next()
        tok = p.peek()
        if tok.kind == "int":
            value = int(p.next().text)
            coeffs[0] = coeffs.get(0, 0) + value
        elif tok.kind == "name" and tok.text == "w":
            p.next()
            exp = 1
            if p.peek().kind == "^":
                exp = p.caret_int()
                if exp == 0:
                    raise SemanticError("write plain integers, not w^0",
                                        tok.start, tok.end)
            coeff = 1
            if p.peek().kind == "*":
                p.next()
                c_tok = p.expect("int", "a coefficient")
                coeff = int(c_tok.text)
            coeffs[exp] = coeffs.get(exp, 0) + coeff
        else:
            raise p.fail("'w' or an integer")
        first = False
    p.done()
    return OrdinalCNF(coeffs)


# -- operator series ------------------------------------------------------------------------


def parse_series(text: str, kind: str = "F", var: int = 1,
                 order: int | None = None) -> OpSeries:
    """Parse series text in the symbol D; the kind fixes the constant term
    (1 for unit kinds, 0 for the no-constant kind) and is checked."""
    p = _Parser(text)
    coeffs: dict[int, Fraction] = {}
    constant = Fraction(0)
    first = True
    span_start = 0
    while True:
        tok = p.peek()
        if tok.kind == "end":
            if first:
                raise p.fail("a series")
            break
        if not first and tok.kind not in ("+", "-"):
            raise p.fail("'+' or '-'")
        span_start = tok.start
        sgn = p.sign()
        tok = p.peek()
        coeff = Fraction(1)
        deg: int | None = None
        if tok.kind == "int":
            coeff = p.rational()
            if p.peek().kind == "*":
                p.next()
                d_tok = p.expect("name", "'D'")
                if d_tok.text != "D":
                    raise ParseError(f"expected 'D', found {d_tok.text!r}",
                                     d_tok.start, d_tok.end)
                deg = p.caret_int() if p.peek().kind == "^" else 1
            else:
                deg = 0
        elif tok.kind == "name" and tok.text == "D":
            p.next()
            deg = p.caret_int() if p.peek().kind == "^" else 1
        else:
            raise p.fail("a series term")
        value = coeff * sgn
        if deg == 0:
            constant += value
        else:
            coeffs[deg] = coeffs.get(deg, Fraction(0)) + value
        first = False
    p.done()
    expected = Fraction(0) if kind == "E" else Fraction(1)
    if constant != expected:
        raise SemanticError(
            f"series of kind {kind} must have constant term {expected}",
            0, len(text))
    try:
        return OpSeries(kind, var, order, coeffs)
    except DomainError as exc:
        raise SemanticError(str(exc), 0, len(text))


# -- group elements as JSON --------------------------------------------------------------------


def _rat_from_json(value: Any, what: str) -> Fraction:
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"{what}: bad rational {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    raise DomainError(f"{what}: rationals are written as strings")


def _series_from_json(obj: Any, kind: str, var: int, what: str) -> OpSeries:
    if not isinstance(obj, dict):
        raise DomainError(f"{what}: expected an object")
    order = obj.get("order", "missing")
    if order == "missing":
        raise DomainError(f"{what}: missing order")
    if order is not None and (not isinstance(order, int) or isinstance(order, bool)):
        raise DomainError(f"{what}: order must be an integer or null")
    coeffs: dict[int, Fraction] = {}
    raw = obj.get("coeffs", {})
    if not isinstance(raw, dict):
        raise DomainError(f"{what}: coeffs must be an object")
    for key, val in raw.items():
        try:
            deg = int(key)
        except ValueError:
            raise DomainError(f"{what}: bad degree {key!r}")
        coeffs[deg] = _rat_from_json(val, what)
    try:
        return OpSeries(kind, var, order, coeffs)
    except DomainError as exc:
        raise DomainError(f"{what}: {exc}")


def _series_to_json(s: OpSeries) -> dict[str, Any]:
    return {
        "order": s.order,
        "coeffs": {str(d): rat_str(c) for d, c in sorted(s.coeffs.items())},
    }


def gnelem_from_json(obj: Any) -> GnElem:
    """Build a group element from parsed JSON data."""
    if not isinstance(obj, dict):
        raise DomainError("group element JSON must be an object")
    for field in ("n", "form", "t", "tau", "f", "e"):
        if field not in obj:
            raise DomainError(f"missing field {field!r}")
    n = obj["n"]
    if not isinstance(n, int) or n < 2:
        raise DomainError("n must be an integer rank of at least 2")
    form = obj["form"]
    if form not in ("A", "B"):
        raise DomainError(f"unknown form {form!r}")
    t = [_rat_from_json(v, "t") for v in obj["t"]]
    tau_obj = obj["tau"]
    if not isinstance(tau_obj, dict) or "a" not in tau_obj:
        raise DomainError("tau must carry translation parts")
    a_texts = tau_obj["a"]
    if not isinstance(a_texts, list) or len(a_texts) != n:
        raise DomainError("tau needs n translation parts")
    parts = []
    for i, chunk in enumerate(a_texts, start=1):
        try:
            parts.append(parse_poly(chunk, n))
        except (ParseError, SemanticError) as exc:
            raise DomainError(f"tau entry {i}: {exc.reason}")
    lam = [_rat_from_json(v, "tau.lambda") for v in tau_obj.get("lambda", [1] * n)]
    tau = TriAut(parts, lam)
    s = obj.get("s")
    if form == "A":
        if s is None:
            raise DomainError("Form A carries shift data")
        s = [_rat_from_json(v, "s") for v in s]
    elif s is not None:
        raise DomainError("Form B has no shift field")
    f = _series_from_json(obj["f"], "F" if form == "A" else "FP", n - 1, "f")
    e_raw = obj["e"]
    if not isinstance(e_raw, list):
        raise DomainError("e must be a list")
    e_map: dict[int, OpSeries] = {}
    for entry in e_raw:
        if not isinstance(entry, dict) or "i" not in entry:
            raise DomainError("each feed series carries its target index i")
        i = entry["i"]
        if not isinstance(i, int) or not 2 <= i <= n - 1:
            raise DomainError(f"feed series index {i!r} out of range 2..{n - 1}")
        if i in e_map:
            raise DomainError(f"duplicate feed series for index {i}")
        e_map[i] = _series_from_json(entry, "E", i - 1, f"e[{i}]")
    e = [e_map.get(i, OpSeries.zero_e(i - 1)) for i in range(2, n)]
    return GnElem(n, form, t, tau, s, f, e)


def gnelem_to_json(g: GnElem) -> dict[str, Any]:
    """Plain-data form of a group element (inverse of gnelem_from_json)."""
    out: dict[str, Any] = {
        "n": g.n,
        "form": g.form,
        "t": [rat_str(c) for c in g.t],
        "tau": {
            "a": [format_poly(p) for p in g.tau.a],
            "lambda": [rat_str(c) for c in g.tau.lam],
        },
    }
    if g.s is not None:
        out["s"] = [rat_str(c) for c in g.s]
    out["f"] = _series_to_json(g.f)
    out["e"] = [{"i": k + 2, **_series_to_json(series)}
                for k, series in enumerate(g.e)]
    return out


def parse_gnelem(text: str) -> GnElem:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", exc.pos, exc.pos + 1)
    try:
        return gnelem_from_json(obj)
    except DomainError as exc:
        raise SemanticError(str(exc), 0, len(text))


# -- entry points ------------------------------------------------------------------------------


def parse(kind: str, text: str, *, n: int | None = None,
          series_kind: str = "F", series_var: int = 1,
          order: int | None = None):
    """Parse one value of the given kind from text."""
    if kind == "poly":
        return parse_poly(text, n)
    if kind == "lie":
        return parse_lie(text, n)
    if kind == "triaut":
        return parse_triaut(text, n)
    if kind == "ordinal":
        return parse_ordinal(text)
    if kind == "series":
        return parse_series(text, series_kind, series_var, order)
    if kind == "gnelem-json":
        return parse_gnelem(text)
    raise DomainError(f"unknown input kind {kind!r}")


def print_value(value: Any) -> str:
    """Canonical text for any library value."""
    if isinstance(value, Poly):
        return format_poly(value)
    if isinstance(value, LieElem):
        return format_lie(value)
    if isinstance(value, TriAut):
        return format_triaut(value)
    if isinstance(value, OrdinalCNF):
        return format_ordinal(value)
    if isinstance(value, OpSeries):
        return format_series(value)
    if isinstance(value, GnElem):
        return json.dumps(gnelem_to_json(value), indent=2, sort_keys=False)
    if isinstance(value, Fraction):
        return rat_str(value)
    raise DomainError(f"no canonical text for {type(value).__name__}")
