"""Text grammar for polynomials and measure files.

Polynomial terms are `c`, `c*x^k`, `x^k`, `x`, joined by + or -, with
integer or p/q rational coefficients; whitespace is insignificant.
A measures file holds one `name: polynomial` line per player.  All
diagnostics carry line and column positions.
"""

from __future__ import annotations

from fractions import Fraction

from .cake import Measure
from .errors import InvalidMeasureError, ParseError
from .polys import Poly, format_poly


class _Scanner:
    def __init__(self, text: str, line: int = 1, col_offset: int = 0):
        self.text = text
        self.pos = 0
        self.line = line
        self.col_offset = col_offset

    @property
    def col(self) -> int:
        return self.pos + 1 + self.col_offset

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.col)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        c = self.peek()
        if c:
            self.pos += 1
        return c

    def expect_int(self, what: str) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error(f"expected {what}")
        return int(self.text[start : self.pos])

    def at_end(self) -> bool:
        return self.peek() == ""


def _parse_term(sc: _Scanner) -> Poly:
    c = sc.peek()
    if c.isdigit():
        num = sc.expect_int("an integer coefficient")
        coeff = Fraction(num)
        if sc.peek() == "/":
            sc.take()
            den = sc.expect_int("a denominator")
            if den == 0:
                raise sc.error("zero denominator")
            coeff = Fraction(num, den)
        if sc.peek() == "*":
            sc.take()
            if sc.peek() != "x":
                raise sc.error("expected the variable x after '*'")
            return _parse_varpart(sc).scale(coeff)
        return Poly.constant(coeff)
    if c == "x":
        return _parse_varpart(sc)
    if c == "":
        raise sc.error("unexpected end of polynomial")
    raise sc.error(f"unexpected character {c!r}")


def _parse_varpart(sc: _Scanner) -> Poly:
    sc.take()  # the x
    if sc.peek() == "^":
        sc.take()
        k = sc.expect_int("an integer exponent")
        return Poly.monomial(k)
    return Poly.x()


def parse_polynomial(text: str, line: int = 1, col_offset: int = 0) -> Poly:
    """Parse the term grammar into an exact polynomial."""
    sc = _Scanner(text, line, col_offset)
    sign = 1
    if sc.peek() in "+-":
        sign = -1 if sc.take() == "-" else 1
    acc = _parse_term(sc).scale(sign)
    while not sc.at_end():
        op = sc.peek()
        if op not in "+-":
            raise sc.error(f"expected '+' or '-', found {op!r}")
        sc.take()
        term = _parse_term(sc)
        acc = acc + (term if op == "+" else -term)
    return acc


def parse_measures(text: str) -> list[Measure]:
    """Parse and validate a measures file: one `name: polynomial` per line."""
    measures: list[Measure] = []
    seen: set[str] = set()
    for ln, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        if ":" not in raw:
            raise ParseError("expected 'name: polynomial'", ln, len(raw.rstrip()) + 1)
        name, _, body = raw.partition(":")
        name = name.strip()
        if not name or not all(ch.isalnum() or ch in "_-" for ch in name):
            raise ParseError(f"invalid player name {name.strip()!r}", ln, 1)
        if name in seen:
            raise ParseError(f"duplicate player name {name!r}", ln, 1)
        seen.add(name)
        poly = parse_polynomial(body, line=ln, col_offset=raw.index(":") + 1)
        try:
            measures.append(Measure.make(poly, name))
        except InvalidMeasureError as e:
            raise InvalidMeasureError(f"line {ln} ({name}): {e}") from None
    if not measures:
        raise ParseError("no measures found", 1, 1)
    return measures


def format_measures(measures: list[Measure]) -> str:
    """Inverse of parse_measures; parsing the output reproduces the input."""
    return "\n".join(f"{m.label}: {format_poly(m.cdf)}" for m in measures) + "\n"
