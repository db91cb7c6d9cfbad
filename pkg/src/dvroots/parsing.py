"""Polynomial expression parser for the CLI and the JSON input format.

Grammar (whitespace-insensitive)::

    poly    :=  [sign] term { sign term }
    term    :=  factor { "*" factor }
    factor  :=  NUMBER [ "/" NUMBER ]          integer or rational coefficient
             |  "p" [ "^" sexp ]               padic mode: uniformizer power
             |  "t" [ "^" sexp ]               laurent mode: uniformizer power
             |  "[" NUMBER { "," NUMBER } "]"  laurent mode, f > 1: residue vector
             |  "x" [ "^" sexp ]               the variable (exponent >= 0)
    sexp    :=  ["-"] NUMBER

A term carries at most one x factor; duplicate exponents across terms are
summed and zero terms dropped, so parsing always yields a canonical Poly.
Errors carry the offending position.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import BadFieldElement, NonIntegerExponent, PolySyntaxError
from .fields import MODE_LAURENT, MODE_PADIC
from .polynomials import Poly

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[a-zA-Z]+)|(?P<op>\^|\*|/|\+|-|\[|\]|,))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            where = len(text) - len(stripped)
            raise PolySyntaxError(where, "a number, a variable or an operator",
                                  text[where])
        if match.group("int") is not None:
            tokens.append(("int", int(match.group("int")), match.start("int")))
        elif match.group("name") is not None:
            tokens.append(("name", match.group("name"), match.start("name")))
        else:
            tokens.append(("op", match.group("op"), match.start("op")))
        pos = match.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ctx):
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect_op(self, symbol):
        kind, value, pos = self.peek()
        if kind != "op" or value != symbol:
            raise PolySyntaxError(pos, f"'{symbol}'", value)
        return self.advance()

    # -- pieces ---------------------------------------------------------------

    def parse_signed_exponent(self):
        kind, value, pos = self.peek()
        negative = False
        if kind == "op" and value == "-":
            negative = True
            self.advance()
            kind, value, pos = self.peek()
        if kind != "int":
            raise PolySyntaxError(pos, "an integer exponent", value)
        self.advance()
        return -value if negative else value

    def parse_optional_exponent(self, default=1):
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            return self.parse_signed_exponent()
        return default

    def parse_vector(self):
        _, _, open_pos = self.expect_op("[")
        entries = []
        while True:
            kind, value, pos = self.peek()
            negative = False
            if kind == "op" and value == "-":
                negative = True
                self.advance()
                kind, value, pos = self.peek()
            if kind != "int":
                raise PolySyntaxError(pos, "a residue coordinate", value)
            self.advance()
            entries.append(-value if negative else value)
            kind, value, pos = self.peek()
            if kind == "op" and value == ",":
                self.advance()
                continue
            if kind == "op" and value == "]":
                self.advance()
                break
            raise PolySyntaxError(pos, "',' or ']'", value)
        if self.ctx.mode != MODE_LAURENT or self.ctx.f == 1:
            raise BadFieldElement(
                "residue vectors are only meaningful for laurent mode with f > 1",
                open_pos,
            )
        if len(entries) != self.ctx.f:
            raise BadFieldElement(
                f"residue vector needs {self.ctx.f} coordinates, got {len(entries)}",
                open_pos,
            )
        return self.ctx.from_residue(self.ctx.residue.element(entries))

    def parse_factor(self):
        """Returns (coefficient KElement or None, x-exponent or None)."""
        kind, value, pos = self.peek()
        if kind == "int":
            self.advance()
            nxt_kind, nxt_value, _ = self.peek()
            if nxt_kind == "op" and nxt_value == "/":
                self.advance()
                dkind, dvalue, dpos = self.peek()
                if dkind != "int":
                    raise PolySyntaxError(dpos, "a denominator", dvalue)
                self.advance()
                if dvalue == 0:
                    raise BadFieldElement("zero denominator", dpos)
                return self._coefficient_fraction(Fraction(value, dvalue), pos), None
            return self._coefficient_fraction(Fraction(value), pos), None
        if kind == "op" and value == "[":
            return self.parse_vector(), None
        if kind == "name":
            self.advance()
            if value == "x":
                exp = self.parse_optional_exponent()
                if exp < 0:
                    raise NonIntegerExponent(
                        f"variable exponent must be >= 0, got {exp}", pos
                    )
                return None, exp
            if value == "p":
                if self.ctx.mode != MODE_PADIC:
                    raise BadFieldElement("'p' is only a coefficient in padic mode", pos)
                return self.ctx.uniformizer_pow(self.parse_optional_exponent()), None
            if value == "t":
                if self.ctx.mode != MODE_LAURENT:
                    raise BadFieldElement("'t' is only a coefficient in laurent mode", pos)
                return self.ctx.uniformizer_pow(self.parse_optional_exponent()), None
            raise PolySyntaxError(pos, "'x', 'p' or 't'", value)
        raise PolySyntaxError(pos, "a coefficient or a variable", value)

    def _coefficient_fraction(self, value, pos):
        try:
            return self.ctx.from_fraction(value)
        except BadFieldElement as exc:
            raise BadFieldElement(str(exc), pos) from None

    def parse_term(self):
        coeff = self.ctx.one()
        exponent = None
        while True:
            c, e = self.parse_factor()
            if c is not None:
                coeff = coeff * c
            if e is not None:
                if exponent is not None:
                    kind, value, pos = self.peek()
                    raise PolySyntaxError(pos, "at most one x factor per term", "x")
                exponent = e
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                continue
            break
        return (exponent or 0), coeff

    def parse_poly(self):
        pairs = []
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            sign = -1 if value == "-" else 1
            self.advance()
        while True:
            exp, coeff = self.parse_term()
            pairs.append((exp, -coeff if sign < 0 else coeff))
            kind, value, pos = self.peek()
            if kind == "end":
                break
            if kind == "op" and value in "+-":
                sign = -1 if value == "-" else 1
                self.advance()
                continue
            raise PolySyntaxError(pos, "'+', '-' or end of input", value)
        return Poly.from_pairs(self.ctx, pairs)


def parse_poly(text, ctx):
    """Parse a polynomial expression into a canonical Poly."""
    if not text.strip():
        raise PolySyntaxError(0, "a polynomial expression", "")
    return _Parser(text, ctx).parse_poly()


def parse_coefficient(text, ctx):
    """Parse a single coefficient expression (no x allowed)."""
    parser = _Parser(text, ctx)
    kind, value, _ = parser.peek()
    sign = 1
    if kind == "op" and value in "+-":
        sign = -1 if value == "-" else 1
        parser.advance()
    exp, coeff = parser.parse_term()
    kind, value, pos = parser.peek()
    if exp != 0:
        raise PolySyntaxError(pos, "a coefficient without the variable", "x")
    if kind != "end":
        raise PolySyntaxError(pos, "end of coefficient", value)
    return -coeff if sign < 0 else coeff
