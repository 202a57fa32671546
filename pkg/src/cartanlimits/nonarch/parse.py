"""Recursive-descent parser for field-element expressions.

Accepted syntax (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ['^' exponent]
    atom   := digits | 't' | '(' expr ')'
    exponent := ['-'] digits | '(' ['-'] digits ['/' digits] ')'

Rational exponents are only meaningful on pure powers of ``t``; any other
base takes integer exponents.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .field import T, HReal, format_hreal, t_power

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch not in "+-*/^()t":
                raise ParseError(f"unexpected character {ch!r}", m.start(2), text)
            tokens.append((ch, ch, m.start(2)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][2]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            want = "an integer" if kind == "num" else repr(kind)
            raise ParseError(f"expected {want}, found {found}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> HReal:
        if self.peek() == "end":
            raise ParseError("empty expression", 0, self.text)
        value = self.expr()
        if self.peek() != "end":
            raise ParseError(f"unexpected {self.tokens[self.i][1]!r}", self.pos(), self.text)
        return value

    def expr(self) -> HReal:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> HReal:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op, _, where = self.take()
            rhs_pos = self.pos()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", rhs_pos, self.text)
                value = value / rhs
        return value

    def unary(self) -> HReal:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> HReal:
        base_pos = self.pos()
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take("^")
        exp_pos = self.pos()
        e = self.exponent()
        if e.denominator == 1:
            if base.is_zero() and e < 0:
                raise ParseError("division by zero", base_pos, self.text)
            return base ** int(e)
        # rational powers only for pure powers of t
        pure = (not base.is_zero() and base.is_polynomial()
                and len(base.numerator.terms) == 1 and base.leading_coefficient() == 1)
        if not pure:
            raise ParseError("fractional exponent needs a pure power of t", exp_pos, self.text)
        return t_power(base.valuation() * e)

    def exponent(self) -> Fraction:
        if self.peek() == "(":
            self.take("(")
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            num = int(self.take("num")[1])
            den = 1
            if self.peek() == "/":
                self.take()
                den_pos = self.pos()
                den = int(self.take("num")[1])
                if den == 0:
                    raise ParseError("zero exponent denominator", den_pos, self.text)
            self.take(")")
            return sign * Fraction(num, den)
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        return Fraction(sign * int(self.take("num")[1]))

    def atom(self) -> HReal:
        kind, value, where = self.tokens[self.i]
        if kind == "num":
            self.take()
            return HReal(int(value))
        if kind == "t":
            self.take()
            return T
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        found = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"expected a number, 't' or '(', found {found}", where, self.text)


def parse_hreal(text: str) -> HReal:
    """Parse an expression such as ``"3/2 + 2*t^(1/2) - t^2"`` exactly."""
    return _Parser(text).parse()


def print_hreal(x: HReal) -> str:
    """Canonical text; ``parse_hreal(print_hreal(x)) == x``."""
    return format_hreal(x)

