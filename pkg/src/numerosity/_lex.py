"""Shared tokenizer for the small expression grammars."""

from __future__ import annotations

import re
from fractions import Fraction


class ParseError(ValueError):
    """Raised when an expression does not match its grammar."""


_TOKEN = re.compile(r"(\d+)|([A-Za-z]+)|(\S)")


class Lexer:
    """Splits input into number, name and single-symbol tokens."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2)))
            else:
                self.tokens.append(("sym", m.group(3)))
        self.pos = 0

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("end", "")

    def pop(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def match(self, kind: str, text: str | None = None):
        k, t = self.peek()
        if k == kind and (text is None or t == text):
            self.pos += 1
            return t
        return None

    def expect(self, kind: str, text: str | None = None) -> str:
        k, t = self.peek()
        if k != kind or (text is not None and t != text):
            want = text if text is not None else kind
            found = t if k != "end" else "end of input"
            raise ParseError(f"expected {want!r}, found {found!r} in {self.text!r}")
        self.pos += 1
        return t

    def finish(self) -> None:
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")


def read_rational(lx: Lexer) -> Fraction:
    """Signed rational literal: 3, -2, 3/4, -10/7."""
    neg = lx.match("sym", "-") is not None
    num = int(lx.expect("num"))
    if lx.match("sym", "/") is not None:
        den = int(lx.expect("num"))
        if den == 0:
            raise ParseError("zero denominator in rational literal")
        value = Fraction(num, den)
    else:
        value = Fraction(num)
    return -value if neg else value
