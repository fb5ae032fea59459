"""Exact arithmetic in an ordered field with one infinite unit.

Elements are quotients of polynomials over the rationals in a formal
symbol ``a``.  The order compares asymptotic behaviour: an element is
positive when its value is eventually positive as ``a`` grows, so ``a``
exceeds every rational and ``1/a`` is a positive infinitesimal.  Every
operation reduces the result to a canonical form (coprime numerator and
denominator, monic denominator, zero is ``0/1``), which makes equality
structural and the order decidable from leading coefficients.

The standard part of a finite element is the rational it is infinitely
close to; infinite elements get a signed infinity marker.  Both are
carried by :class:`Shadow`.
"""

from __future__ import annotations

from fractions import Fraction

from ._lex import Lexer, ParseError

_F0 = Fraction(0)
_F1 = Fraction(1)

# Polynomials are tuples of Fractions, ascending powers, no trailing
# zeros; () is the zero polynomial.


def _trim(coeffs) -> tuple:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    return _trim(
        (a[i] if i < len(a) else _F0) + (b[i] if i < len(b) else _F0)
        for i in range(n)
    )


def _pneg(a: tuple) -> tuple:
    return tuple(-c for c in a)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [_F0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _pdivmod(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    """Euclidean division by a nonzero polynomial."""
    quot = [_F0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    lead = b[-1]
    while len(rem) >= len(b):
        c = rem[-1] / lead
        k = len(rem) - len(b)
        quot[k] = c
        for i, cb in enumerate(b):
            rem[k + i] -= c * cb
        while rem and rem[-1] == 0:
            rem.pop()
    return _trim(quot), _trim(rem)


def _pgcd(a: tuple, b: tuple) -> tuple:
    """Monic greatest common divisor; () when both inputs are zero."""
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a and a[-1] != 1:
        lead = a[-1]
        a = tuple(c / lead for c in a)
    return a


class Shadow:
    """Standard part of a field value: an exact rational or an infinity."""

    __slots__ = ("value", "sign")

    def __init__(self, value=None, sign: int = 0):
        if value is None:
            if sign not in (-1, 1):
                raise ValueError("infinite shadow needs sign -1 or +1")
            self.value = None
            self.sign = sign
        else:
            self.value = Fraction(value)
            self.sign = 0

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __eq__(self, other):
        if isinstance(other, Shadow):
            return self.value == other.value and self.sign == other.sign
        if isinstance(other, (int, Fraction)):
            return self.value is not None and self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value) if self.value is not None else hash(("inf", self.sign))

    def __str__(self):
        if self.value is not None:
            return str(self.value)
        return "+inf" if self.sign > 0 else "-inf"

    def __repr__(self):
        return f"Shadow({self})"


POS_INFINITY = Shadow(sign=1)
NEG_INFINITY = Shadow(sign=-1)


class FieldElement:
    """A rational function of the infinite unit, kept in canonical form.

    Supports +, -, *, /, ** and total ordering; mixes freely with int
    and Fraction operands.  Instances are immutable and hashable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(1,)):
        num = _trim(Fraction(c) for c in num)
        den = _trim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator polynomial")
        if num:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = tuple(c / lead for c in num)
                den = tuple(c / lead for c in den)
        else:
            den = (_F1,)
        self.num = num
        self.den = den

    @classmethod
    def from_rational(cls, value) -> "FieldElement":
        return cls((Fraction(value),))

    # arithmetic

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(_pneg(self.num), self.den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero in the field")
        return FieldElement(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def inverse(self) -> "FieldElement":
        return ONE / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # order

    def _sign(self) -> int:
        if not self.num:
            return 0
        return 1 if self.num[-1] > 0 else -1

    def compare(self, other) -> int:
        """-1, 0 or +1 as self is below, equal to or above other."""
        o = _coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare FieldElement with {type(other).__name__}")
        return (self - o)._sign()

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __hash__(self):
        if self.den == (_F1,) and len(self.num) <= 1:
            return hash(self.num[0] if self.num else 0)
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    # classification

    def is_zero(self) -> bool:
        return not self.num

    def is_finite(self) -> bool:
        return len(self.num) <= len(self.den)

    def is_infinite(self) -> bool:
        return len(self.num) > len(self.den)

    def is_infinitesimal(self) -> bool:
        return len(self.num) < len(self.den)

    def classify(self) -> str:
        if self.is_infinite():
            return "infinite"
        if self.is_infinitesimal():
            return "infinitesimal"
        return "finite"

    def shadow(self) -> Shadow:
        """The unique rational infinitely close to a finite element,
        or the signed infinity marker for an infinite one."""
        if len(self.num) < len(self.den):
            return Shadow(_F0)
        if len(self.num) == len(self.den):
            return Shadow(self.num[-1] / self.den[-1])
        return POS_INFINITY if self._sign() > 0 else NEG_INFINITY

    # rendering

    def __str__(self):
        num = _poly_str(self.num)
        if self.den == (_F1,):
            return num
        return f"({num})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"<FieldElement {self}>"


def _coerce(x):
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElement((x,))
    return NotImplemented


ZERO = FieldElement()
ONE = FieldElement((1,))
ALPHA = FieldElement((0, 1))


def shadow(x) -> Shadow:
    o = _coerce(x)
    if o is NotImplemented:
        raise TypeError(f"no shadow for {type(x).__name__}")
    return o.shadow()


def compare(a, b) -> int:
    o = _coerce(a)
    if o is NotImplemented:
        raise TypeError(f"cannot compare {type(a).__name__}")
    return o.compare(b)


def _frac_str(x: Fraction) -> str:
    return str(x) if x.denominator == 1 else f"({x})"


def _poly_str(p: tuple) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            unit = "a" if k == 1 else f"a^{k}"
            body = unit if mag == 1 else f"{_frac_str(mag)}*{unit}"
        parts.append(("-" if c < 0 else "+", body))
    sign0, body0 = parts[0]
    out = body0 if sign0 == "+" else "-" + body0
    for sgn, body in parts[1:]:
        out += f" {sgn} {body}"
    return out


# Expression grammar:  expr := term (('+'|'-') term)*
#                      term := factor (('*'|'/') factor)*
#                      factor := ('-'|'+') factor | atom ('^' int)?
#                      atom := NUMBER | 'a' | '(' expr ')'


def parse_element(text: str) -> FieldElement:
    """Parse an arithmetic expression over rationals and the unit ``a``."""
    lx = Lexer(text)
    value = _parse_expr(lx)
    lx.finish()
    return value


def _parse_expr(lx: Lexer) -> FieldElement:
    value = _parse_term(lx)
    while True:
        if lx.match("sym", "+") is not None:
            value = value + _parse_term(lx)
        elif lx.match("sym", "-") is not None:
            value = value - _parse_term(lx)
        else:
            return value


def _parse_term(lx: Lexer) -> FieldElement:
    value = _parse_factor(lx)
    while True:
        if lx.match("sym", "*") is not None:
            value = value * _parse_factor(lx)
        elif lx.match("sym", "/") is not None:
            value = value / _parse_factor(lx)
        else:
            return value


def _parse_factor(lx: Lexer) -> FieldElement:
    if lx.match("sym", "-") is not None:
        return -_parse_factor(lx)
    if lx.match("sym", "+") is not None:
        return _parse_factor(lx)
    value = _parse_atom(lx)
    if lx.match("sym", "^") is not None:
        neg = lx.match("sym", "-") is not None
        exponent = int(lx.expect("num"))
        value = value ** (-exponent if neg else exponent)
    return value


def _parse_atom(lx: Lexer) -> FieldElement:
    kind, text = lx.peek()
    if kind == "num":
        lx.pop()
        return FieldElement((int(text),))
    if kind == "name":
        if text != "a":
            raise ParseError(f"unknown symbol {text!r}, only 'a' is defined")
        lx.pop()
        return ALPHA
    if (kind, text) == ("sym", "("):
        lx.pop()
        value = _parse_expr(lx)
        lx.expect("sym", ")")
        return value
    found = text if kind != "end" else "end of input"
    raise ParseError(f"expected a value, found {found!r} in {lx.text!r}")
