"""Sets of reals built from rational half-open intervals with finite
point corrections, their total length, and a counting measure valued in
the ordered field of :mod:`numerosity.field`.

A :class:`RealSet` is a finite union of intervals ``[p, q)`` with exact
rational endpoints, minus a finite set of removed points (each covered
by an interval), plus a finite set of added points (none covered).  The
constructor canonicalizes: intervals are sorted, overlapping or
adjacent runs are merged, and inconsistent point corrections are
rejected.  Two equal sets therefore always have identical components.

The counting measure assigns ``length * a + (#added - #removed)`` where
``a`` is the infinite unit, so every singleton counts exactly 1 and the
ratio to ``a`` shadows back to ordinary length.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction

from ._lex import Lexer, ParseError, read_rational
from .field import ALPHA, FieldElement, Shadow, _coerce

LebesgueValue = Fraction


def _normalize(pairs) -> tuple:
    """Sort interval pairs and merge overlaps and adjacencies."""
    ivs = []
    for p, q in pairs:
        p, q = Fraction(p), Fraction(q)
        if p > q:
            raise ValueError(f"interval start {p} exceeds end {q}")
        if p < q:
            ivs.append((p, q))
    ivs.sort()
    merged: list[tuple[Fraction, Fraction]] = []
    for p, q in ivs:
        if merged and p <= merged[-1][1]:
            last_p, last_q = merged[-1]
            merged[-1] = (last_p, max(last_q, q))
        else:
            merged.append((p, q))
    return tuple(merged)


def _iv_contains(ivs: tuple, starts, x: Fraction) -> bool:
    i = bisect_right(starts, x) - 1
    return i >= 0 and x < ivs[i][1]


def _iv_intersect(xs: tuple, ys: tuple) -> tuple:
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        p = max(xs[i][0], ys[j][0])
        q = min(xs[i][1], ys[j][1])
        if p < q:
            out.append((p, q))
        if xs[i][1] <= ys[j][1]:
            i += 1
        else:
            j += 1
    return tuple(out)


def _iv_diff(xs: tuple, ys: tuple) -> tuple:
    out = []
    for p, q in xs:
        cur = p
        for r, s in ys:
            if s <= cur or r >= q:
                continue
            if r > cur:
                out.append((cur, r))
            cur = max(cur, s)
            if cur >= q:
                break
        if cur < q:
            out.append((cur, q))
    return tuple(out)


class RealSet:
    """Canonical member of the interval-with-point-corrections algebra."""

    __slots__ = ("intervals", "removed", "added", "_starts")

    def __init__(self, intervals=(), removed=(), added=()):
        ivs = _normalize(intervals)
        starts = tuple(p for p, _ in ivs)
        rem = frozenset(Fraction(x) for x in removed)
        add = frozenset(Fraction(x) for x in added)
        for x in rem:
            if not _iv_contains(ivs, starts, x):
                raise ValueError(f"removed point {x} is not covered by any interval")
        for x in add:
            if _iv_contains(ivs, starts, x):
                raise ValueError(f"added point {x} lies inside an interval")
        if rem & add:
            raise ValueError("a point cannot be both removed and added")
        self.intervals = ivs
        self.removed = rem
        self.added = add
        self._starts = starts

    @classmethod
    def interval(cls, p, q) -> "RealSet":
        return cls(((p, q),))

    @classmethod
    def points(cls, *xs) -> "RealSet":
        return cls(added=xs)

    def is_empty(self) -> bool:
        return not self.intervals and not self.added

    def contains(self, x) -> bool:
        x = Fraction(x)
        if x in self.added:
            return True
        if x in self.removed:
            return False
        return _iv_contains(self.intervals, self._starts, x)

    __contains__ = contains

    # algebra

    def _combine(self, other: "RealSet", iv_op, keep) -> "RealSet":
        base = iv_op(self.intervals, other.intervals)
        starts = tuple(p for p, _ in base)
        removed, added = [], []
        for x in self.removed | self.added | other.removed | other.added:
            present = keep(self.contains(x), other.contains(x))
            if _iv_contains(base, starts, x):
                if not present:
                    removed.append(x)
            elif present:
                added.append(x)
        return RealSet(base, removed, added)

    def union(self, other: "RealSet") -> "RealSet":
        return self._combine(
            other,
            lambda xs, ys: _normalize(xs + ys),
            lambda a, b: a or b,
        )

    def intersect(self, other: "RealSet") -> "RealSet":
        return self._combine(other, _iv_intersect, lambda a, b: a and b)

    def diff(self, other: "RealSet") -> "RealSet":
        return self._combine(other, _iv_diff, lambda a, b: a and not b)

    def is_subset(self, other: "RealSet") -> bool:
        return self.diff(other).is_empty()

    def translate(self, t) -> "RealSet":
        t = Fraction(t)
        return RealSet(
            tuple((p + t, q + t) for p, q in self.intervals),
            tuple(x + t for x in self.removed),
            tuple(x + t for x in self.added),
        )

    __or__ = union
    __and__ = intersect
    __sub__ = diff

    def __eq__(self, other):
        if not isinstance(other, RealSet):
            return NotImplemented
        return (
            self.intervals == other.intervals
            and self.removed == other.removed
            and self.added == other.added
        )

    def __hash__(self):
        return hash((self.intervals, self.removed, self.added))

    def __str__(self):
        terms = [f"[{p},{q})" for p, q in self.intervals]
        base = " u ".join(terms)
        if self.removed:
            core = base if len(terms) == 1 else f"({base})"
            pts = ", ".join(str(x) for x in sorted(self.removed))
            base = f"{core} \\ {{{pts}}}"
        if self.added:
            pts = "{" + ", ".join(str(x) for x in sorted(self.added)) + "}"
            base = f"{base} u {pts}" if base else pts
        return base or "{}"

    def __repr__(self):
        return f"<RealSet {self}>"


EMPTY = RealSet()


def union(a: RealSet, b: RealSet) -> RealSet:
    return a.union(b)


def intersect(a: RealSet, b: RealSet) -> RealSet:
    return a.intersect(b)


def diff(a: RealSet, b: RealSet) -> RealSet:
    return a.diff(b)


def complement_in(a: RealSet, universe: RealSet) -> RealSet:
    """Complement of ``a`` relative to a universe that must contain it."""
    if not a.is_subset(universe):
        raise ValueError("set is not contained in the given universe")
    return universe.diff(a)


def translate(a: RealSet, t) -> RealSet:
    return a.translate(t)


def lebesgue(a: RealSet) -> LebesgueValue:
    """Total interval length; point corrections contribute nothing."""
    return sum((q - p for p, q in a.intervals), Fraction(0))


def numerosity(a: RealSet) -> FieldElement:
    """Exact point count: length times the infinite unit, corrected by
    the added and removed points, so singletons count 1."""
    return ALPHA * lebesgue(a) + (len(a.added) - len(a.removed))


def shadow_ratio(a: RealSet, beta) -> Shadow:
    """Standard part of numerosity(a) / beta; with beta the unit itself
    this recovers the length of ``a`` exactly."""
    b = _coerce(beta)
    if b is NotImplemented:
        raise TypeError("beta must be a field element or rational")
    if b.compare(0) <= 0:
        raise ValueError("ratio unit must be positive")
    return (numerosity(a) / b).shadow()


# Set expressions:  expr := term ('u' term)*
#                   term := factor (('n' | '\') factor)*
#                   factor := '(' expr ')' | '[' rat ',' rat ')' | '{' rats '}'


def parse_set(text: str) -> RealSet:
    """Parse the interval-set grammar; result is canonical."""
    lx = Lexer(text)
    s = _parse_union(lx)
    lx.finish()
    return s


def _parse_union(lx: Lexer) -> RealSet:
    s = _parse_term(lx)
    while lx.match("name", "u") is not None:
        s = s.union(_parse_term(lx))
    return s


def _parse_term(lx: Lexer) -> RealSet:
    s = _parse_factor(lx)
    while True:
        if lx.match("name", "n") is not None:
            s = s.intersect(_parse_factor(lx))
        elif lx.match("sym", "\\") is not None:
            s = s.diff(_parse_factor(lx))
        else:
            return s


def _parse_factor(lx: Lexer) -> RealSet:
    if lx.match("sym", "(") is not None:
        s = _parse_union(lx)
        lx.expect("sym", ")")
        return s
    if lx.match("sym", "[") is not None:
        p = read_rational(lx)
        lx.expect("sym", ",")
        q = read_rational(lx)
        lx.expect("sym", ")")
        if p > q:
            raise ParseError(f"reversed interval [{p},{q})")
        return RealSet(((p, q),)) if p < q else EMPTY
    if lx.match("sym", "{") is not None:
        pts = []
        if lx.match("sym", "}") is None:
            pts.append(read_rational(lx))
            while lx.match("sym", ",") is not None:
                pts.append(read_rational(lx))
            lx.expect("sym", "}")
        return RealSet(added=pts)
    kind, text = lx.peek()
    found = text if kind != "end" else "end of input"
    raise ParseError(f"expected a set, found {found!r} in {lx.text!r}")
