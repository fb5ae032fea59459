"""The coin-toss sample space, its cylinder event algebra, and the
numerosity-based probability with infinitesimal resolution.

Sample points are eventually constant head/tail sequences: a finite
prefix followed by a constant tail symbol.  An event has a cylinder
part (a set of assignments over a finite index set) plus finite
added/removed outcome corrections, mirroring :mod:`numerosity.realsets`.
The constructor minimizes the index set, so equal events always have
identical components.

``probability(e) = numerosity(e) / numerosity(omega)`` is exact in the
ordered field: cylinders of codimension n get exactly ``1/2**n``,
singleton outcomes get the positive infinitesimal ``1/a``, and the
shadow of any event's probability is its classical measure.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ._lex import Lexer, ParseError
from .field import ALPHA, FieldElement

_SYMBOLS = ("H", "T")


class CoinOutcome:
    """An eventually constant toss sequence: prefix then constant tail."""

    __slots__ = ("prefix", "tail")

    def __init__(self, prefix: str = "", tail: str = "H"):
        prefix = str(prefix)
        tail = str(tail)
        if tail not in _SYMBOLS:
            raise ValueError(f"tail must be H or T, got {tail!r}")
        if any(ch not in _SYMBOLS for ch in prefix):
            raise ValueError(f"prefix may only contain H and T, got {prefix!r}")
        while prefix.endswith(tail):
            prefix = prefix[:-1]
        self.prefix = prefix
        self.tail = tail

    def value_at(self, i: int) -> str:
        """The i-th toss, 1-based."""
        if i < 1:
            raise ValueError("toss positions start at 1")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.tail

    def sort_key(self):
        return (self.prefix, self.tail)

    def __eq__(self, other):
        if not isinstance(other, CoinOutcome):
            return NotImplemented
        return self.prefix == other.prefix and self.tail == other.tail

    def __hash__(self):
        return hash((self.prefix, self.tail))

    def __str__(self):
        return f"O({self.prefix}|{self.tail})"

    def __repr__(self):
        return f"<CoinOutcome {self}>"


class CoinEvent:
    """Canonical event: minimal cylinder part plus point corrections."""

    __slots__ = ("indices", "rows", "added", "removed")

    def __init__(self, indices=(), rows=(), added=(), removed=()):
        indices = tuple(int(i) for i in indices)
        if any(i < 1 for i in indices):
            raise ValueError("cylinder indices must be positive integers")
        if list(indices) != sorted(set(indices)):
            raise ValueError("cylinder indices must be strictly increasing and distinct")
        rowset = set()
        for row in rows:
            row = str(row)
            if len(row) != len(indices) or any(ch not in _SYMBOLS for ch in row):
                raise ValueError(f"malformed assignment row {row!r} for indices {indices}")
            rowset.add(row)
        indices, rowset = _minimize(indices, rowset)
        add = frozenset(added)
        rem = frozenset(removed)
        for w in add | rem:
            if not isinstance(w, CoinOutcome):
                raise ValueError("corrections must be CoinOutcome values")
        if add & rem:
            raise ValueError("an outcome cannot be both added and removed")
        for w in rem:
            if not _cyl_contains(indices, rowset, w):
                raise ValueError(f"removed outcome {w} is not inside the cylinder part")
        for w in add:
            if _cyl_contains(indices, rowset, w):
                raise ValueError(f"added outcome {w} is already inside the cylinder part")
        self.indices = indices
        self.rows = frozenset(rowset)
        self.added = add
        self.removed = rem

    def is_empty(self) -> bool:
        return not self.rows and not self.added

    def contains(self, w: CoinOutcome) -> bool:
        if w in self.added:
            return True
        if w in self.removed:
            return False
        return _cyl_contains(self.indices, self.rows, w)

    __contains__ = contains

    # algebra: lift both cylinder parts to the union of the index sets,
    # combine assignment rows, reclassify the finitely many corrections.

    def _lift_rows(self, indices: tuple) -> set:
        if indices == self.indices:
            return set(self.rows)
        own_pos = [indices.index(i) for i in self.indices]
        free_pos = [t for t in range(len(indices)) if indices[t] not in self.indices]
        out = set()
        for row in self.rows:
            for bits in product(_SYMBOLS, repeat=len(free_pos)):
                chars = [""] * len(indices)
                for pos, ch in zip(own_pos, row):
                    chars[pos] = ch
                for pos, ch in zip(free_pos, bits):
                    chars[pos] = ch
                out.add("".join(chars))
        return out

    def _binary(self, other: "CoinEvent", keep) -> "CoinEvent":
        indices = tuple(sorted(set(self.indices) | set(other.indices)))
        ra = self._lift_rows(indices)
        rb = other._lift_rows(indices)
        rows = {r for r in ra | rb if keep(r in ra, r in rb)}
        added, removed = [], []
        for w in self.added | self.removed | other.added | other.removed:
            present = keep(self.contains(w), other.contains(w))
            if _row_of(indices, w) in rows:
                if not present:
                    removed.append(w)
            elif present:
                added.append(w)
        return CoinEvent(indices, rows, added, removed)

    def union(self, other: "CoinEvent") -> "CoinEvent":
        return self._binary(other, lambda a, b: a or b)

    def intersect(self, other: "CoinEvent") -> "CoinEvent":
        return self._binary(other, lambda a, b: a and b)

    def diff(self, other: "CoinEvent") -> "CoinEvent":
        return self._binary(other, lambda a, b: a and not b)

    def complement(self) -> "CoinEvent":
        return OMEGA.diff(self)

    def is_subset(self, other: "CoinEvent") -> bool:
        return self.diff(other).is_empty()

    __or__ = union
    __and__ = intersect
    __sub__ = diff
    __invert__ = complement

    def __eq__(self, other):
        if not isinstance(other, CoinEvent):
            return NotImplemented
        return (
            self.indices == other.indices
            and self.rows == other.rows
            and self.added == other.added
            and self.removed == other.removed
        )

    def __hash__(self):
        return hash((self.indices, self.rows, self.added, self.removed))

    def __str__(self):
        terms = [
            "C(" + ", ".join(f"{i}:{ch}" for i, ch in zip(self.indices, row)) + ")"
            for row in sorted(self.rows)
        ]
        base = " u ".join(terms)
        if self.removed:
            core = base if len(terms) == 1 else f"({base})"
            pts = ", ".join(str(w) for w in sorted(self.removed, key=CoinOutcome.sort_key))
            base = f"{core} \\ {{{pts}}}"
        if self.added:
            pts = "{" + ", ".join(str(w) for w in sorted(self.added, key=CoinOutcome.sort_key)) + "}"
            base = f"{base} u {pts}" if base else pts
        return base or "{}"

    def __repr__(self):
        return f"<CoinEvent {self}>"


def _row_of(indices: tuple, w: CoinOutcome) -> str:
    return "".join(w.value_at(i) for i in indices)


def _cyl_contains(indices: tuple, rows, w: CoinOutcome) -> bool:
    return _row_of(indices, w) in rows


def _minimize(indices: tuple, rows: set) -> tuple[tuple, frozenset]:
    """Drop every index the row set does not depend on."""
    if not rows:
        return (), frozenset()
    idx = list(indices)
    rs = set(rows)
    changed = True
    while changed:
        changed = False
        for t in range(len(idx)):
            proj: dict[str, set] = {}
            for r in rs:
                proj.setdefault(r[:t] + r[t + 1:], set()).add(r[t])
            if all(v == {"H", "T"} for v in proj.values()):
                rs = set(proj.keys())
                del idx[t]
                changed = True
                break
    return tuple(idx), frozenset(rs)


OMEGA = CoinEvent((), ("",))
EMPTY = CoinEvent()


def cylinder(pairs) -> CoinEvent:
    """The event fixing finitely many tosses: pairs of (index, H or T)."""
    pairs = [(int(i), str(t)) for i, t in pairs]
    indices = [i for i, _ in pairs]
    if len(set(indices)) != len(indices):
        raise ValueError("duplicate cylinder index")
    pairs.sort()
    row = "".join(t for _, t in pairs)
    return CoinEvent(tuple(i for i, _ in pairs), (row,))


def member(w: CoinOutcome, e: CoinEvent) -> bool:
    return e.contains(w)


def kolmogorov(e: CoinEvent) -> Fraction:
    """Classical probability: assignment count over table size; finite
    corrections are null."""
    return Fraction(len(e.rows), 2 ** len(e.indices))


def numerosity(e: CoinEvent) -> FieldElement:
    """Exact outcome count valued in the field; singletons count 1 and
    the whole space counts the infinite unit."""
    return ALPHA * kolmogorov(e) + (len(e.added) - len(e.removed))


def probability(e: CoinEvent) -> FieldElement:
    """Ratio of the event's numerosity to the whole space's."""
    return numerosity(e) / ALPHA


def conditional(e: CoinEvent, f) -> Fraction:
    """Probability of ``e`` given a finite non-empty set of outcomes:
    the exact fraction of members of ``f`` that fall in ``e``."""
    outcomes = set(f)
    if not outcomes:
        raise ValueError("conditioning set must be non-empty")
    if any(not isinstance(w, CoinOutcome) for w in outcomes):
        raise ValueError("conditioning set must consist of outcomes")
    hits = sum(1 for w in outcomes if e.contains(w))
    return Fraction(hits, len(outcomes))


# Event expressions:  expr := term ('u' term)*
#                     term := factor (('n' | '\') factor)*
#                     factor := '~' factor | '(' expr ')' | cylinder | outcome set
#                     cylinder := 'C' '(' [idx ':' sym {',' idx ':' sym}] ')'
#                     outcome := 'O' '(' [H/T run] '|' sym ')'


def parse_outcome(text: str) -> CoinOutcome:
    lx = Lexer(text)
    w = _parse_outcome(lx)
    lx.finish()
    return w


def parse_event(text: str) -> CoinEvent:
    lx = Lexer(text)
    e = _parse_union(lx)
    lx.finish()
    return e


def _parse_union(lx: Lexer) -> CoinEvent:
    e = _parse_term(lx)
    while lx.match("name", "u") is not None:
        e = e.union(_parse_term(lx))
    return e


def _parse_term(lx: Lexer) -> CoinEvent:
    e = _parse_factor(lx)
    while True:
        if lx.match("name", "n") is not None:
            e = e.intersect(_parse_factor(lx))
        elif lx.match("sym", "\\") is not None:
            e = e.diff(_parse_factor(lx))
        else:
            return e


def _parse_factor(lx: Lexer) -> CoinEvent:
    if lx.match("sym", "~") is not None:
        return _parse_factor(lx).complement()
    if lx.match("sym", "(") is not None:
        e = _parse_union(lx)
        lx.expect("sym", ")")
        return e
    kind, text = lx.peek()
    if (kind, text) == ("name", "C"):
        lx.pop()
        lx.expect("sym", "(")
        pairs = []
        if lx.match("sym", ")") is None:
            pairs.append(_parse_pair(lx))
            while lx.match("sym", ",") is not None:
                pairs.append(_parse_pair(lx))
            lx.expect("sym", ")")
        try:
            return cylinder(pairs)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    if (kind, text) == ("sym", "{"):
        lx.pop()
        outcomes = []
        if lx.match("sym", "}") is None:
            outcomes.append(_parse_outcome(lx))
            while lx.match("sym", ",") is not None:
                outcomes.append(_parse_outcome(lx))
            lx.expect("sym", "}")
        return CoinEvent(added=outcomes)
    found = text if kind != "end" else "end of input"
    raise ParseError(f"expected an event, found {found!r} in {lx.text!r}")


def _parse_pair(lx: Lexer):
    i = int(lx.expect("num"))
    lx.expect("sym", ":")
    sym = lx.expect("name")
    if sym not in _SYMBOLS:
        raise ParseError(f"toss value must be H or T, got {sym!r}")
    return (i, sym)


def _parse_outcome(lx: Lexer) -> CoinOutcome:
    lx.expect("name", "O")
    lx.expect("sym", "(")
    prefix = ""
    kind, text = lx.peek()
    if kind == "name" and text != "":
        if any(ch not in _SYMBOLS for ch in text):
            raise ParseError(f"outcome prefix must be H/T letters, got {text!r}")
        prefix = text
        lx.pop()
    lx.expect("sym", "|")
    tail = lx.expect("name")
    if tail not in _SYMBOLS:
        raise ParseError(f"outcome tail must be H or T, got {tail!r}")
    lx.expect("sym", ")")
    return CoinOutcome(prefix, tail)
