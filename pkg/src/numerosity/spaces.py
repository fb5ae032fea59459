"""Concrete measure universes for the sample builder.

Each space bundles a set algebra with its measure, point membership,
and a deterministic point supply: given any set of positive measure it
produces as many distinct points of the set as requested, and given a
null set it lists the finitely many points the set has.  Spaces also
carry codecs between their sets/points and JSON-friendly data, used by
the description-file layer.
"""

from __future__ import annotations

from fractions import Fraction

from . import cointoss, realsets
from .cointoss import CoinEvent, CoinOutcome
from .realsets import RealSet


class EnumerationError(RuntimeError):
    """The universe cannot supply the requested points."""


class RealLineSpace:
    """Rational interval sets under total length."""

    kind = "real-line"
    weight_mode = "rational"

    def measure(self, s: RealSet) -> Fraction:
        return realsets.lebesgue(s)

    def contains(self, x, s: RealSet) -> bool:
        return s.contains(x)

    def point_key(self, x):
        return x

    def points_of(self, s: RealSet, count: int, exclude=()) -> tuple:
        """Distinct points of ``s``: an evenly spaced grid over the first
        interval, skipping removed and excluded points, densified until
        the requested count is available."""
        if count <= 0:
            return ()
        if s.is_empty():
            raise EnumerationError("cannot draw points from the empty set")
        if not s.intervals:
            pts = [x for x in sorted(s.added) if x not in set(exclude)]
            if len(pts) < count:
                raise EnumerationError(
                    f"finite set has {len(pts)} usable points, needed {count}"
                )
            return tuple(pts[:count])
        p, q = s.intervals[0]
        banned = set(s.removed) | set(exclude)
        grid = count
        while True:
            step = (q - p) / (grid + 1)
            pts = []
            for j in range(1, grid + 1):
                x = p + step * j
                if x not in banned:
                    pts.append(x)
                    if len(pts) == count:
                        return tuple(pts)
            grid += count + len(banned)

    def finite_points(self, s: RealSet) -> tuple:
        if s.intervals:
            raise EnumerationError("set has positive measure, not a finite set")
        return tuple(sorted(s.added))

    def null_probe(self) -> RealSet:
        return RealSet(added=(Fraction(1, 7),))

    def set_to_data(self, s: RealSet) -> str:
        return str(s)

    def set_from_data(self, data) -> RealSet:
        return realsets.parse_set(str(data))

    def point_to_data(self, x) -> str:
        return str(x)

    def point_from_data(self, data) -> Fraction:
        return Fraction(str(data))


class CoinTossSpace:
    """Cylinder events of the coin-toss space under classical measure."""

    kind = "coin-toss"
    weight_mode = "rational"

    def measure(self, e: CoinEvent) -> Fraction:
        return cointoss.kolmogorov(e)

    def contains(self, w, e: CoinEvent) -> bool:
        return e.contains(w)

    def point_key(self, w: CoinOutcome):
        return w.sort_key()

    def points_of(self, e: CoinEvent, count: int, exclude=()) -> tuple:
        """Distinct outcomes of ``e``: take the least assignment row and
        vary the sequence beyond the fixed positions."""
        if count <= 0:
            return ()
        if e.is_empty():
            raise EnumerationError("cannot draw outcomes from the empty event")
        if not e.rows:
            pts = [w for w in sorted(e.added, key=CoinOutcome.sort_key)
                   if w not in set(exclude)]
            if len(pts) < count:
                raise EnumerationError(
                    f"finite event has {len(pts)} usable outcomes, needed {count}"
                )
            return tuple(pts[:count])
        row = min(e.rows)
        fixed = dict(zip(e.indices, row))
        width = e.indices[-1] if e.indices else 0
        base = "".join(fixed.get(i, "H") for i in range(1, width + 1))
        banned = set(e.removed) | set(exclude)
        out = []
        j = 0
        while len(out) < count:
            w = CoinOutcome(base + "T" * j, "H")
            if w not in banned:
                out.append(w)
            j += 1
        return tuple(out)

    def finite_points(self, e: CoinEvent) -> tuple:
        if e.rows:
            raise EnumerationError("event has positive measure, not a finite set")
        return tuple(sorted(e.added, key=CoinOutcome.sort_key))

    def null_probe(self) -> CoinEvent:
        return CoinEvent(added=(CoinOutcome("", "H"),))

    def set_to_data(self, e: CoinEvent) -> str:
        return str(e)

    def set_from_data(self, data) -> CoinEvent:
        return cointoss.parse_event(str(data))

    def point_to_data(self, w: CoinOutcome) -> str:
        return str(w)

    def point_from_data(self, data) -> CoinOutcome:
        return cointoss.parse_outcome(str(data))


class AtomSet:
    """A union of atom blocks, identified by their indices."""

    __slots__ = ("atoms",)

    def __init__(self, atoms=()):
        atoms = frozenset(int(i) for i in atoms)
        if any(i < 0 for i in atoms):
            raise ValueError("atom indices must be non-negative")
        self.atoms = atoms

    def is_empty(self) -> bool:
        return not self.atoms

    def contains(self, point) -> bool:
        return point[0] in self.atoms

    def union(self, other: "AtomSet") -> "AtomSet":
        return AtomSet(self.atoms | other.atoms)

    def intersect(self, other: "AtomSet") -> "AtomSet":
        return AtomSet(self.atoms & other.atoms)

    def diff(self, other: "AtomSet") -> "AtomSet":
        return AtomSet(self.atoms - other.atoms)

    def is_subset(self, other: "AtomSet") -> bool:
        return self.atoms <= other.atoms

    def __eq__(self, other):
        if not isinstance(other, AtomSet):
            return NotImplemented
        return self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        return f"<AtomSet {sorted(self.atoms)}>"


class AtomSpace:
    """Finitely many weighted atom blocks, each an infinite reservoir of
    points ``(atom, counter)``.

    The algebra consists of unions of whole blocks, so the only null set
    is the empty one and individual points never carry measure.  With
    ``mode="decimal"`` the weights are treated as scaled decimal
    literals and density selection uses the bounded scan.
    """

    kind = "atoms"

    def __init__(self, weights, mode: str = "rational"):
        self.weights = tuple(Fraction(str(w)) for w in weights)
        if not self.weights:
            raise ValueError("atom space needs at least one atom")
        if any(w <= 0 for w in self.weights):
            raise ValueError("atom weights must be strictly positive")
        if mode not in ("rational", "decimal"):
            raise ValueError(f"unknown weight mode {mode!r}")
        self.mode = mode

    @property
    def weight_mode(self) -> str:
        return self.mode

    def full_set(self) -> AtomSet:
        return AtomSet(range(len(self.weights)))

    def _check(self, s: AtomSet) -> AtomSet:
        if any(i >= len(self.weights) for i in s.atoms):
            raise ValueError("atom index out of range for this space")
        return s

    def measure(self, s: AtomSet) -> Fraction:
        self._check(s)
        return sum((self.weights[i] for i in s.atoms), Fraction(0))

    def contains(self, point, s: AtomSet) -> bool:
        return s.contains(point)

    def point_key(self, point):
        return (point[0], point[1])

    def points_of(self, s: AtomSet, count: int, exclude=()) -> tuple:
        if count <= 0:
            return ()
        if s.is_empty():
            raise EnumerationError("cannot draw points from the empty set")
        self._check(s)
        atom = min(s.atoms)
        banned = set(exclude)
        out = []
        j = 0
        while len(out) < count:
            point = (atom, j)
            if point not in banned:
                out.append(point)
            j += 1
        return tuple(out)

    def finite_points(self, s: AtomSet) -> tuple:
        if not s.is_empty():
            raise EnumerationError("set has positive measure, not a finite set")
        return ()

    def null_probe(self):
        return None

    def set_to_data(self, s: AtomSet) -> list:
        return sorted(s.atoms)

    def set_from_data(self, data) -> AtomSet:
        return self._check(AtomSet(data))

    def point_to_data(self, point) -> list:
        return [point[0], point[1]]

    def point_from_data(self, data) -> tuple:
        atom, counter = data
        atom, counter = int(atom), int(counter)
        if not 0 <= atom < len(self.weights):
            raise ValueError("atom index out of range for this space")
        if counter < 0:
            raise ValueError("point counter must be non-negative")
        return (atom, counter)
