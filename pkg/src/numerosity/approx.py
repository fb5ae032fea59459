"""Partition and approximation utilities behind the sample builder:
induced partitions of finite set families, and selection of a sampling
density whose products with given weights all have small fractional
part (simultaneous approximation in the style of Dirichlet's theorem).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import floor, lcm

DEFAULT_CEILING = 10_000_000


class ApproximationFailure(RuntimeError):
    """The bounded search ran out before finding a qualifying density."""


def fractional_part(x: Fraction) -> Fraction:
    return x - floor(x)


@dataclass(frozen=True)
class WeightVector:
    """Positive weights with the arithmetic mode used to approximate.

    ``rational`` mode is exact and total: any common multiple of the
    denominators clears every fractional part.  ``decimal`` mode keeps
    the weights exact (scaled decimal literals) but finds the density
    by a bounded exhaustive scan, to handle weights whose denominators
    are too large for the common-multiple route to be meaningful.
    """

    values: tuple
    mode: str = "rational"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if not self.values:
            raise ValueError("weight vector must be non-empty")
        if any(v <= 0 for v in self.values):
            raise ValueError("weights must be strictly positive")
        if self.mode not in ("rational", "decimal"):
            raise ValueError(f"unknown weight mode {self.mode!r}")

    @classmethod
    def from_rationals(cls, values) -> "WeightVector":
        return cls(tuple(Fraction(v) for v in values), "rational")

    @classmethod
    def from_decimals(cls, literals) -> "WeightVector":
        return cls(tuple(Fraction(str(s)) for s in literals), "decimal")


def satisfies_bound(weights: WeightVector, eps: Fraction, n: int) -> bool:
    """Re-check a candidate density by direct fractional-part evaluation.

    Kept separate from the incremental search arithmetic so results are
    verified through an independent code path.
    """
    return all(fractional_part(n * y) < eps for y in weights.values)


def dirichlet_n(
    weights: WeightVector,
    eps: Fraction,
    n_min: int = 1,
    ceiling: int = DEFAULT_CEILING,
) -> int:
    """Least n >= n_min with frac(n * y) < eps for every weight y.

    Rational mode returns the least multiple of the denominators' lcm
    at or above ``n_min`` (all fractional parts exactly zero).  Decimal
    mode scans n_min, n_min + 1, ... using exact residue arithmetic and
    raises :class:`ApproximationFailure` after ``ceiling`` candidates.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    n_min = int(n_min)
    if n_min < 1:
        raise ValueError("n_min must be at least 1")

    if weights.mode == "rational":
        step = lcm(*(y.denominator for y in weights.values))
        n = ((n_min + step - 1) // step) * step
        if not satisfies_bound(weights, eps, n):
            raise AssertionError("common-multiple density failed re-verification")
        return n

    nums = [y.numerator for y in weights.values]
    dens = [y.denominator for y in weights.values]
    residues = [(n_min * nu) % de for nu, de in zip(nums, dens)]
    n = n_min
    for _ in range(ceiling + 1):
        if all(r * eps.denominator < eps.numerator * de for r, de in zip(residues, dens)):
            if not satisfies_bound(weights, eps, n):
                raise AssertionError("scan result failed re-verification")
            return n
        n += 1
        residues = [(r + nu) % de for r, nu, de in zip(residues, nums, dens)]
    raise ApproximationFailure(
        f"no density below {n} met the bound {eps}; raise the ceiling"
    )


@dataclass(frozen=True)
class PartitionResult:
    """Disjoint cells refining a set family, with membership patterns.

    ``patterns[c][i]`` is True exactly when cell ``c`` lies inside the
    i-th input set; reassembling the cells marked for ``i`` reproduces
    that input.
    """

    cells: tuple
    patterns: tuple

    def cells_inside(self, i: int) -> tuple:
        return tuple(c for c, pat in zip(self.cells, self.patterns) if pat[i])

    def reassemble(self, i: int):
        pieces = self.cells_inside(i)
        if not pieces:
            return None
        return reduce(lambda x, y: x.union(y), pieces)


def induced_partition(family) -> PartitionResult:
    """Split the union of the family into the non-empty intersections of
    members and their relative complements.

    Works for any value type exposing union/intersect/diff/is_empty;
    cells come out in a deterministic refinement order.
    """
    family = tuple(family)
    if not family:
        return PartitionResult((), ())
    universe = reduce(lambda x, y: x.union(y), family)
    pieces = [(universe, ())]
    for member in family:
        nxt = []
        for cell, pat in pieces:
            inside = cell.intersect(member)
            if not inside.is_empty():
                nxt.append((inside, pat + (True,)))
            outside = cell.diff(member)
            if not outside.is_empty():
                nxt.append((outside, pat + (False,)))
        pieces = nxt
    return PartitionResult(
        tuple(cell for cell, _ in pieces),
        tuple(pat for _, pat in pieces),
    )
