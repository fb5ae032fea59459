"""Builds finite sampling sets whose per-set trace counts reproduce
measure ratios to a requested tolerance.

Given a measure space with a distinguished subring of well-behaved sets
(every non-empty member has positive measure), required points
``x_1..x_k``, non-empty target sets ``A_1..A_n`` and a tolerance
denominator ``m``, :func:`build_lambda` produces a finite set ``lam``
such that

1. every required point is in ``lam``;
2. subring targets of equal measure meet ``lam`` in equally many
   points;
3. for any targets ``A_i, A_j`` with positive ``mu(A_j)``, the count
   ratio ``|lam n A_i| / |lam n A_j|`` is within ``1/m`` of the measure
   ratio.

The construction refines the targets into a partition of positive
cells and null cells, picks a sampling density ``N`` large enough for
the tolerance and with small fractional parts against every positive
cell measure, then fills each cell with its quota of points.  Every
intermediate quantity is surfaced in the report, and the verdicts come
from :func:`verify_lambda`, which recounts all traces by raw membership
tests only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import floor

from .approx import (
    DEFAULT_CEILING,
    WeightVector,
    dirichlet_n,
    fractional_part,
    induced_partition,
)


class PartitionDegenerateError(ValueError):
    """A non-empty subring cell has measure zero, voiding the subring
    hypothesis."""


def _union_all(sets):
    return reduce(lambda x, y: x.union(y), sets)


@dataclass(frozen=True)
class MeasureSpaceDesc:
    """A measure universe plus the generators of its distinguished
    subring; ``search_ceiling`` bounds the decimal-mode density scan."""

    space: object
    subring: tuple = ()
    search_ceiling: int = DEFAULT_CEILING

    def __post_init__(self):
        object.__setattr__(self, "subring", tuple(self.subring))
        if self.search_ceiling < 0:
            raise ValueError("search ceiling must be non-negative")

    def validate(self) -> None:
        """Spot-check the declared structure: generators non-empty, the
        generated cells all of positive measure, the measure additive
        across them, and finite sets null."""
        for g in self.subring:
            if g.is_empty():
                raise ValueError("subring generators must be non-empty")
        if self.subring:
            part = induced_partition(self.subring)
            for cell in part.cells:
                if self.space.measure(cell) == 0:
                    raise PartitionDegenerateError(
                        "a non-empty subring cell has measure zero"
                    )
            for i, g in enumerate(self.subring):
                total = sum(
                    (self.space.measure(c) for c in part.cells_inside(i)),
                    Fraction(0),
                )
                if total != self.space.measure(g):
                    raise ValueError("measure is not additive over the subring cells")
        probe = self.space.null_probe()
        if probe is not None and self.space.measure(probe) != 0:
            raise ValueError("finite sets must be null in this universe")


@dataclass(frozen=True)
class LambdaRequest:
    """Tolerance denominator, required points, target sets and their
    subring membership flags."""

    m: int
    points: tuple
    sets: tuple
    in_subring: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "sets", tuple(self.sets))
        object.__setattr__(self, "in_subring", tuple(bool(f) for f in self.in_subring))
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError("tolerance denominator m must be a positive integer")
        if not self.sets:
            raise ValueError("at least one target set is required")
        if len(self.in_subring) != len(self.sets):
            raise ValueError("one subring flag is required per target set")


@dataclass(frozen=True)
class LambdaVerdict:
    """Outcome of the independent verification pass."""

    points_present: bool
    equal_traces: bool
    ratios_within: bool
    traces: tuple
    deviations: tuple  # (i, j, |ratio - measure ratio|) or (i, j, None)

    @property
    def all_ok(self) -> bool:
        return self.points_present and self.equal_traces and self.ratios_within


@dataclass(frozen=True)
class LambdaReport:
    """The sampling set with the full accounting of its construction.

    For each target the exact identity
    ``trace = N * measure - rounding_loss - docked_points + null_points``
    holds, where ``rounding_loss`` collects the fractional parts lost to
    cell quotas, ``docked_points`` the required points charged against
    subring piece quotas, and ``null_points`` the required points of the
    target sitting in the null part; ``net_error = trace - N * measure``.
    """

    lam: tuple
    subring_pieces: tuple
    positive_cells: tuple
    null_cells: tuple
    cell_measures: tuple
    set_measures: tuple
    alpha_bound: Fraction
    c_min: Fraction
    density: int
    cell_quotas: tuple
    piece_docks: tuple
    cell_fracs: tuple
    rounding_loss: tuple
    docked_points: tuple
    null_points: tuple
    net_error: tuple
    identity_ok: bool
    verdict: LambdaVerdict

    @property
    def traces(self) -> tuple:
        return self.verdict.traces


def trace_count(space, lam, target) -> int:
    """Membership-only count of sampling points inside the target."""
    return sum(1 for x in lam if space.contains(x, target))


def traces_equal(space, lam, first, second) -> bool:
    return trace_count(space, lam, first) == trace_count(space, lam, second)


def ratio_within(space, lam, numer_set, denom_set, m: int) -> bool:
    """Whether the trace ratio deviates from the measure ratio by less
    than 1/m; False when the denominator trace vanishes."""
    t_den = trace_count(space, lam, denom_set)
    mu_den = space.measure(denom_set)
    if mu_den == 0:
        raise ValueError("denominator set must have positive measure")
    if t_den == 0:
        return False
    t_num = trace_count(space, lam, numer_set)
    mu_num = space.measure(numer_set)
    return abs(Fraction(t_num, t_den) - mu_num / mu_den) < Fraction(1, m)


def verify_lambda(desc: MeasureSpaceDesc, req: LambdaRequest, lam) -> LambdaVerdict:
    """Recheck the three guarantees from scratch.

    Uses only point membership against the request's sets, never the
    builder's internals, and reports each pairwise ratio deviation
    exactly."""
    space = desc.space
    lam = tuple(lam)
    lam_set = set(lam)
    traces = tuple(trace_count(space, lam, a) for a in req.sets)
    measures = [space.measure(a) for a in req.sets]
    n = len(req.sets)

    points_present = all(x in lam_set for x in req.points)

    equal = True
    for i in range(n):
        for j in range(i + 1, n):
            if (
                req.in_subring[i]
                and req.in_subring[j]
                and measures[i] == measures[j]
                and traces[i] != traces[j]
            ):
                equal = False

    tolerance = Fraction(1, req.m)
    deviations = []
    ratios_ok = True
    for j in range(n):
        if measures[j] == 0:
            continue
        for i in range(n):
            if traces[j] == 0:
                deviations.append((i, j, None))
                ratios_ok = False
                continue
            dev = abs(Fraction(traces[i], traces[j]) - measures[i] / measures[j])
            deviations.append((i, j, dev))
            if dev >= tolerance:
                ratios_ok = False

    return LambdaVerdict(points_present, equal, ratios_ok, traces, tuple(deviations))


def _check_subring_membership(desc: MeasureSpaceDesc, flagged_sets) -> None:
    """A flagged set must be an exact union of subring generator cells."""
    if not flagged_sets:
        return
    if not desc.subring:
        raise ValueError("sets were flagged in the subring but no generators given")
    gen_union = _union_all(desc.subring)
    gen_part = induced_partition(desc.subring)
    for a in flagged_sets:
        if not a.diff(gen_union).is_empty():
            raise ValueError("a flagged set reaches outside the subring generators")
        for cell in gen_part.cells:
            if not cell.intersect(a).is_empty() and not cell.diff(a).is_empty():
                raise ValueError("a flagged set splits a subring cell")


def build_lambda(desc: MeasureSpaceDesc, req: LambdaRequest) -> LambdaReport:
    """Construct the sampling set and its report.

    Steps: split the targets by subring membership and partition the
    flagged ones into disjoint pieces; refine with the remaining
    targets into positive and null cells, arranging that the leading
    positive cells sit inside the matching pieces; choose the density N
    above the tolerance bound with small fractional parts against all
    positive cell measures; give each cell its quota (docking piece
    quotas by the required points that fell into the null part); fill
    quotas with deterministic points around the required ones.
    """
    space = desc.space
    desc.validate()

    for a in req.sets:
        if a.is_empty():
            raise ValueError("target sets must be non-empty")
    flagged = [i for i, f in enumerate(req.in_subring) if f]
    _check_subring_membership(desc, [req.sets[i] for i in flagged])

    set_measures = tuple(space.measure(a) for a in req.sets)
    alpha_bound = space.measure(_union_all(req.sets))
    if alpha_bound == 0:
        raise ValueError("at least one target set must have positive measure")

    points = []
    for x in req.points:
        if x not in points:
            points.append(x)
    k = len(points)

    pieces = induced_partition([req.sets[i] for i in flagged]).cells
    for piece in pieces:
        if space.measure(piece) == 0:
            raise PartitionDegenerateError(
                "a non-empty subring piece of the targets has measure zero"
            )
    h = len(pieces)

    others = [req.sets[i] for i in range(len(req.sets)) if i not in set(flagged)]
    refined = induced_partition(tuple(pieces) + tuple(others))
    positive, null_cells = [], []
    for cell, pat in zip(refined.cells, refined.patterns):
        mu = space.measure(cell)
        if mu > 0:
            positive.append((cell, pat, mu))
        else:
            null_cells.append(cell)

    # Put one positive cell of each piece up front, matching indices.
    ordered = []
    rest = list(positive)
    for s in range(h):
        pick = next((entry for entry in rest if entry[1][s]), None)
        if pick is None:
            raise PartitionDegenerateError(
                "a subring piece contains no cell of positive measure"
            )
        ordered.append(pick)
        rest.remove(pick)
    ordered.extend(rest)
    cells = [entry[0] for entry in ordered]
    cell_measures = [entry[2] for entry in ordered]
    p = len(cells)
    c_min = min(cell_measures)

    bound = alpha_bound * (2 * req.m + 1) * (k + 1) / (c_min * c_min)
    density = dirichlet_n(
        WeightVector(tuple(cell_measures), mode=space.weight_mode),
        Fraction(1, p),
        floor(bound) + 1,
        ceiling=desc.search_ceiling,
    )
    cell_fracs = [fractional_part(density * mu) for mu in cell_measures]
    cell_quotas = [floor(density * mu) for mu in cell_measures]
    for quota in cell_quotas:
        assert quota > k, "cell quota must exceed the required-point count"

    def in_null_part(x) -> bool:
        return any(space.contains(x, d) for d in null_cells)

    piece_docks = [
        sum(1 for x in points if space.contains(x, pieces[s]) and in_null_part(x))
        for s in range(h)
    ]

    lam = set(points)
    for s, cell in enumerate(cells):
        anchors = [x for x in points if space.contains(x, cell)]
        want = cell_quotas[s] - (piece_docks[s] if s < h else 0)
        extra = space.points_of(cell, want - len(anchors), exclude=tuple(points))
        lam.update(anchors)
        lam.update(extra)
    lam = tuple(sorted(lam, key=space.point_key))

    verdict = verify_lambda(desc, req, lam)

    rounding_loss, docked_points, null_points, net_error = [], [], [], []
    for a in req.sets:
        inside = [s for s in range(p) if cells[s].diff(a).is_empty()]
        loss = sum((cell_fracs[s] for s in inside), Fraction(0))
        docked = sum(piece_docks[s] for s in inside if s < h)
        hits = sum(1 for x in points if space.contains(x, a) and in_null_part(x))
        rounding_loss.append(loss)
        docked_points.append(docked)
        null_points.append(hits)
        net_error.append((hits - docked) - loss)

    identity_ok = all(
        Fraction(verdict.traces[i])
        == density * set_measures[i] - rounding_loss[i] - docked_points[i] + null_points[i]
        for i in range(len(req.sets))
    )

    return LambdaReport(
        lam=lam,
        subring_pieces=tuple(pieces),
        positive_cells=tuple(cells),
        null_cells=tuple(null_cells),
        cell_measures=tuple(cell_measures),
        set_measures=set_measures,
        alpha_bound=alpha_bound,
        c_min=c_min,
        density=density,
        cell_quotas=tuple(cell_quotas),
        piece_docks=tuple(piece_docks),
        cell_fracs=tuple(cell_fracs),
        rounding_loss=tuple(rounding_loss),
        docked_points=tuple(docked_points),
        null_points=tuple(null_points),
        net_error=tuple(net_error),
        identity_ok=identity_ok,
        verdict=verdict,
    )
