from fractions import Fraction
from math import floor

import pytest

from numerosity.approx import fractional_part
from numerosity.cointoss import CoinOutcome, cylinder
from numerosity.realsets import RealSet, parse_set
from numerosity.spaces import AtomSet, AtomSpace, CoinTossSpace, RealLineSpace
from numerosity.lambda_builder import (
    LambdaRequest,
    MeasureSpaceDesc,
    PartitionDegenerateError,
    build_lambda,
    ratio_within,
    trace_count,
    traces_equal,
    verify_lambda,
)

HALVES = (parse_set("[0,1/2)"), parse_set("[1/2,1)"))


def real_desc(subring=HALVES):
    return MeasureSpaceDesc(RealLineSpace(), subring)


def expected_density(alpha, m, k, c, lcm_step):
    """Recompute the density the long way: the least multiple of the
    denominators' lcm above the tolerance bound."""
    bound = floor(alpha * (2 * m + 1) * (k + 1) / (c * c)) + 1
    return ((bound + lcm_step - 1) // lcm_step) * lcm_step


class TestBuildOnRealLine:
    def test_equal_measures_force_equal_traces(self):
        req = LambdaRequest(10, (), HALVES, (True, True))
        report = build_lambda(real_desc(), req)
        assert report.density == expected_density(1, 10, 0, Fraction(1, 2), 2) == 86
        assert report.cell_quotas == (43, 43)
        assert report.traces[0] == report.traces[1] == 43
        assert report.verdict.all_ok and report.identity_ok

    def test_reflexive_ratio_is_exact(self):
        req = LambdaRequest(10, (), (parse_set("[0,1/3)"),), (False,))
        report = build_lambda(MeasureSpaceDesc(RealLineSpace()), req)
        assert report.verdict.deviations == ((0, 0, Fraction(0)),)
        assert report.verdict.all_ok

    def test_nested_sets_outside_subring(self):
        req = LambdaRequest(
            100, (), (parse_set("[0,1/3)"), parse_set("[0,2/3)")), (False, False)
        )
        report = build_lambda(MeasureSpaceDesc(RealLineSpace()), req)
        assert report.density == expected_density(Fraction(2, 3), 100, 0, Fraction(1, 3), 3) == 1209
        assert report.traces == (403, 806)
        dev = dict(((i, j), d) for i, j, d in report.verdict.deviations)
        assert dev[(0, 1)] == abs(Fraction(403, 806) - Fraction(1, 2)) == 0
        assert report.verdict.all_ok and report.identity_ok

    def test_points_and_null_cells(self):
        sets = (
            parse_set("[0,1/2)"),
            parse_set("([0,1/2) \\ {1/4}) u {3/4}"),
            parse_set("[1/2,1)"),
        )
        req = LambdaRequest(
            10, (Fraction(1, 4), Fraction(3, 4), Fraction(2)), sets, (True, False, True)
        )
        report = build_lambda(real_desc(), req)
        assert report.density == 338
        assert set(report.null_cells) == {RealSet.points(Fraction(1, 4)), RealSet.points(Fraction(3, 4))}
        assert report.piece_docks == (1, 1)
        assert report.traces == (169, 169, 169)
        assert report.docked_points == (1, 1, 1)
        assert report.null_points == (1, 1, 1)
        assert report.net_error == (Fraction(0), Fraction(0), Fraction(0))
        assert report.verdict.all_ok and report.identity_ok
        # required points are in the sample, including the one outside every set
        assert {Fraction(1, 4), Fraction(3, 4), Fraction(2)} <= set(report.lam)

    def test_leading_cells_sit_inside_pieces(self):
        sets = (HALVES[0], HALVES[1], parse_set("[1/4,3/4)"))
        req = LambdaRequest(10, (), sets, (True, True, False))
        report = build_lambda(real_desc(), req)
        h = len(report.subring_pieces)
        assert h == 2
        for s in range(h):
            assert report.positive_cells[s].is_subset(report.subring_pieces[s])

    def test_invariant_bounds(self):
        sets = (
            parse_set("[0,1/4) u [1/2,3/4)"),
            parse_set("[0,3/4) \\ {1/8}"),
            parse_set("{1/8, 7/8}"),
        )
        req = LambdaRequest(10, (Fraction(1, 8), Fraction(9, 5)), sets, (False, False, False))
        report = build_lambda(MeasureSpaceDesc(RealLineSpace()), req)
        k = 2
        assert report.density > report.alpha_bound * 21 * (k + 1) / report.c_min ** 2
        for quota in report.cell_quotas:
            assert quota > k
        for frac in report.cell_fracs:
            assert frac == 0
        for i in range(len(sets)):
            assert report.rounding_loss[i] < 1
            assert report.docked_points[i] <= k
            assert report.null_points[i] <= k
            assert -(k + 1) < report.net_error[i] <= k
        assert report.identity_ok
        assert report.verdict.all_ok

    def test_null_target_set_allowed(self):
        sets = (parse_set("{1/3}"), parse_set("[0,1)"))
        req = LambdaRequest(10, (), sets, (False, False))
        report = build_lambda(MeasureSpaceDesc(RealLineSpace()), req)
        # ratios are only required against the positive-measure target;
        # the null target never gets sampled, so its trace stays 0
        assert report.verdict.all_ok
        assert report.traces[0] == 0


class TestBuildOnOtherUniverses:
    def test_coin_universe(self):
        space = CoinTossSpace()
        gens = (cylinder([(1, "H")]), cylinder([(1, "T")]))
        req = LambdaRequest(
            10,
            (CoinOutcome("TH", "H"),),
            (cylinder([(1, "H")]), cylinder([(2, "H")])),
            (True, False),
        )
        report = build_lambda(MeasureSpaceDesc(space, gens), req)
        assert report.verdict.all_ok and report.identity_ok
        assert CoinOutcome("TH", "H") in report.lam

    def test_atom_universe(self):
        space = AtomSpace([Fraction(1, 3), Fraction(1, 6), Fraction(1, 2)])
        desc = MeasureSpaceDesc(space, (AtomSet([0]), AtomSet([1])))
        req = LambdaRequest(
            10, ((2, 0),), (AtomSet([0, 1]), AtomSet([0, 2])), (True, False)
        )
        report = build_lambda(desc, req)
        assert report.verdict.all_ok and report.identity_ok
        assert (2, 0) in report.lam

    def test_atom_universe_decimal_weights(self):
        space = AtomSpace(["0.3", "0.2"], mode="decimal")
        req = LambdaRequest(10, (), (AtomSet([0]), AtomSet([1])), (False, False))
        report = build_lambda(MeasureSpaceDesc(space), req)
        assert report.density == 267
        assert report.cell_fracs == (Fraction(1, 10), Fraction(2, 5))
        assert all(f < Fraction(1, 2) for f in report.cell_fracs)
        assert report.verdict.all_ok and report.identity_ok


class TestRequestValidation:
    def test_rejects_empty_target(self):
        with pytest.raises(ValueError):
            build_lambda(real_desc(), LambdaRequest(10, (), (RealSet(),), (False,)))

    def test_rejects_all_null_targets(self):
        req = LambdaRequest(10, (), (parse_set("{1}"), parse_set("{2}")), (False, False))
        with pytest.raises(ValueError):
            build_lambda(real_desc(), req)

    def test_rejects_bad_m(self):
        with pytest.raises(ValueError):
            LambdaRequest(0, (), (parse_set("[0,1)"),), (False,))

    def test_rejects_flag_without_generators(self):
        req = LambdaRequest(10, (), (parse_set("[0,1/2)"),), (True,))
        with pytest.raises(ValueError):
            build_lambda(MeasureSpaceDesc(RealLineSpace()), req)

    def test_rejects_set_that_splits_a_cell(self):
        req = LambdaRequest(10, (), (parse_set("[0,1/4)"),), (True,))
        with pytest.raises(ValueError):
            build_lambda(real_desc(), req)

    def test_rejects_set_outside_generators(self):
        req = LambdaRequest(10, (), (parse_set("[0,2)"),), (True,))
        with pytest.raises(ValueError):
            build_lambda(real_desc(), req)

    def test_degenerate_subring(self):
        gens = (parse_set("[0,1)"), parse_set("[0,1) \\ {0}"))
        desc = MeasureSpaceDesc(RealLineSpace(), gens)
        with pytest.raises(PartitionDegenerateError):
            desc.validate()
        req = LambdaRequest(10, (), (parse_set("[0,1)"),), (True,))
        with pytest.raises(PartitionDegenerateError):
            build_lambda(desc, req)


class TestVerifier:
    def _request(self):
        req = LambdaRequest(
            10, (Fraction(1, 8),), HALVES, (True, True)
        )
        return real_desc(), req

    def test_confirms_builder_output(self):
        desc, req = self._request()
        report = build_lambda(desc, req)
        verdict = verify_lambda(desc, req, report.lam)
        assert verdict == report.verdict
        assert verdict.all_ok

    def test_detects_missing_required_point(self):
        desc, req = self._request()
        report = build_lambda(desc, req)
        tampered = tuple(x for x in report.lam if x != Fraction(1, 8))
        verdict = verify_lambda(desc, req, tampered)
        assert not verdict.points_present
        assert not verdict.all_ok

    def test_detects_undersampled_cell(self):
        desc, req = self._request()
        report = build_lambda(desc, req)
        # drop one non-required point from the first cell: the two equal
        # measure subring targets now meet the sample unequally
        victim = next(
            x for x in report.lam
            if report.positive_cells[0].contains(x) and x != Fraction(1, 8)
        )
        tampered = tuple(x for x in report.lam if x != victim)
        verdict = verify_lambda(desc, req, tampered)
        assert not verdict.equal_traces
        assert not verdict.all_ok

    def test_ratio_failure_computed_by_hand(self):
        desc = MeasureSpaceDesc(RealLineSpace())
        sets = (parse_set("[0,1/4)"), parse_set("[0,3/4)"))
        req = LambdaRequest(100, (Fraction(1, 8),), sets, (False, False))
        lam = (Fraction(1, 8),)
        verdict = verify_lambda(desc, req, lam)
        # both traces are 1, so each ratio is exactly 1 while the measure
        # ratios are 1/3 and 3: both deviations miss by far more than 1/100
        dev = dict(((i, j), d) for i, j, d in verdict.deviations)
        assert dev[(0, 1)] == Fraction(2, 3)
        assert dev[(1, 0)] == 2
        assert not verdict.ratios_within
        assert not verdict.all_ok

    def test_zero_trace_denominator(self):
        desc = MeasureSpaceDesc(RealLineSpace())
        sets = (parse_set("[0,1/4)"), parse_set("[1/2,1)"))
        req = LambdaRequest(10, (), sets, (False, False))
        verdict = verify_lambda(desc, req, (Fraction(1, 8),))
        assert (0, 1, None) in verdict.deviations or (1, 1, None) in verdict.deviations
        assert not verdict.ratios_within

    def test_predicates(self):
        desc, req = self._request()
        report = build_lambda(desc, req)
        space = desc.space
        assert traces_equal(space, report.lam, HALVES[0], HALVES[1])
        assert ratio_within(space, report.lam, HALVES[0], HALVES[1], req.m)
        assert trace_count(space, report.lam, HALVES[0]) == report.traces[0]
        with pytest.raises(ValueError):
            ratio_within(space, report.lam, HALVES[0], RealSet.points(1), 10)


def test_build_is_deterministic():
    req = LambdaRequest(
        10, (Fraction(1, 3),), (parse_set("[0,1/2) u {3/2}"), parse_set("[1/2,1)")), (False, False)
    )
    first = build_lambda(MeasureSpaceDesc(RealLineSpace()), req)
    second = build_lambda(MeasureSpaceDesc(RealLineSpace()), req)
    assert first.lam == second.lam
    assert first == second


def test_m_one_is_allowed():
    req = LambdaRequest(1, (), HALVES, (True, True))
    report = build_lambda(real_desc(), req)
    assert report.verdict.all_ok
