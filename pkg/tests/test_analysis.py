"""Verification scans: grids, certificates, classifications, probes."""
from fractions import Fraction

import pytest

from necklaces.analysis import (
    ProbeExhausted,
    RationalGrid,
    classify_degree_monotonicity,
    default_grid,
    negative_dip_probe,
    negative_dip_scan,
    ratio_limit_check,
    scan_bounds,
    scan_bracket_normalized,
    scan_derivative_positive,
    scan_log_convexity,
    scan_normalized_increasing,
    scan_positive,
    scan_shift_and_dominant,
    verify_delta_factorizations,
)
from necklaces.necklace import necklace_eval_exact, necklace_eval_int, shared_family
from necklaces.numtheory import euler_phi
from necklaces.reports import ScanReport


class TestRationalGrid:
    def test_points_capped_and_sorted(self):
        g = RationalGrid(1, 2, Fraction(1, 2), (Fraction(9, 8),))
        assert g.points() == [1, Fraction(9, 8), Fraction(3, 2), 2]

    def test_rejects_bad_step(self):
        with pytest.raises(ValueError):
            RationalGrid(1, 2, 0)

    def test_rejects_empty_range(self):
        with pytest.raises(ValueError):
            RationalGrid(3, 2, 1)

    def test_default_grid_probes_thresholds(self):
        pts = default_grid().points()
        assert Fraction(1) + Fraction(1, 1024) in pts
        assert Fraction(8) in pts and Fraction(8) + Fraction(1, 1024) in pts

    def test_deduplication(self):
        g = RationalGrid(1, 3, 1, (2, 3))
        assert g.points() == [1, 2, 3]


class TestScanPositive:
    def test_family_positive_above_one(self):
        report = scan_positive((2, 40), default_grid())
        assert report.passed

    def test_point_below_one_excluded(self):
        # value at 1 is 0 for n >= 2; the strict scan must not flag it
        grid = RationalGrid(1, 2, Fraction(1, 2))
        report = scan_positive((2, 5), grid)
        assert report.passed
        assert "x > 1" in report.parameters

    def test_sample_value(self):
        assert necklace_eval_exact(2, Fraction(3, 2)) == Fraction(3, 8)

    def test_witness_machinery(self):
        from necklaces.reports import ReportBuilder

        b = ReportBuilder("demo", "params")
        assert b.check(True, "n=1", "ok")
        assert not b.check(False, "n=2, x=1/2", "M_n(x) > 0", "-1/8")
        report = b.build()
        assert not report.passed
        assert report.samples_checked == 2
        assert report.witnesses[0].location == "n=2, x=1/2"
        assert report.witnesses[0].actual == "-1/8"


class TestScanNormalizedIncreasing:
    def test_full_range(self):
        report = scan_normalized_increasing((2, 40), default_grid())
        assert report.passed

    def test_needs_grid_from_one(self):
        with pytest.raises(ValueError):
            scan_normalized_increasing((2, 5), RationalGrid(Fraction(1, 2), 2, Fraction(1, 4)))

    def test_pair_from_one_is_non_strict(self):
        # from x=1 the ratio climbs off zero; treated as non-strict boundary
        report = scan_normalized_increasing((2, 3), RationalGrid(1, 2, 1))
        assert report.passed


class TestScanBracketNormalized:
    def test_constant_case(self):
        report = scan_bracket_normalized(4, 3, default_grid())
        assert report.passed  # (4)_3/4 = 6, exact monomial

    def test_boundary_is_increasing_case(self):
        report = scan_bracket_normalized(6, 3, default_grid())
        assert report.passed

    def test_order_zero_reduces_to_normalized(self):
        report = scan_bracket_normalized(12, 0, default_grid())
        assert report.passed

    def test_above_degree_gives_zero_constant(self):
        report = scan_bracket_normalized(3, 5, default_grid())
        assert report.passed


class TestScanDerivativePositive:
    def test_moderate_range(self):
        report = scan_derivative_positive((1, 25), (1, 25), RationalGrid(1, 10, Fraction(1, 8)))
        assert report.passed

    def test_first_derivative_at_one(self):
        for n in range(2, 30):
            der = shared_family().poly(n).derivative()
            assert der(1) == Fraction(euler_phi(n), n)


class TestShiftAndDominant:
    def test_scan_passes(self):
        report = scan_shift_and_dominant(RationalGrid(2, 10, Fraction(1, 2)), n_max=40)
        assert report.passed

    def test_shift_example(self):
        assert necklace_eval_int(5, 3) == 48
        assert necklace_eval_int(5, 2) == 6

    def test_deterministic(self):
        grid = RationalGrid(2, 6, Fraction(1, 2))
        a = scan_shift_and_dominant(grid, n_max=10, trials=5, seed=99)
        b = scan_shift_and_dominant(grid, n_max=10, trials=5, seed=99)
        assert a == b

    def test_requires_grid_from_two(self):
        with pytest.raises(ValueError):
            scan_shift_and_dominant(RationalGrid(1, 5, 1))


class TestDegreeMonotonicity:
    def test_exception_at_five_halves(self):
        assert necklace_eval_exact(2, Fraction(5, 2)) == Fraction(15, 8)
        report = classify_degree_monotonicity(Fraction(5, 2), 30)
        assert report.passed  # exception occurs exactly where predicted

    def test_equality_at_three(self):
        assert necklace_eval_int(2, 3) == necklace_eval_int(1, 3) == 3
        assert classify_degree_monotonicity(3, 30).passed

    def test_strict_growth_at_four(self):
        assert classify_degree_monotonicity(4, 30).passed

    @pytest.mark.parametrize("x", [2, Fraction(9, 4), Fraction(5, 2), Fraction(11, 4), 3])
    def test_exception_set_is_exact(self, x):
        assert classify_degree_monotonicity(x, 30).passed

    def test_rejects_small_x(self):
        with pytest.raises(ValueError):
            classify_degree_monotonicity(Fraction(3, 2), 10)


class TestRatioLimit:
    def test_exact_ratio_at_small_n(self):
        # ratio at n=4, x=2 is 6/3 = 2 exactly
        assert necklace_eval_int(5, 2) == 6 and necklace_eval_int(4, 2) == 3

    def test_x_two(self):
        assert ratio_limit_check(2, 60).passed

    def test_x_three_at_eight(self):
        assert necklace_eval_int(9, 3) == 2184 and necklace_eval_int(8, 3) == 810
        assert ratio_limit_check(3, 60).passed

    def test_deviation_small_at_forty(self):
        dev = abs(Fraction(necklace_eval_int(41, 2), necklace_eval_int(40, 2)) - 2)
        assert dev < Fraction(6, 100)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            ratio_limit_check(Fraction(3, 2), 20)
        with pytest.raises(ValueError):
            ratio_limit_check(2, 5)


class TestLogConvexity:
    def grid(self):
        return RationalGrid(2, 12, Fraction(1, 2), (Fraction(8) - Fraction(1, 1024), Fraction(8) + Fraction(1, 1024),))

    def test_scan_passes(self):
        report = scan_log_convexity(self.grid(), 25)
        assert report.passed
        assert "thresholds" in report.parameters

    def test_gap_positive_above_eight(self):
        fam = shared_family()
        for n in range(2, 26):
            assert fam.delta_eval(n, 9) > 0

    def test_sharpness_at_eight(self):
        fam = shared_family()
        assert fam.delta_eval(3, 8) == 0
        assert fam.delta_eval(3, 7) < 0

    def test_eventual_thresholds_exist_below_eight(self):
        report = scan_log_convexity(RationalGrid(4, 7, 1), 25)
        assert report.passed

    def test_rejects_grid_below_two(self):
        with pytest.raises(ValueError):
            scan_log_convexity(RationalGrid(1, 9, 1), 10)


class TestNegativeDip:
    def test_degree_two_value(self):
        assert necklace_eval_exact(2, Fraction(1, 2)) == Fraction(-1, 8)

    def test_degree_three_probe(self):
        x = negative_dip_probe(3)
        assert x == Fraction(7, 8)
        assert necklace_eval_exact(3, x) == Fraction(343 - 448, 1536)

    def test_degree_four_within_depth(self):
        x = negative_dip_probe(4)
        assert 0 < x < 1 and 1 - x >= Fraction(1, 2**10)

    def test_all_small_degrees(self):
        for n in range(2, 31):
            x = negative_dip_probe(n)
            assert 0 < x < 1
            assert necklace_eval_exact(n, x) < 0

    def test_scan_wrapper(self):
        assert negative_dip_scan((2, 30)).passed

    def test_rejects_degree_one(self):
        with pytest.raises(ValueError):
            negative_dip_probe(1)

    def test_probe_exhaustion_reports_deepest(self):
        with pytest.raises(ProbeExhausted) as exc:
            negative_dip_probe(2, max_exponent=2)  # no probes at all below j=3
        assert exc.value.deepest == 0


class TestBounds:
    def test_scan_passes(self):
        report = scan_bounds((2, 40), RationalGrid(2, 10, Fraction(1, 2)))
        assert report.passed

    def test_rejects_low_grid(self):
        with pytest.raises(ValueError):
            scan_bounds((2, 10), RationalGrid(1, 5, 1))


class TestDeltaFactorizations:
    def test_suite(self):
        report = verify_delta_factorizations()
        assert report.passed
        assert report.samples_checked == 8  # six expansions plus two anchors


class TestReportMechanics:
    def test_reports_are_deterministic(self):
        a = scan_positive((2, 10), default_grid())
        b = scan_positive((2, 10), default_grid())
        assert a == b

    def test_combine_merges(self):
        a = scan_positive((2, 3), default_grid())
        b = scan_positive((4, 5), default_grid())
        merged = ScanReport.combine("both", "n in [2, 5]", [a, b])
        assert merged.samples_checked == a.samples_checked + b.samples_checked
        assert merged.passed

    def test_to_dict_schema(self):
        payload = scan_positive((2, 3), default_grid()).to_dict()
        assert set(payload) == {"check", "params", "passed", "witnesses", "samples"}
