import json
from fractions import Fraction

import numpy as np
import pytest

from meancert import (
    BoundsHypothesis,
    HypothesisViolated,
    RequiresOrdered,
    ScalarPair,
    SpdMatrix,
    WeightOrder,
    check_det_gap,
    check_det_half_weight_gap,
    check_det_power_order,
    check_det_root_gap,
    check_gap_ratio,
    check_half_weight_gap,
    check_hs_agh_chain,
    check_hs_gap_ratio,
    check_hs_half_weight_gap,
    check_inverse_convexity_gap,
    check_matrix_agh,
    check_matrix_gap_ratio,
    check_matrix_half_weight_gap,
    check_minkowski_products,
    check_one_sided_gap,
    check_power_difference,
    check_scalar_agh,
    check_spread_gap_cap,
    probe_gap_ratio_limits,
    probe_normalized_gap,
    spread_hypothesis_verdicts,
)
from meancert import means
from meancert.certifiers import CertificateReport
from meancert.sampling import SeedPath, SpectrumSpec, random_invertible, random_spd


def spd_pair(seed, n, lo=1e-1, hi=1e1):
    rng = SeedPath(seed, 0).rng()
    spec = SpectrumSpec(n, lo, hi)
    return random_spd(spec, rng), random_spd(spec, rng)


def test_report_invariant_requires_witness_on_failure():
    with pytest.raises(ValueError):
        CertificateReport("x", holds=False, margins={"m": -1.0}, tol_used=0.0)


class TestScalarAgh:
    def test_equality_case(self):
        rep = check_scalar_agh(ScalarPair(1.0, 1.0), 0.3)
        assert rep.holds and rep.verdict == "pass"
        assert rep.margins["geo_minus_harm"] == pytest.approx(0.0, abs=1e-15)
        assert rep.margins["arith_minus_geo"] == pytest.approx(0.0, abs=1e-15)

    def test_frozen_values(self):
        rep = check_scalar_agh(ScalarPair(1.0, 2.0), 0.5)
        assert rep.margins["geo_minus_harm"] == pytest.approx(np.sqrt(2) - 4.0 / 3.0)
        assert rep.margins["arith_minus_geo"] == pytest.approx(1.5 - np.sqrt(2))

    def test_symmetric_at_half(self):
        r1 = check_scalar_agh(ScalarPair(4.0, 1.0), 0.5)
        r2 = check_scalar_agh(ScalarPair(1.0, 4.0), 0.5)
        for key in r1.margins:
            assert r1.margins[key] == pytest.approx(r2.margins[key])


class TestMatrixAgh:
    def test_idempotent_zero_margins(self):
        a, _ = spd_pair(1, 3)
        rep = check_matrix_agh(a, a, 0.7)
        assert rep.holds
        for m in rep.margins.values():
            assert abs(m) <= rep.tol_used

    def test_diagonal_matches_scalar(self):
        a = SpdMatrix(np.diag([1.0, 2.0]))
        b = SpdMatrix(np.diag([2.0, 1.0]))
        rep = check_matrix_agh(a, b, 0.5)
        # both entries are the (1,2) pair at v=1/2
        assert rep.margins["geo_minus_harm"] == pytest.approx(np.sqrt(2) - 4 / 3, abs=1e-12)
        assert rep.margins["arith_minus_geo"] == pytest.approx(1.5 - np.sqrt(2), abs=1e-12)

    def test_random_holds(self):
        a, b = spd_pair(2, 4)
        assert check_matrix_agh(a, b, 0.3).holds


class TestGapRatio:
    def test_frozen_margins(self):
        rep = check_gap_ratio(ScalarPair(1.0, 2.0), 0.25, 0.5, 1.0)
        assert rep.holds
        assert rep.margins["above_lower"] == pytest.approx(0.4)
        assert rep.margins["below_upper"] == pytest.approx(0.6)

    def test_squared_power_stays_inside(self):
        num = Fraction(7, 4) ** 2 - Fraction(8, 5) ** 2
        den = Fraction(3, 2) ** 2 - Fraction(4, 3) ** 2
        expected = float(num / den)
        rep = check_gap_ratio(ScalarPair(1.0, 2.0), 0.25, 0.5, 2.0)
        # bounds are the squares of the linear-case bounds: (0.25, 2.25)
        assert rep.margins["above_lower"] == pytest.approx(expected - 0.25)
        assert rep.margins["below_upper"] == pytest.approx(2.25 - expected)

    def test_degenerate_pair(self):
        rep = check_gap_ratio(ScalarPair(1.0, 1.0), 0.25, 0.5, 1.0)
        assert rep.degenerate and rep.verdict == "degenerate"

    def test_weight_order_enforced(self):
        with pytest.raises(WeightOrder):
            check_gap_ratio(ScalarPair(1.0, 2.0), 0.5, 0.25, 1.0)

    def test_strictness_away_from_degeneracy(self):
        rng = np.random.default_rng(44)
        for _ in range(300):
            a = float(np.exp(rng.uniform(-2, 2)))
            b = a * float(np.exp(rng.uniform(np.log(1.2), np.log(10))))
            v = rng.uniform(0.1, 0.85)
            tau = rng.uniform(v + 0.05, 0.9)
            rep = check_gap_ratio(ScalarPair(a, b), v, tau, float(rng.uniform(1, 3)))
            assert rep.margins["above_lower"] > 1e-6
            assert rep.margins["below_upper"] > 1e-6


class TestGapRatioLimitsProbe:
    def test_limits_approached(self):
        rep = probe_gap_ratio_limits(0.25, 0.5, 1.0, 1.0, (1e-2, 1e-4, 1e-6, 1e-8))
        assert rep.holds
        # at eps=1e-8 the ratio is within 1e-6 of the bound 1.5 (and 0.5)
        assert rep.margins["small_a_gap[1e-08]"] <= 1e-6 * 1.5
        assert rep.margins["large_a_gap[1e-08]"] <= 1e-6 * 0.5
        assert rep.margins["small_a_monotone"] >= 0.0
        assert rep.margins["large_a_monotone"] >= 0.0

    def test_squared_limits(self):
        rep = probe_gap_ratio_limits(0.25, 0.5, 2.0, 1.0, (1e-6,))
        r_small = means.gap_power_ratio(0.25, 0.5, 2.0, ScalarPair(1e-6, 1.0))
        assert r_small == pytest.approx(2.25, rel=1e-4)
        assert rep.margins["small_a_gap[1e-06]"] == pytest.approx(abs(r_small - 2.25))

    def test_underflow_guard(self):
        with pytest.raises(ValueError):
            probe_gap_ratio_limits(0.25, 0.5, 1.0, 1.0, (1e-13,))


class TestHalfWeightGap:
    def test_balanced_weight_zero_margins(self):
        rep = check_half_weight_gap(ScalarPair(1.0, 2.0), 0.5)
        for m in rep.margins.values():
            assert m == pytest.approx(0.0, abs=1e-14)

    def test_frozen_linear(self):
        rep = check_half_weight_gap(ScalarPair(1.0, 2.0), 0.25)
        assert rep.margins["above_lower"] == pytest.approx(0.15 - 0.5 / 6)
        assert rep.margins["below_upper"] == pytest.approx(1.5 / 6 - 0.15)

    def test_frozen_squared(self):
        base = 2.25 - 16.0 / 9.0
        mid = 1.75**2 - 1.6**2
        rep = check_half_weight_gap(ScalarPair(1.0, 2.0), 0.25, squared=True)
        assert rep.margins["above_lower"] == pytest.approx(mid - 0.25 * base)
        assert rep.margins["below_upper"] == pytest.approx(2.25 * base - mid)

    def test_heavy_weight_side(self):
        # min/max factors swap above v = 1/2
        rep = check_half_weight_gap(ScalarPair(1.0, 2.0), 0.75)
        assert rep.holds


class TestInverseConvexityGap:
    def test_frozen_values(self):
        rep = check_inverse_convexity_gap(ScalarPair(1.0, 2.0), 0.5)
        mid = 0.5 + 0.25 - 1 / 1.5
        assert mid == pytest.approx(1.0 / 12)
        assert rep.margins["above_lower"] == pytest.approx(mid - 1.0 / 32)
        assert rep.margins["below_upper"] == pytest.approx(0.25 - mid)

    def test_requires_ordered(self):
        with pytest.raises(RequiresOrdered):
            check_inverse_convexity_gap(ScalarPair(2.0, 1.0), 0.5)

    def test_near_equal_degenerate(self):
        rep = check_inverse_convexity_gap(ScalarPair(1.0, 1.0 + 1e-10), 0.5)
        assert rep.degenerate

    def test_small_weight_vanishes(self):
        rep = check_inverse_convexity_gap(ScalarPair(1.0, 2.0), 1e-9)
        assert rep.holds
        assert rep.margins["below_upper"] == pytest.approx(0.0, abs=1e-8)


class TestOneSidedGap:
    def test_frozen_values(self):
        rep = check_one_sided_gap(ScalarPair(1.0, 2.0), 0.5)
        assert rep.holds
        assert rep.margins["above_lower"] == pytest.approx(1.0 / 6 - 0.0625)
        assert rep.margins["below_upper"] == pytest.approx(0.5 - 1.0 / 6)

    def test_weight_near_one_vanishes(self):
        rep = check_one_sided_gap(ScalarPair(1.0, 2.0), 1 - 1e-9)
        assert rep.holds
        for m in rep.margins.values():
            assert abs(m) <= 1e-8

    def test_near_degenerate_skipped(self):
        assert check_one_sided_gap(ScalarPair(1.0, 1.0 + 1e-9), 0.5).degenerate

    def test_requires_ordered(self):
        with pytest.raises(RequiresOrdered):
            check_one_sided_gap(ScalarPair(2.0, 1.0), 0.5)


class TestNormalizedGapProbe:
    def test_factor_limit(self):
        rep = probe_normalized_gap(0.5, (1 + 1e-6, 1 + 1e-4, 2.0))
        assert rep.holds
        assert rep.margins["gap[1.000001]"] <= 1e-5

    def test_sandwich_frozen(self):
        rep = probe_normalized_gap(0.3, (2.0, 10.0))
        g2 = means.normalized_gap(0.3, 2.0)
        assert g2 == pytest.approx(0.21 / 1.3)
        assert rep.margins["below_factor[2.0]"] == pytest.approx(0.21 - g2)
        assert rep.margins["above_scaled[2.0]"] == pytest.approx(g2 - 0.105)
        assert rep.holds

    def test_rejects_t_at_most_one(self):
        with pytest.raises(ValueError):
            probe_normalized_gap(0.5, (1.0,))


class TestMatrixGapRatio:
    def test_equal_weights_zero_margins(self):
        a, b = spd_pair(3, 4)
        rep = check_matrix_gap_ratio(a, b, 0.4, 0.4)
        for m in rep.margins.values():
            assert m == pytest.approx(0.0, abs=1e-12)

    def test_diagonal_reduces_to_scalar(self):
        a = SpdMatrix(np.diag([1.0, 3.0]))
        b = SpdMatrix(np.diag([2.0, 0.5]))
        v, tau = 0.2, 0.6
        rep = check_matrix_gap_ratio(a, b, v, tau)
        lows, ups = [], []
        for ai, bi in [(1.0, 2.0), (3.0, 0.5)]:
            pair = ScalarPair(ai, bi)
            dv = means.scalar_arith(v, pair) - means.scalar_harm(v, pair)
            dt = means.scalar_arith(tau, pair) - means.scalar_harm(tau, pair)
            lows.append(dv - (v / tau) * dt)
            ups.append((1 - v) / (1 - tau) * dt - dv)
        assert rep.margins["above_lower"] == pytest.approx(min(lows), abs=1e-12)
        assert rep.margins["below_upper"] == pytest.approx(min(ups), abs=1e-12)

    def test_seeded_5x5_holds(self):
        a, b = spd_pair(9, 5)
        assert check_matrix_gap_ratio(a, b, 0.2, 0.6).holds

    def test_weight_order(self):
        a, b = spd_pair(10, 2)
        with pytest.raises(WeightOrder):
            check_matrix_gap_ratio(a, b, 0.7, 0.3)

    def test_verdict_invariant_under_congruence(self):
        # conjugating both operands rescales margins but not the verdict
        rng = np.random.default_rng(61)
        for k in range(20):
            n = int(rng.integers(2, 6))
            a, b = spd_pair(100 + k, n)
            rep = check_matrix_gap_ratio(a, b, 0.3, 0.7)
            c = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            ca = SpdMatrix(c @ a.mat @ c.conj().T)
            cb = SpdMatrix(c @ b.mat @ c.conj().T)
            scale = float(np.linalg.norm(c)) ** 2
            rep_c = check_matrix_gap_ratio(ca, cb, 0.3, 0.7, tol_scale=scale)
            assert rep.verdict == rep_c.verdict == "pass"


class TestMatrixHalfWeightGap:
    def test_half_weight_zero_margins(self):
        a, b = spd_pair(11, 3)
        rep = check_matrix_half_weight_gap(a, b, 0.5)
        assert rep.inequality_id == "matrix_half_weight_gap"
        for m in rep.margins.values():
            assert m == pytest.approx(0.0, abs=1e-12)

    def test_scaled_identity_scalar_reduction(self):
        eye = SpdMatrix(np.eye(2))
        two = SpdMatrix(2 * np.eye(2))
        rep = check_matrix_half_weight_gap(eye, two, 0.25)
        assert rep.margins["above_lower"] == pytest.approx(0.15 - 1.0 / 12, abs=1e-12)
        assert rep.margins["below_upper"] == pytest.approx(0.25 - 0.15, abs=1e-12)

    def test_rejects_large_weight(self):
        a, b = spd_pair(12, 2)
        with pytest.raises(ValueError):
            check_matrix_half_weight_gap(a, b, 0.6)


class TestSpreadGapCap:
    def test_equal_operands(self):
        a, _ = spd_pair(13, 3, 1.0, 2.0)
        rep = check_spread_gap_cap(a, a, 0.5, BoundsHypothesis(0.05, 25.0))
        assert rep.holds

    def test_frozen_scaled_identity(self):
        eye = SpdMatrix(np.eye(2))
        two = SpdMatrix(2 * np.eye(2))
        rep = check_spread_gap_cap(eye, two, 0.5, BoundsHypothesis(1.0, 2.0))
        # cap 0.25*(1-2)^2*2I = 0.5I against gap (1.5 - 4/3)I
        assert rep.margins["cap_minus_gap"] == pytest.approx(0.5 - 1.0 / 6, abs=1e-12)

    def test_diagonal_pair(self):
        a = SpdMatrix(np.diag([1.0, 1.0]))
        b = SpdMatrix(np.diag([1.0, 2.0]))
        rep = check_spread_gap_cap(a, b, 0.5, BoundsHypothesis(1.0, 2.0))
        assert rep.holds
        assert rep.margins["cap_minus_gap"] == pytest.approx(0.25, abs=1e-12)

    def test_hypothesis_violation_named(self):
        eye = SpdMatrix(np.eye(2))
        two = SpdMatrix(2 * np.eye(2))
        with pytest.raises(HypothesisViolated) as err:
            check_spread_gap_cap(two, eye, 0.5, BoundsHypothesis(0.5, 3.0))
        assert err.value.check_name == "first_leq_second"

    def test_verdicts_helper_at_zero_tol(self):
        eye = SpdMatrix(np.eye(2))
        two = SpdMatrix(2 * np.eye(2))
        verdicts = spread_hypothesis_verdicts(eye, two, BoundsHypothesis(1.0, 2.0), tol=0.0)
        assert len(verdicts) == 4 and all(v.holds for v in verdicts.values())

    def test_bounds_validation(self):
        with pytest.raises(ValueError):
            BoundsHypothesis(0.0, 1.0)
        with pytest.raises(ValueError):
            BoundsHypothesis(2.0, 1.0)


class TestHsGapRatio:
    def test_equal_weights_zero_margins(self):
        a, b = spd_pair(14, 3)
        x = random_invertible(3, 10.0, SeedPath(14, 1).rng())
        rep = check_hs_gap_ratio(a, b, x, 0.3, 0.3)
        assert rep.margins["above_lower"] == pytest.approx(1 - 1, abs=1e-12)
        assert rep.margins["below_upper"] == pytest.approx(0.0, abs=1e-12)

    def test_scalar_diagonal_value(self):
        a = SpdMatrix(np.diag([1.0]))
        b = SpdMatrix(np.diag([2.0]))
        rep = check_hs_gap_ratio(a, b, np.eye(1), 0.25, 0.5)
        expected = (1.75**2 - 1.6**2) / (2.25 - (4.0 / 3.0) ** 2)
        assert rep.margins["above_lower"] == pytest.approx(expected - 0.25)
        assert rep.margins["below_upper"] == pytest.approx(2.25 - expected)

    def test_seeded_holds(self):
        a, b = spd_pair(15, 3)
        x = random_invertible(3, 1e2, SeedPath(15, 1).rng())
        assert check_hs_gap_ratio(a, b, x, 0.2, 0.7).holds

    def test_degenerate_denominator(self):
        eye = SpdMatrix(np.eye(2))
        rep = check_hs_gap_ratio(eye, eye, np.eye(2), 0.2, 0.5)
        assert rep.degenerate


class TestHsAghChain:
    def test_identity_operands(self):
        eye = SpdMatrix(np.eye(2))
        x = np.array([[1.0, 2.0], [0.5, 3.0]])
        rep = check_hs_agh_chain(eye, eye, x, 0.4)
        for m in rep.margins.values():
            assert m == pytest.approx(0.0, abs=1e-12)

    def test_diagonal_scalar_chain(self):
        a = SpdMatrix(np.diag([1.0, 3.0]))
        b = SpdMatrix(np.diag([2.0, 0.5]))
        v = 0.3
        rep = check_hs_agh_chain(a, b, np.eye(2), v)
        sq = lambda f: sum(
            f(v, ScalarPair(ai, bi)) ** 2 for ai, bi in [(1.0, 2.0), (3.0, 0.5)]
        )
        assert rep.margins["arith_minus_geo"] == pytest.approx(
            sq(means.scalar_arith) - sq(means.scalar_geo), abs=1e-10
        )
        assert rep.margins["geo_minus_harm"] == pytest.approx(
            sq(means.scalar_geo) - sq(means.scalar_harm), abs=1e-10
        )

    def test_seeded_holds(self):
        a, b = spd_pair(16, 4)
        x = random_invertible(4, 1e2, SeedPath(16, 1).rng())
        assert check_hs_agh_chain(a, b, x, 0.6).holds


class TestHsHalfWeightGap:
    def test_balanced_zero_margins(self):
        a, b = spd_pair(17, 3)
        x = random_invertible(3, 10.0, SeedPath(17, 1).rng())
        rep = check_hs_half_weight_gap(a, b, x, 0.5)
        for m in rep.margins.values():
            assert m == pytest.approx(0.0, abs=rep.tol_used)

    def test_scalar_diagonal_reduces_to_squared_form(self):
        a = SpdMatrix(np.diag([1.0]))
        b = SpdMatrix(np.diag([2.0]))
        rep = check_hs_half_weight_gap(a, b, np.eye(1), 0.25)
        d_half = 2.25 - (4.0 / 3.0) ** 2
        d_v = 1.75**2 - 1.6**2
        assert rep.margins["above_lower"] == pytest.approx(d_v - 0.25 * d_half)
        assert rep.margins["below_upper"] == pytest.approx(2.25 * d_half - d_v)

    def test_seeded_holds(self):
        a, b = spd_pair(18, 5)
        x = random_invertible(5, 1e2, SeedPath(18, 1).rng())
        assert check_hs_half_weight_gap(a, b, x, 0.2).holds


class TestDeterminantChecks:
    def test_power_order_equal_operands(self):
        a, _ = spd_pair(19, 3)
        rep = check_det_power_order(a, a, 0.3, 2.0)
        assert rep.holds
        assert rep.margins["det_power_gap"] == pytest.approx(0.0, abs=rep.tol_used)

    def test_power_order_frozen(self):
        eye = SpdMatrix(np.eye(2))
        two = SpdMatrix(np.diag([2.0, 2.0]))
        rep = check_det_power_order(eye, two, 0.5, 1.0)
        assert rep.margins["det_power_gap"] == pytest.approx(2.25 - 16.0 / 9.0)

    def test_power_order_large_power_holds(self):
        a, b = spd_pair(20, 4)
        assert check_det_power_order(a, b, 0.4, 3.0).holds

    def test_minkowski_equality(self):
        rep = check_minkowski_products([1.0, 1.0], [1.0, 1.0])
        assert rep.holds
        assert rep.margins["minkowski_gap"] == pytest.approx(0.0, abs=1e-14)
        assert rep.margins["equality_observed"] == 1.0

    def test_minkowski_frozen(self):
        rep = check_minkowski_products([1.0, 4.0], [4.0, 1.0])
        assert rep.margins["minkowski_gap"] == pytest.approx(1.0)
        assert rep.margins["equality_observed"] == 0.0

    def test_minkowski_proportional_vectors(self):
        rep = check_minkowski_products([2.0, 2.0], [3.0, 3.0])
        assert rep.margins["minkowski_gap"] == pytest.approx(0.0, abs=1e-14)
        assert rep.margins["equality_observed"] == 1.0

    def test_power_difference_linear_is_tight(self):
        rep = check_power_difference(3.0, 1.0, 1.0)
        assert rep.margins["power_gap"] == pytest.approx(0.0, abs=1e-15)

    def test_power_difference_frozen(self):
        assert check_power_difference(3.0, 1.0, 2.0).margins["power_gap"] == pytest.approx(4.0)
        assert check_power_difference(2.0, 1.0, 3.0).margins["power_gap"] == pytest.approx(6.0)

    def test_power_difference_requires_order(self):
        with pytest.raises(RequiresOrdered):
            check_power_difference(1.0, 3.0, 2.0)

    def test_det_root_gap_degenerate_on_equal(self):
        a, _ = spd_pair(21, 3)
        assert check_det_root_gap(a, a, 0.25, 0.5, 1.0).degenerate

    def test_det_root_gap_frozen_diagonal(self):
        eye = SpdMatrix(np.eye(2))
        two = SpdMatrix(np.diag([2.0, 2.0]))
        rep = check_det_root_gap(eye, two, 0.25, 0.5, 1.0)
        assert rep.holds
        assert rep.margins["det_root_gap"] == pytest.approx(1.75 - 1.6 - 0.5 / 6, abs=1e-12)

    def test_det_root_gap_seeded(self):
        a, b = spd_pair(22, 3)
        assert check_det_root_gap(a, b, 0.2, 0.6, 2.0).holds

    def test_det_gap_equal_operands(self):
        a, _ = spd_pair(23, 3)
        rep = check_det_gap(a, a, 0.25, 0.5)
        assert rep.holds
        assert rep.margins["det_gap"] == pytest.approx(0.0, abs=rep.tol_used)

    def test_det_gap_frozen_diagonal(self):
        eye = SpdMatrix(np.eye(2))
        two = SpdMatrix(np.diag([2.0, 2.0]))
        rep = check_det_gap(eye, two, 0.25, 0.5)
        expected = 1.75**2 - 1.6**2 - 0.25 * (1.0 / 6) ** 2
        assert rep.margins["det_gap"] == pytest.approx(expected, abs=1e-12)

    def test_det_half_weight_reduces_at_half(self):
        a, b = spd_pair(24, 3)
        r1 = check_det_half_weight_gap(a, b, 0.5)
        r2 = check_det_gap(a, b, 0.5, 0.5)
        assert r1.margins["det_gap"] == pytest.approx(r2.margins["det_gap"], rel=1e-12)

    def test_det_half_weight_zero_weight(self):
        a, b = spd_pair(25, 4)
        rep = check_det_half_weight_gap(a, b, 0.0)
        assert rep.holds
        assert rep.margins["det_gap"] == pytest.approx(0.0, abs=rep.tol_used)

    def test_det_half_weight_rejects_large_weight(self):
        a, b = spd_pair(26, 2)
        with pytest.raises(ValueError):
            check_det_half_weight_gap(a, b, 0.7)


class TestWitnesses:
    def test_corrupted_mean_fails_with_witness(self, monkeypatch):
        # replacing the harmonic mean by the arithmetic one must break the
        # chain and produce a serializable witness
        monkeypatch.setattr(means, "mat_harm", means.mat_arith)
        a, b = spd_pair(27, 3)
        rep = check_matrix_agh(a, b, 0.4)
        assert not rep.holds and rep.verdict == "fail"
        assert rep.witness is not None
        payload = json.dumps(rep.witness)
        parsed = json.loads(payload)
        assert parsed["v"] == 0.4
        # matrices serialize as nested [re, im] pairs
        entry = parsed["A"][0][0]
        assert isinstance(entry, list) and len(entry) == 2

    def test_witness_roundtrip_reconstructs_matrix(self, monkeypatch):
        monkeypatch.setattr(means, "mat_harm", means.mat_arith)
        a, b = spd_pair(28, 2)
        rep = check_matrix_agh(a, b, 0.3)
        assert rep.witness is not None
        raw = np.array(rep.witness["A"])
        rebuilt = raw[..., 0] + 1j * raw[..., 1]
        np.testing.assert_array_equal(rebuilt, a.mat)
