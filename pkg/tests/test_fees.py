import math

import pytest
from hypothesis import given, strategies as st

from feelab import (
    ConstantFee,
    CustomFee,
    DomainError,
    LinearFee,
    PriceRatioFee,
    RangeError,
    ZeroILFee,
    find_root,
    parse_fee,
    split_factor,
    zero_il_alpha_of_t,
    zero_il_target_k,
)


class TestFeeFactorEvaluation:
    def test_constant_rule(self):
        assert ConstantFee(0.003).fee_factor(12345.0) == 0.003

    def test_linear_rule_at_reference(self):
        assert LinearFee(0.003, 1e4).fee_factor(1e4) == pytest.approx(0.003, rel=1e-12)

    def test_zero_il_at_ten_percent_trade(self):
        # k = k0*(1.1)^2/1.2 corresponds to trade fraction 0.1, where the
        # factor is 0.2/1.2.
        phi = ZeroILFee(1e4).fee_factor(1e4 * 1.21 / 1.2)
        assert phi == pytest.approx(0.1666667, abs=1e-6)

    def test_constant_rule_validation(self):
        with pytest.raises(RangeError):
            ConstantFee(1.0)
        with pytest.raises(RangeError):
            ConstantFee(-0.1)

    def test_linear_rule_range_error_far_from_reference(self):
        with pytest.raises(RangeError):
            LinearFee(0.003, 1e4).fee_factor(1e4 / 0.003 * 1.5)

    def test_zero_il_below_reference_is_error(self):
        with pytest.raises(DomainError):
            ZeroILFee(1e4).fee_factor(1e4 * (1 - 1e-6))

    def test_zero_il_round_off_band_below_reference(self):
        # A few ulps below the reference (as produced by discrete reserve
        # updates) evaluates as the reference itself.
        assert ZeroILFee(1e4).fee_factor(1e4 * (1 - 1e-13)) == 0.0

    def test_zero_il_exactly_zero_at_reference(self):
        assert ZeroILFee(1e4).fee_factor(1e4) == 0.0

    def test_bad_invariant_argument(self):
        with pytest.raises(DomainError):
            ConstantFee(0.003).fee_factor(0.0)
        with pytest.raises(DomainError):
            ConstantFee(0.003).fee_factor(float("nan"))

    def test_price_ratio_has_no_invariant_form(self):
        with pytest.raises(DomainError):
            PriceRatioFee(0.003).fee_factor(1e4)

    def test_price_ratio_clamp(self):
        assert PriceRatioFee(0.003).combined_factor(1.0, 1000.0) == 0.999

    def test_custom_rule_range_guard(self):
        with pytest.raises(RangeError):
            CustomFee(lambda k: 1.5).fee_factor(1e4)


class TestZeroIlAlphaOfT:
    def test_no_deviation(self):
        assert zero_il_alpha_of_t(1.0) == 0.0

    def test_ten_percent_point(self):
        # Forward map at alpha = 0.1 gives t = 1.21/1.2; inverting must
        # recover 0.1.
        assert zero_il_alpha_of_t(1.21 / 1.2) == pytest.approx(0.1, abs=1e-9)

    def test_one_percent_target(self):
        alpha = zero_il_alpha_of_t(1.01)
        assert alpha == pytest.approx(0.110499, abs=1e-6)
        # substitute back into the forward map
        assert (1 + alpha) ** 2 / (1 + 2 * alpha) == pytest.approx(1.01, rel=1e-12)

    def test_below_one_is_error(self):
        with pytest.raises(DomainError):
            zero_il_alpha_of_t(0.999)

    @given(alpha=st.floats(min_value=0.01, max_value=10.0))
    def test_round_trip(self, alpha):
        # Tiny alphas are excluded: t - 1 ~ alpha^2 underflows the float
        # grid near t = 1 and the inversion cannot be more accurate than
        # the representation of t itself.
        t = zero_il_target_k(1e4, alpha) / 1e4
        assert zero_il_alpha_of_t(t) == pytest.approx(alpha, rel=1e-10)


class TestZeroIlTargetK:
    def test_identity_at_zero(self):
        assert zero_il_target_k(1e4, 0.0) == 1e4

    def test_ten_percent(self):
        assert zero_il_target_k(1e4, 0.1) == pytest.approx(10083.3333, abs=1e-3)

    def test_doubling_trade(self):
        assert zero_il_target_k(1e4, 1.0) == pytest.approx(1e4 * 4 / 3, abs=1e-3)

    @given(a1=st.floats(min_value=0.0, max_value=10.0), a2=st.floats(min_value=0.0, max_value=10.0))
    def test_monotone_in_alpha(self, a1, a2):
        lo, hi = sorted((a1, a2))
        assert zero_il_target_k(1e4, lo) <= zero_il_target_k(1e4, hi)

    @given(alpha=st.floats(min_value=0.05, max_value=10.0))
    def test_factor_along_trajectory(self, alpha):
        # The factor evaluated at the trajectory point equals 2a/(1+2a).
        phi = ZeroILFee(1e4).fee_factor(zero_il_target_k(1e4, alpha))
        assert phi == pytest.approx(2 * alpha / (1 + 2 * alpha), rel=1e-12)


class TestSplitFactor:
    def test_input_only(self):
        split = split_factor(0.003, "input_only")
        assert (split.gamma1, split.gamma2) == (0.997, 1.0)

    def test_no_fee_balanced(self):
        split = split_factor(0.0, "balanced")
        assert (split.gamma1, split.gamma2) == (1.0, 1.0)

    def test_balanced_sqrt(self):
        split = split_factor(0.1666667, "balanced")
        assert split.gamma1 == pytest.approx(0.9128709, abs=1e-6)
        assert split.gamma1 == split.gamma2

    def test_output_only(self):
        split = split_factor(0.25, "output_only")
        assert (split.gamma1, split.gamma2) == (1.0, 0.75)

    @given(
        factor=st.floats(min_value=0.0, max_value=0.999999),
        mode=st.sampled_from(["input_only", "balanced", "output_only"]),
    )
    def test_product_recovers_factor(self, factor, mode):
        split = split_factor(factor, mode)
        assert split.gamma1 * split.gamma2 == pytest.approx(1.0 - factor, rel=1e-12)

    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5, float("nan")])
    def test_range(self, bad):
        with pytest.raises(RangeError):
            split_factor(bad, "balanced")

    def test_unknown_mode(self):
        with pytest.raises(DomainError):
            split_factor(0.1, "sideways")


class TestSmallDeviationShape:
    def test_square_root_asymptotic(self):
        # factor ~ 2*sqrt(k/k0 - 1) within 1 percent for deviations up to 1e-6
        rule = ZeroILFee(1e4)
        for exponent in range(-12, -5):
            u = 10.0**exponent
            phi = rule.fee_factor(1e4 * (1.0 + u))
            ref = 2.0 * math.sqrt(u)
            assert abs(phi - ref) / ref <= 0.01

    def test_crossover_with_constant_fee(self):
        # The adaptive factor stays below a 0.3 percent flat fee only up to
        # t* = 1 + a*^2/(1+2a*) with a* = 0.003/(2*0.997); located here
        # numerically and compared against that closed form.
        rule = ZeroILFee(1e4)
        res = find_root(lambda t: rule.fee_factor(t * 1e4) - 0.003, 1.0 + 1e-12, 1.001, 1e-14)
        a_star = 0.003 / (2.0 * (1.0 - 0.003))
        t_star = 1.0 + a_star**2 / (1.0 + 2.0 * a_star)
        assert res.root == pytest.approx(t_star, rel=1e-9)
        assert res.root == pytest.approx(1.0000023, abs=5e-7)
        assert rule.fee_factor(1e4 * (1.0 + 0.5 * (t_star - 1.0))) < 0.003
        assert rule.fee_factor(1e4 * (1.0 + 2.0 * (t_star - 1.0))) > 0.003

    def test_limit_toward_one_for_large_k(self):
        rule = ZeroILFee(1e4)
        assert rule.fee_factor(1e4 * 1e8) > 0.9999
        assert rule.fee_factor(1e4 * 1e8) < 1.0


class TestParseFee:
    @pytest.mark.parametrize(
        "spec,cls",
        [
            ("constant:0.003", ConstantFee),
            ("linear:0.003:10000", LinearFee),
            ("zeroil:10000", ZeroILFee),
            ("priceratio:0.003", PriceRatioFee),
        ],
    )
    def test_kinds(self, spec, cls):
        rule = parse_fee(spec)
        assert isinstance(rule, cls)

    def test_round_trip_via_describe(self):
        rule = parse_fee("linear:0.003:10000")
        again = parse_fee(rule.describe())
        assert again == rule

    @pytest.mark.parametrize(
        "bad",
        ["", "bogus:1", "constant", "constant:a", "linear:0.003", "constant:0.1:0.2"],
    )
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            parse_fee(bad)

    def test_constructor_range_propagates(self):
        with pytest.raises(RangeError):
            parse_fee("constant:1.5")
