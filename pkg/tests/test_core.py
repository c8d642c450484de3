import pytest
from hypothesis import given, strategies as st

from feelab import (
    ConstantFee,
    CustomFee,
    DomainError,
    FeeSplit,
    LinearFee,
    PoolState,
    PriceRatioFee,
    TradeSpec,
    ZeroILFee,
    invariant,
    marginal_price,
)


class TestPoolState:
    def test_valid_construction(self):
        pool = PoolState(100, 100)
        assert pool.x == 100.0 and pool.y == 100.0
        assert pool.k == 10_000.0

    @pytest.mark.parametrize("x,y", [(0, 1), (-1, 1), (1, 0), (1, -2)])
    def test_non_positive_reserves_rejected(self, x, y):
        with pytest.raises(DomainError):
            PoolState(x, y)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf")])
    def test_non_finite_reserves_rejected(self, bad):
        with pytest.raises(DomainError):
            PoolState(bad, 1.0)
        with pytest.raises(DomainError):
            PoolState(1.0, bad)

    def test_overflowing_product_rejected(self):
        with pytest.raises(DomainError):
            PoolState(1e300, 1e300)


class TestInvariant:
    def test_reference_pool(self):
        assert invariant(PoolState(100, 100)) == 10_000.0

    def test_unit_pool(self):
        assert invariant(PoolState(1, 1)) == 1.0

    def test_post_swap_reserves(self):
        # Reserves taken from the single-transaction fee-on-input swap of
        # 10 into a (100, 100) pool; the product must match the direct
        # multiplication 110 * 90.93389.
        assert invariant(PoolState(110, 90.93389)) == pytest.approx(10002.7279, abs=1e-3)

    def test_pure(self):
        pool = PoolState(123.456, 78.9)
        assert invariant(pool) == invariant(pool)
        assert marginal_price(pool) == marginal_price(pool)


class TestMarginalPrice:
    def test_symmetric_pool(self):
        assert marginal_price(PoolState(100, 100)) == 1.0

    def test_zero_il_trajectory_point(self):
        # y_f = 100*1.1/1.2 on the zero-IL path at trade fraction 0.1.
        assert marginal_price(PoolState(110, 91.666667)) == pytest.approx(0.8333333, abs=1e-6)

    def test_ratio(self):
        assert marginal_price(PoolState(200, 50)) == 0.25


class TestTradeSpec:
    def test_sub_size(self):
        spec = TradeSpec(10.0, 4)
        assert spec.sub_size == 2.5

    def test_defaults(self):
        assert TradeSpec(1.0).n_splits == 1

    @pytest.mark.parametrize("dx,n", [(-1.0, 1), (float("nan"), 1), (1.0, 0), (1.0, -3), (1.0, 1.5)])
    def test_validation(self, dx, n):
        with pytest.raises(DomainError):
            TradeSpec(dx, n)


class TestFeeSplit:
    def test_combined_factor(self):
        split = FeeSplit(0.997, 1.0)
        assert split.combined_factor == pytest.approx(0.003, rel=1e-12)

    @pytest.mark.parametrize("g1,g2", [(0.0, 1.0), (1.0, 0.0), (1.5, 1.0), (-0.1, 1.0)])
    def test_validation(self, g1, g2):
        with pytest.raises(DomainError):
            FeeSplit(g1, g2)


# Combined factors of path-independent rules must agree across points of
# one hyperbola x*y = k; the price-ratio rule must not.

_PI_RULES = [
    ConstantFee(0.003),
    LinearFee(0.003, 1e4),
    CustomFee(lambda k: 0.5 * k / (k + 1e6), "custom:saturating"),
]


@given(
    # upper bound keeps the linear rule's factor below 1
    k=st.floats(min_value=1e2, max_value=1e6),
    x1=st.floats(min_value=0.5, max_value=2e4),
    x2=st.floats(min_value=0.5, max_value=2e4),
)
def test_path_independent_rules_constant_on_hyperbolas(k, x1, x2):
    for rule in _PI_RULES:
        f1 = rule.combined_factor(x1, k / x1)
        f2 = rule.combined_factor(x2, k / x2)
        assert abs(f1 - f2) <= 1e-14 * max(1.0, f1)


@given(
    t=st.floats(min_value=1.01, max_value=100.0),
    x1=st.floats(min_value=0.5, max_value=2e4),
    x2=st.floats(min_value=0.5, max_value=2e4),
)
def test_zero_il_rule_constant_on_hyperbolas(t, x1, x2):
    # Sampled away from the reference, where the factor's slope in k is
    # finite and round-off in x*(k/x) cannot dominate.
    rule = ZeroILFee(1e4)
    k = 1e4 * t
    f1 = rule.combined_factor(x1, k / x1)
    f2 = rule.combined_factor(x2, k / x2)
    assert abs(f1 - f2) <= 1e-14 * max(1.0, f1)


def test_price_ratio_rule_varies_on_hyperbola():
    rule = PriceRatioFee(0.003)
    f1 = rule.combined_factor(50.0, 200.0)
    f2 = rule.combined_factor(200.0, 50.0)
    assert 50.0 * 200.0 == 200.0 * 50.0
    assert abs(f1 - f2) > 1e-6
