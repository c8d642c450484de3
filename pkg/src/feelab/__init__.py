"""feelab: deterministic simulation of constant-product pools with
state-dependent fees.

The library models a two-token pool whose fee, when reinvested, may depend
on the pool state. Fee rules whose combined factor depends only on the
invariant k = x*y give trade outcomes that are independent of how a trade
is fragmented; for those rules a continuous solver computes the final
state in closed or quadrature form, and a zero impermanent-loss fee family
is available for any fixed reference state. A discrete sub-swap engine
reproduces on-chain style per-transaction fee compounding for comparison.
"""

from .core import (
    FeeSplit,
    PoolState,
    TradeOutcome,
    TradeSpec,
    invariant,
    marginal_price,
)
from .errors import (
    DomainError,
    FeeLabError,
    NoBracket,
    NonConvergence,
    NonFinite,
    RangeError,
)
from .fees import (
    ConstantFee,
    CustomFee,
    FeeRule,
    LinearFee,
    PriceRatioFee,
    ZeroILFee,
    parse_fee,
    split_factor,
    zero_il_alpha_of_t,
    zero_il_target_k,
)
from .numerics import (
    QuadratureResult,
    RootResult,
    find_root,
    integrate,
    rk4_integrate,
    rk4_step,
)
from .engine import (
    EngineConfig,
    Trajectory,
    ode_trajectory,
    swap_continuous,
    swap_discrete,
)
from .analysis import (
    ILReport,
    SeriesTable,
    fee_field_grid,
    il_curve,
    impermanent_loss,
    price_curve,
    relative_effective_price,
    run_split,
    splitting_error,
    universal_fee_conflict,
    zero_il_fee_curve,
)

__version__ = "0.1.0"

__all__ = [
    "ConstantFee",
    "CustomFee",
    "DomainError",
    "EngineConfig",
    "FeeLabError",
    "FeeRule",
    "FeeSplit",
    "ILReport",
    "LinearFee",
    "NoBracket",
    "NonConvergence",
    "NonFinite",
    "PoolState",
    "PriceRatioFee",
    "QuadratureResult",
    "RangeError",
    "RootResult",
    "SeriesTable",
    "TradeOutcome",
    "TradeSpec",
    "Trajectory",
    "ZeroILFee",
    "fee_field_grid",
    "find_root",
    "il_curve",
    "impermanent_loss",
    "integrate",
    "invariant",
    "marginal_price",
    "ode_trajectory",
    "parse_fee",
    "price_curve",
    "relative_effective_price",
    "rk4_integrate",
    "rk4_step",
    "run_split",
    "split_factor",
    "splitting_error",
    "swap_continuous",
    "swap_discrete",
    "universal_fee_conflict",
    "zero_il_alpha_of_t",
    "zero_il_fee_curve",
    "zero_il_target_k",
]
