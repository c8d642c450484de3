"""A single swap through the pool, three ways, and what it costs the
liquidity provider.

The pool starts at reserves (100, 100). A trader sends in 10 units of
token A. We run the trade through the no-fee pool, the classic
fee-on-input pool, and the continuous fee model, then value the
provider's position against simply holding the initial reserves.
"""

from feelab import (
    ConstantFee,
    PoolState,
    TradeSpec,
    impermanent_loss,
    swap_continuous,
    swap_discrete,
)

pool = PoolState(100.0, 100.0)
dx = 10.0

print(f"pool: x={pool.x}, y={pool.y}, k={pool.k}")
print(f"trade: {dx} of token A\n")

runs = {
    "no fee (continuous)": swap_continuous(pool, ConstantFee(0.0), dx),
    "0.3% fee on input (single sub-swap)": swap_discrete(
        pool, ConstantFee(0.003), TradeSpec(dx, 1), "input_only"
    ),
    "0.3% fee, continuous model": swap_continuous(pool, ConstantFee(0.003), dx),
}

for name, outcome in runs.items():
    report = impermanent_loss(pool, outcome)
    print(name)
    print(f"  trader receives      {outcome.dy_out:.9f} of token B")
    print(f"  effective price      {outcome.p_effective:.9f} (marginal before: 1.0)")
    print(f"  final reserves       ({outcome.x_f:.6f}, {outcome.y_f:.6f}), k={outcome.k_f:.6f}")
    print(f"  provider IL          {report.il_abs:+.9f} ({report.il_rel * 100:+.5f}%)")
    print()

print("The invariant grows exactly when a fee is charged and reinvested;")
print("the provider's loss shrinks as the reinvested fee offsets the")
print("rebalancing cost, but a flat 0.3% fee does not cancel it.")
