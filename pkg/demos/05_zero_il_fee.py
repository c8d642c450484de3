"""The fee schedule that makes impermanent loss vanish.

For a pool whose invariant starts at a reference k0 there is a fee
schedule, a function of k alone, under which the reinvested fee exactly
offsets the provider's rebalancing loss for every trade size: zero at the
reference, rising like 2*sqrt(k/k0 - 1), and approaching 1 far away.

CLI equivalents:

    feelab zeroil-curve --k0 10000 --t-max 1.5 --points 100
    feelab il-curve --fee zeroil:10000
    feelab swap --fee zeroil:10000 --dx 10
"""

import math

from feelab import (
    PoolState,
    ZeroILFee,
    find_root,
    impermanent_loss,
    swap_continuous,
    zero_il_fee_curve,
)

k0 = 1e4
rule = ZeroILFee(k0)
pool = PoolState(100.0, 100.0)

print("fee factor along relative invariant t = k/k0 (sqrt-like takeoff):")
ts = [1.0, 1.0 + 1e-8, 1.0 + 1e-6, 1.0 + 1e-4, 1.01, 1.1, 1.5]
for t, phi in zero_il_fee_curve(k0, ts).rows:
    approx = 2.0 * math.sqrt(max(t - 1.0, 0.0))
    print(f"  t = {t:<12.8f} factor = {phi:.8f}   2*sqrt(t-1) = {approx:.8f}")

crossover = find_root(lambda t: rule.fee_factor(t * k0) - 0.003, 1.0 + 1e-12, 1.001, 1e-14)
print(f"\ncheaper than a flat 0.3% fee only below t = {crossover.root:.9f};")
print("beyond that hair-thin band the schedule charges more, which is the")
print("price of the protection.")

print("\nprovider loss across trade sizes (valued at the post-trade price):")
for alpha in (0.01, 0.1, 0.5, 1.0, 5.0):
    outcome = swap_continuous(pool, rule, alpha * pool.x)
    report = impermanent_loss(pool, outcome)
    print(
        f"  trade {alpha:5.2f} x0: k {pool.k:.0f} -> {outcome.k_f:10.2f}, "
        f"IL = {report.il_abs:+.2e}"
    )

print("\nzero to round-off at every size, not only near the reference:")
print("the invariant is steered along k0*(1+a)^2/(1+2a), the unique")
print("trajectory on which the two portfolio values coincide.")
