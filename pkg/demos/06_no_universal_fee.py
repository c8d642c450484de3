"""Why no single fee schedule protects every pool state.

Fix a target invariant k*. For each starting invariant k0 below it, zero
impermanent loss on the trade that carries the pool from k0 to k* pins
down what the fee factor must be at k*. Different starting states pin
down different values, so one function of k cannot serve them all: the
schedule is inherently tied to its reference state.

CLI equivalent:

    feelab no-universal --kstar 10100 --k0 10000,9800,9500,9000,8000
"""

from feelab import universal_fee_conflict, zero_il_alpha_of_t

k_star = 10_100.0
starts = [10_000.0, 9_800.0, 9_500.0, 9_000.0, 8_000.0, 6_000.0]

print(f"required factor at k* = {k_star:.0f} for zero loss from each start:")
print("k0".rjust(10) + "trade fraction".rjust(18) + "required factor".rjust(18))
for k0 in starts:
    alpha = zero_il_alpha_of_t(k_star / k0)
    phi_required, _ = universal_fee_conflict(k_star, k0, k0)
    print(f"{k0:10.0f}{alpha:18.6f}{phi_required:18.6f}")

phi_a, phi_b = universal_fee_conflict(k_star, 10_000.0, 9_000.0)
print(
    f"\nstarting at 10000 demands {phi_a:.3f} while starting at 9000 demands "
    f"{phi_b:.3f}: a single value cannot satisfy both, so protocols must"
)
print("either recompute the schedule when liquidity moves the reference, or")
print("accept residual loss away from the state it was built for.")
