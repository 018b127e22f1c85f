"""Bidding under a hard budget on the nine-item, three-bundle instance.

Three methods are compared as the budget grows: the exact additive solver
with m = budget, the prorated second pass over the unconstrained strategy,
and the trivial policy that simply stops bidding when money runs out.
"""
from seqbid import (exact_eval, gen_three_bundles, solve_additive, solve_prorated,
                    solve_quasilinear, trivial_policy)

inst = gen_three_bundles()
pi = solve_quasilinear(inst)
print("unconstrained expected gain:", round(pi.root_value, 3))
print("unconstrained worst-case payment:", exact_eval(inst, pi).max_payment)

print(f"{'budget':>6} {'optimal':>9} {'prorated':>9} {'trivial':>9}")
for budget in range(10, 261, 25):
    opt = solve_additive(inst, budget).root_value - budget
    pro = exact_eval(inst, solve_prorated(inst, pi, budget)).expected_utility
    tri = exact_eval(inst, trivial_policy(pi, budget)).expected_utility
    print(f"{budget:>6} {opt:>9.3f} {pro:>9.3f} {tri:>9.3f}")

# The trivial policy goes negative: it often pays for part of a bundle and
# then cannot afford the rest.
