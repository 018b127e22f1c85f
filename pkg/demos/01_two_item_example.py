"""Two items that are only worth something together.

Item values: {r1, r2} -> 4, anything less -> 0.  The best opposing bid for
each item is 1 or 2 with equal probability, and the agent wins ties.
"""
from seqbid import QState, solve_additive, solve_quasilinear, two_item_example

inst = two_item_example(endowment=4)

# %% Quasi-linear form: one state per obtained set
pi = solve_quasilinear(inst)
print("quasi-linear expected gain:", pi.root_value)
for t, bids in enumerate(pi.bids):
    for s, z in enumerate(bids):
        print(f"  stage {t}, holding {s:02b}: bid {z}, value {pi.value(QState(t, s)):.3f}")

# %% Additive form with f(d) = d: money is part of the state
a = solve_additive(inst, 4)
print("additive expected utility with m = 4:", a.root_value)
print("  gain over not bidding:", a.root_value - 4)
print("  bid after winning r1 with 3 left:", a.bid(1, 0b01, 3))

# %% With only 2 units of money the agent cannot cover 1 + 2
print("additive expected utility with m = 2:", solve_additive(inst, 2).root_value)
