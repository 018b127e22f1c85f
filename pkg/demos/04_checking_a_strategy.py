"""Three independent ways to check a solved strategy.

exact_eval enumerates every win/lose outcome, monte_carlo simulates with a
seeded generator, and brute_force_optimal tries every bid table on a tiny
instance.
"""
import numpy as np

from seqbid import brute_force_optimal, exact_eval, monte_carlo, solve_quasilinear
from seqbid.generators import random_instance

rng = np.random.default_rng(1)
inst = random_instance(rng, n_max=3, support_max=4)
pi = solve_quasilinear(inst)

print("solver value:      ", pi.root_value)
print("exact evaluation:  ", exact_eval(inst, pi).summary())
print("monte carlo:       ", monte_carlo(inst, pi, samples=200_000, seed=1).summary())
value, best = brute_force_optimal(inst, max(inst.max_supports))
print("brute-force best:  ", value)
