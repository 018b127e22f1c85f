"""How solve time grows with the endowment m.

The additive solver carries remaining money in its state, so its table and
its work scale with m.  The quasi-linear solver does not depend on m at all.
Absolute numbers depend on the machine; the ratios are the point.
"""
from collections import defaultdict

from seqbid.bench import fig2_config, run_bench

config = fig2_config()
config["n"] = [2, 4, 6, 8]
rows = run_bench(config)

times = defaultdict(dict)
for r in rows:
    times[(r.n, r.m)][r.method] = r.runtime_ms

print(f"{'n':>3} {'m':>5} {'additive ms':>12} {'quasi ms':>10} {'ratio':>8}")
for (n, m), t in sorted(times.items()):
    print(f"{n:>3} {m:>5} {t['additive']:>12.2f} {t['quasilinear']:>10.3f} {t['additive'] / t['quasilinear']:>8.0f}")
