"""
The scramble-and-overlay reduction
==================================

An OR of t equality games becomes one set-chase intersection instance:
scramble each item's chase with fresh layer permutations (sharing the
outermost layer between the two sides), then overlay the t scrambled
copies so that layer i maps x to the set of t scrambled values.  A YES
item survives as a guaranteed intersection point; NO instances stay
disjoint with probability at least 9/10 inside the parameter budget.
"""

import numpy as np

from chasebench import games, protocols, reduction
from chasebench.util import derive_rng

# choose_params picks the largest width on the scheduled budget
# (10*r*t^2)^p <= n; at one round the square root rule gives t=102.
print("scheduled width at n=2^20, p=1, r=10:", reduction.choose_params(2 ** 20, 1, 10).t)

# Deeper games get tighter: at n=4096, p=2 the raw soundness budget
# 10*t^(2p)*r^(p-1) <= n still admits t=2.
n, p = 4096, 2
r = 15  # injectivity escape threshold for n=4096
params = reduction.ReductionParams(n, p, r, 2)
print(f"budget: n={n} p={p} r={r} -> running at t={params.t}")

# Completeness: force one item to answer 1 and reduce.
rng = derive_rng(42)
inst = games.sample_uniform_or_lpce(n, p, r, params.t, rng)
items = list(inst.items)
items[0] = games.force_equal(items[0])
forced = games.OrLpceInstance(params.t, tuple(items))
reduced = reduction.reduce_or_lpce(forced, rng)
print("forced OR answer:", games.eval_or_lpce(forced))
print("reduced intersection answer:", games.eval_intersect_sc(reduced))

# Soundness: uniform instances almost always answer 0, and the reduced
# intersection stays empty at the promised rate.
hits = 0
trials = 200
done = 0
while done < trials:
    inst = games.sample_uniform_or_lpce(n, p, r, params.t, rng)
    if games.eval_or_lpce(inst) != 0:
        continue
    out = reduction.reduce_or_lpce(inst, rng)
    hits += games.eval_intersect_sc(out) == 1
    done += 1
print(f"false intersections: {hits}/{trials} (budget promises <= 1/10)")

# The escape hatch never reaches the scrambler: a single r-non-injective
# table short-circuits the whole reduction in the pre-round.
bad = games.LpceInstance(
    games.PcInstance(n, 1, (games.FunctionTable.constant(n, 0),)),
    games.PcInstance(n, 1, (games.FunctionTable.identity(n),)),
    r,
)
sc = reduction.reduce_or_lpce(games.OrLpceInstance(1, (bad,)), derive_rng(1))
print("short-circuit witness (item, side, layer):", sc.witness)

# End to end: reduce, then hand the result to an exact protocol.  The
# report charges 2p pre-round bits on top of the transcript.
report = reduction.end_to_end_report(forced, protocols.forward_sc_protocol, derive_rng(3))
print(
    f"end to end: answer={report.answer} bits={report.communication_bits}"
    f" short_circuited={report.short_circuited}"
)
