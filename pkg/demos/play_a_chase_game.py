"""
Chase games from the ground up
==============================

Build the three game kinds by hand, evaluate them, and look at the
text format they serialize to.
"""

import numpy as np

from chasebench import games, gameio

# A pointer chase on n=4 with two layers.  Player i holds funcs[i]; the
# chase starts at element 0 and applies the innermost table first, so the
# answer is funcs[0](funcs[1](0)).
f0 = games.FunctionTable(4, np.array([2, 3, 1, 0]))
f1 = games.FunctionTable(4, np.array([1, 1, 0, 2]))
chase = games.PcInstance(4, 2, (f0, f1))
print("pointer chase answer:", games.eval_pc(chase))  # f0(f1(0)) = f0(1) = 3

# The set-chase analogue maps each element to a set of successors and
# chases the union forward.
s0 = games.SetFunctionTable.from_sets(4, [{2}, {1, 3}, set(), {0}])
s1 = games.SetFunctionTable.from_sets(4, [{0, 1}, {2}, {2}, {3}])
sc = games.ScInstance(4, 2, (s0, s1))
print("set chase reaches:", sorted(games.eval_sc(sc)))

# An equality game compares two chases, with an escape hatch: if any table
# sends r or more elements to one value, the answer is 1 outright.
left = games.PcInstance(4, 2, (f0, f1))
right = games.PcInstance(4, 2, (f0, games.FunctionTable(4, np.array([0, 1, 3, 2]))))
eq = games.LpceInstance(left, right, r=3)
print("equality answer:", games.eval_lpce(eq))
print("  left chase:", games.eval_pc(eq.left), " right chase:", games.eval_pc(eq.right))

# force_equal rewrites the right chase so both sides land on the same
# element; handy for generating 1-instances.
forced = games.force_equal(eq)
print("after force_equal:", games.eval_lpce(forced))

# OR of t equality games: answer 1 iff any item answers 1.
rng = np.random.default_rng(7)
items = tuple(games.sample_uniform_lpce(8, 2, 4, rng) for _ in range(3))
big = games.OrLpceInstance(3, items)
print("OR over 3 items:", games.eval_or_lpce(big))

# Every instance serializes to a line-oriented text form and parses back.
text = gameio.serialize_game(eq)
print("\nserialized equality game:")
print(text)
assert gameio.parse_game(text) == eq
