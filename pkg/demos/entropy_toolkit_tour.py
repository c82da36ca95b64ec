"""
Information toolkit tour
========================

The measure-theoretic side of the workbench: entropy accounting,
collision bounds for nearly uniform variables, a rejection sampler that
simulates one distribution through another, and the injectivity escape
threshold that calibrates the equality games.
"""

import math

import numpy as np

from chasebench import info

# Basic quantities on finite distributions.
u = info.FiniteDistribution.uniform(16)
p = info.FiniteDistribution(np.array([0.5, 0.25, 0.125, 0.125]))
print("H(uniform 16) =", info.entropy(u))
print("H(p) =", info.entropy(p))
print("KL(p || uniform 4) =", info.kl_divergence(p, info.FiniteDistribution.uniform(4)))

joint = np.array([[0.25, 0.25], [0.0, 0.5]])
print("I(X;Y) =", info.mutual_information(joint))

# Two independent variables with entropy >= log2(n) - delta collide with
# probability >= 1/(8n) and differ with probability >= 1/4 (n >= 4).
delta = 48.0 ** -2


def tilted(n, deficit):
    """Grow one atom until the entropy drops to log2(n) - deficit."""
    lo, hi = 0.0, 1.0 - 1.0 / n
    for _ in range(80):
        mid = (lo + hi) / 2
        probs = np.full(n, (1.0 - 1.0 / n - mid) / (n - 1))
        probs[0] = 1.0 / n + mid
        d = info.FiniteDistribution(probs)
        lo, hi = (mid, hi) if info.entropy(d) > math.log2(n) - deficit else (lo, mid)
    return d


x = tilted(16, delta)
rep = info.collision_bounds_check(x, x, delta)
print(
    f"\ncollision check applicable={rep.applicable}: "
    f"Pr[X=Y]={rep.collision_prob:.4f} >= {rep.collision_lower:.4f} -> {rep.collision_holds}; "
    f"Pr[X!=Y]={rep.distinct_prob:.4f} >= {rep.distinct_lower} -> {rep.distinct_holds}"
)

# A binary mixture can only beat its components' entropy by one bit.
x0 = info.FiniteDistribution(np.array([0.9, 0.1, 0.0, 0.0]))
x1 = info.FiniteDistribution(np.array([0.0, 0.0, 0.2, 0.8]))
y = info.FiniteDistribution(np.array([0.5, 0.5]))
mix = info.mixture_entropy_check(x0, x1, y)
print(f"mixture entropy {mix.mixture_entropy:.4f} <= {mix.upper_bound:.4f} (slack {mix.slack:.4f})")

# Nearly uniform variables put nearly proportional mass on every set.
au = info.check_almost_uniform(x, range(8), delta)
print(
    f"hitting bound: Pr[X in S]={au.prob_in_set:.4f} >= {au.lower_bound:.4f} "
    f"(Delta={au.big_delta:.4f}) -> {au.holds}"
)

# Rejection sampling: simulate P through draws from Q.  Labels where P
# overshoots Q by more than 2^{(a+1)/eps} are dropped from the good set;
# what remains keeps mass >= 1 - eps and is sampled with P's exact
# probabilities, the rest of the mass going to a bottom symbol.
pp = np.full(8, 0.1)
pp[0] = 0.3
qq = np.full(8, (1.0 - 0.004) / 7)
qq[0] = 0.004
P = info.FiniteDistribution(pp)
Q = info.FiniteDistribution(qq)
eps = 0.9
a = info.kl_divergence(P, Q)
good = sorted(info.good_set(P, Q, eps))
print(f"\nKL(P||Q)={a:.4f}, good set={good}, mass={float(P.probs[good].sum()):.2f}")

rng = np.random.default_rng(0)
draws = 20000
hist = np.zeros(9)
total_steps = 0
for _ in range(draws):
    out = info.rejection_sample(P, Q, eps, rng)
    total_steps += out.steps
    hist[8 if out.value is None else out.value] += 1
print("empirical law  :", np.round(hist / draws, 3))
print("target law     :", np.round(np.append(np.where(np.isin(np.arange(8), good), pp, 0.0), 0.3), 3))
print(f"mean steps {total_steps / draws:.3f} vs 2^((a+1)/eps) = {2 ** ((a + 1) / eps):.3f}")

# The escape threshold: smallest r with Pr[uniform f has an r-collision]
# below 1/(2n^2).  Exact for small n, certified by a union bound beyond.
print("\nc_star thresholds:")
for n in (4, 8, 12, 16, 64, 256, 4096):
    print(f"  n={n:5d} -> r={info.c_star_threshold(n)}")
