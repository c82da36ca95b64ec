"""Self-check suites with CSV reporting.

Each suite re-validates one module's documented properties at desk scale
and returns one row per check.  All randomness is derived from the caller's
seed, so reruns are byte-identical; the CLI turns any failed row into a
nonzero exit code.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import gadgets, games, info, oracles, protocols, reduction, streaming
from .util import derive_rng

__all__ = ["CheckResult", "SUITES", "run_suite", "to_csv"]

Value = Union[int, float, str]


@dataclass(frozen=True)
class CheckResult:
    suite: str
    check: str
    measured: Value
    threshold: str
    passed: bool


def _fmt(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def to_csv(results: Sequence[CheckResult]) -> str:
    lines = ["suite,check,measured,threshold,passed"]
    for r in results:
        lines.append(
            f"{r.suite},{r.check},{_fmt(r.measured)},{r.threshold},"
            + ("true" if r.passed else "false")
        )
    return "\n".join(lines) + "\n"


def _tilted(n: int, delta: float) -> info.FiniteDistribution:
    """Distribution on [n] with entropy exactly log2(n) - delta (bisected)."""
    target = math.log2(n) - delta

    def h(s: float) -> float:
        p0 = 1.0 / n + s
        rest = (1.0 - p0) / (n - 1)
        probs = np.full(n, rest)
        probs[0] = p0
        return info.entropy(info.FiniteDistribution(probs))

    lo, hi = 0.0, 1.0 - 1.0 / n - 1e-12
    for _ in range(200):
        mid = (lo + hi) / 2
        if h(mid) > target:
            lo = mid
        else:
            hi = mid
    p0 = 1.0 / n + lo
    probs = np.full(n, (1.0 - p0) / (n - 1))
    probs[0] = p0
    return info.FiniteDistribution(probs)


def _random_dist(n: int, rng: np.random.Generator) -> info.FiniteDistribution:
    w = rng.random(n) + 1e-12
    return info.FiniteDistribution(w / w.sum())


# ---------------------------------------------------------------- info suite


def _suite_info(seed: int, trials: Optional[int]) -> list[CheckResult]:
    t = trials or 2000
    rows: list[CheckResult] = []

    def add(check: str, measured: Value, threshold: str, passed: bool):
        rows.append(CheckResult("info", check, measured, threshold, passed))

    h16 = info.entropy(info.FiniteDistribution.uniform(16))
    add("entropy-uniform-16", h16, "=4", abs(h16 - 4.0) <= 1e-12)

    rng = derive_rng(seed, 0, 1)
    p = _random_dist(12, rng)
    add("kl-self-zero", info.kl_divergence(p, p), "<=1e-12", info.kl_divergence(p, p) <= 1e-12)

    rng = derive_rng(seed, 0, 2)
    marg = _random_dist(8, rng)
    diag = np.diag(marg.probs)
    mi_gap = abs(info.mutual_information(diag) - info.entropy(marg))
    add("mi-correlated-equals-entropy", mi_gap, "<=1e-9", mi_gap <= 1e-9)

    rng = derive_rng(seed, 0, 3)
    worst = 0.0
    for _ in range(min(t, 500)):
        j = rng.random((8, 8)) + 1e-12
        j /= j.sum()
        hx = info.entropy(info.FiniteDistribution(j.sum(axis=1)))
        hy = info.entropy(info.FiniteDistribution(j.sum(axis=0)))
        hxy = float(-(j * np.log2(j)).sum())
        worst = max(worst, abs(info.mutual_information(j) - (hx + hy - hxy)))
    add("mi-additivity-gap", worst, "<=1e-9", worst <= 1e-9)

    rng = derive_rng(seed, 0, 4)
    checked = bad = 0
    for _ in range(min(t, 1000)):
        n = int(rng.integers(8, 65))
        delta = float(rng.random() * 1e-3)
        d = _tilted(n, delta * rng.random())
        size = int(rng.integers(max(1, n // 2), n + 1))
        s = rng.choice(n, size=size, replace=False)
        rep = info.check_almost_uniform(d, s, delta)
        if rep.applicable:
            checked += 1
            bad += not rep.holds
    add("almost-uniform-violations", bad, "=0", bad == 0 and checked > 0)

    delta = 48.0 ** -2
    col_bad = 0
    for n in (4, 16, 64):
        x = _tilted(n, delta)
        y = _tilted(n, delta * 0.5)
        rep = info.collision_bounds_check(x, y, delta)
        if not (rep.applicable and rep.collision_holds and rep.distinct_holds):
            col_bad += 1
    add("collision-bounds-violations", col_bad, "=0", col_bad == 0)

    rng = derive_rng(seed, 0, 5)
    mix_bad = 0
    for _ in range(min(t, 2000)):
        x0 = _random_dist(6, rng)
        x1 = _random_dist(6, rng)
        ybias = float(rng.random())
        y = info.FiniteDistribution(np.array([ybias, 1.0 - ybias]))
        if not info.mixture_entropy_check(x0, x1, y).holds:
            mix_bad += 1
    add("mixture-entropy-violations", mix_bad, "=0", mix_bad == 0)

    rng = derive_rng(seed, 0, 6)
    min_margin = math.inf
    for _ in range(min(t, 500)):
        p = _random_dist(10, rng)
        q = _random_dist(10, rng)
        eps = float(rng.uniform(0.2, 0.9))
        mass = sum(float(p.probs[i]) for i in info.good_set(p, q, eps))
        min_margin = min(min_margin, mass - (1.0 - eps))
    add("good-set-mass-margin", min_margin, ">=0", min_margin >= -1e-12)

    # fixed sampler instance: p has a heavy atom that q starves, so the
    # good set is proper and the bottom branch is exercised
    pp = np.full(8, 0.1)
    pp[0] = 0.3
    qq = np.full(8, (1.0 - 0.004) / 7)
    qq[0] = 0.004
    p8 = info.FiniteDistribution(pp)
    q8 = info.FiniteDistribution(qq)
    eps8 = 0.9
    a8 = info.kl_divergence(p8, q8)
    c8 = 2.0 ** (-(a8 + 1.0) / eps8)
    good8 = info.good_set(p8, q8, eps8)
    rng = derive_rng(seed, 0, 7)
    draws = min(t * 3, 6000)
    counts = np.zeros(8)
    steps = []
    for _ in range(draws):
        out = info.rejection_sample(p8, q8, eps8, rng)
        steps.append(out.steps)
        if out.value is not None:
            counts[out.value] += 1
    expected = np.array([p8.probs[i] if i in good8 else 0.0 for i in range(8)])
    expected /= expected.sum()
    accepted = counts.sum()
    tv = 0.5 * float(np.abs(counts / accepted - expected).sum())
    add("sampler-law-tv", tv, "<=0.05", tv <= 0.05)
    mean_steps = float(np.mean(steps))
    sigma = math.sqrt((1 - c8) / c8 ** 2 / draws)
    bound = 1.0 / c8 + 3 * sigma
    add("sampler-mean-steps", mean_steps, f"<={bound:.6g}", mean_steps <= bound)

    rng = derive_rng(seed, 0, 8)
    n = 16
    r = info.c_star_threshold(n)
    hits = sum(
        games.is_r_non_injective(games.sample_uniform_function(n, rng), r)
        for _ in range(min(t, 2000))
    )
    rate = hits / min(t, 2000)
    cap = 1.0 / (2 * n * n)
    sigma = math.sqrt(cap * (1 - cap) / min(t, 2000))
    add("c-star-rate-16", rate, f"<={cap + 3 * sigma:.6g}", rate <= cap + 3 * sigma)
    return rows


# ----------------------------------------------------------- protocol suite


def _suite_protocols(seed: int, trials: Optional[int]) -> list[CheckResult]:
    t = trials or 1500
    rows: list[CheckResult] = []
    mismatches = 0
    round_bad = 0
    bits_bad = 0
    rev_round_bad = 0
    rev_bits_bad = 0
    rng = derive_rng(seed, 1, 0)
    for _ in range(t):
        n = int(rng.integers(4, 17))
        p = int(rng.integers(1, 4))
        inst = games.sample_intersect_sc(n, p, rng, include_prob=float(rng.uniform(0.1, 0.6)))
        truth = games.eval_intersect_sc(inst)
        fwd, ftr = protocols.forward_sc_protocol(inst)
        rev, rtr = protocols.reverse_order_sc_protocol(inst)
        mismatches += (fwd != truth) + (rev != truth)
        round_bad += max(r for r, _, _ in ftr.messages) + 1 != p
        bits_bad += protocols.set_message_bits(ftr, n) != 2 * p * n
        rev_round_bad += max(r for r, _, _ in rtr.messages) + 1 != 1
        rev_bits_bad += rtr.total_bits > 2 * p * (n + 1)
    rows.append(CheckResult("protocols", "answer-mismatches", mismatches, "=0", mismatches == 0))
    rows.append(CheckResult("protocols", "forward-round-count-errors", round_bad, "=0", round_bad == 0))
    rows.append(CheckResult("protocols", "forward-set-bit-errors", bits_bad, "=0", bits_bad == 0))
    rows.append(CheckResult("protocols", "reverse-round-count-errors", rev_round_bad, "=0", rev_round_bad == 0))
    rows.append(CheckResult("protocols", "reverse-bit-bound-errors", rev_bits_bad, "=0", rev_bits_bad == 0))
    return rows


# ---------------------------------------------------------- reduction suite


def _suite_reduction(seed: int, trials: Optional[int]) -> list[CheckResult]:
    rows: list[CheckResult] = []

    n, p, tt = 64, 2, 2
    r = info.c_star_threshold(n)
    comp_trials = trials or 300
    failures = 0
    rng = derive_rng(seed, 2, 0)
    done = 0
    while done < comp_trials:
        inst = games.sample_uniform_or_lpce(n, p, r, tt, rng)
        items = list(inst.items)
        j = int(rng.integers(tt))
        items[j] = games.force_equal(items[j])
        inst = games.OrLpceInstance(tt, tuple(items))
        if any(
            games.is_r_non_injective(f, r)
            for item in inst.items
            for f in item.tables()
        ):
            continue
        reduced = reduction.reduce_or_lpce(inst, rng, check_feasible=False)
        assert not isinstance(reduced, reduction.ShortCircuit)
        failures += games.eval_intersect_sc(reduced) != 1
        done += 1
    rows.append(CheckResult("reduction", "completeness-failures", failures, "=0", failures == 0))

    n, p, tt = 256, 1, 5
    r = info.c_star_threshold(n)
    snd_trials = trials or 500
    bound = tt ** (2 * p) * r ** (p - 1) / n
    rng = derive_rng(seed, 2, 1)
    false_hits = 0
    done = 0
    while done < snd_trials:
        inst = games.sample_uniform_or_lpce(n, p, r, tt, rng)
        if games.eval_or_lpce(inst) != 0:
            continue
        reduced = reduction.reduce_or_lpce(inst, rng)
        false_hits += games.eval_intersect_sc(reduced) == 1
        done += 1
    rate = false_hits / snd_trials
    sigma = math.sqrt(bound * (1 - bound) / snd_trials)
    cap = bound + 3 * sigma
    rows.append(
        CheckResult("reduction", "soundness-false-rate", rate, f"<={cap:.6g}", rate <= cap)
    )

    rng = derive_rng(seed, 2, 2)
    rt_bad = 0
    for _ in range(200):
        item = games.sample_uniform_lpce(8, 2, 3, rng)
        fam = reduction.sample_permutation_family(8, 2, 1, rng)
        left, right = reduction.scramble(item, 0, fam)
        back_item = games.LpceInstance(
            games.PcInstance(8, 2, left), games.PcInstance(8, 2, right), item.r
        )
        back_l, back_r = reduction.scramble(back_item, 0, fam.inverse())
        rt_bad += back_l != item.left.funcs or back_r != item.right.funcs
    rows.append(CheckResult("reduction", "scramble-inverse-errors", rt_bad, "=0", rt_bad == 0))

    width = reduction.choose_params(2 ** 20, 1, 10).t
    rows.append(CheckResult("reduction", "schedule-width-example", width, "=102", width == 102))

    const = games.FunctionTable.constant(16, 0)
    ident = games.FunctionTable.identity(16)
    item = games.LpceInstance(
        games.PcInstance(16, 1, (const,)), games.PcInstance(16, 1, (ident,)), 4
    )
    out = reduction.reduce_or_lpce(
        games.OrLpceInstance(1, (item,)), derive_rng(seed, 2, 3), check_feasible=False
    )
    is_sc = isinstance(out, reduction.ShortCircuit) and out.answer == 1
    rows.append(CheckResult("reduction", "shortcircuit-on-non-injective", int(is_sc), "=1", is_sc))
    return rows


# ------------------------------------------------------------ gadget suite


def _suite_gadgets(seed: int, trials: Optional[int]) -> list[CheckResult]:
    rows: list[CheckResult] = []

    nv_bad = 0
    for p in (1, 2, 3):
        for k in (2, 4, 8):
            rng = derive_rng(seed, 3, 0, p, k)
            inst = games.sample_intersect_sc(k, p + 1, rng)
            dist = gadgets.build_distance_gadget(inst)
            reach = gadgets.build_reachability_gadget(inst)
            match = gadgets.build_matching_gadget(inst)
            nv_bad += dist.nv != (2 * p + 3) * k
            nv_bad += reach.nv != (2 * p + 3) * k
            nv_bad += match.nv != k * (4 * p + 6) - 2
    rows.append(CheckResult("gadgets", "vertex-count-errors", nv_bad, "=0", nv_bad == 0))

    t = trials or 200
    rng = derive_rng(seed, 3, 1)
    mism = 0
    floor_bad = 0
    bip_bad = 0
    rt_bad = 0
    ne_bad = 0
    for _ in range(t):
        k = int(rng.integers(2, 9))
        depth = int(rng.integers(1, 4))
        inst = games.sample_intersect_sc(k, depth, rng, include_prob=float(rng.uniform(0.1, 0.5)))
        truth = games.eval_intersect_sc(inst)
        dist = gadgets.build_distance_gadget(inst)
        reach = gadgets.build_reachability_gadget(inst)
        match = gadgets.build_matching_gadget(inst)
        d = oracles.oracle_distance(dist)
        mism += (d <= 2 * depth) != bool(truth)
        mism += oracles.oracle_reachable(reach) != truth
        mism += oracles.oracle_perfect_matching(match) != truth
        floor_bad += d < 2 * depth
        try:
            oracles.two_color(match)
        except ValueError:
            bip_bad += 1
        for g in (dist, reach, match):
            rt_bad += gadgets.parse_stream(gadgets.serialize_stream(g)) != g
        ne_bad += dist.ne != sum(
            tab.total_image_size() for side in (inst.left, inst.right) for tab in side.funcs
        )
    rows.append(CheckResult("gadgets", "oracle-mismatches", mism, "=0", mism == 0))
    rows.append(CheckResult("gadgets", "distance-floor-violations", floor_bad, "=0", floor_bad == 0))
    rows.append(CheckResult("gadgets", "non-bipartite-matching-gadgets", bip_bad, "=0", bip_bad == 0))
    rows.append(CheckResult("gadgets", "roundtrip-errors", rt_bad, "=0", rt_bad == 0))
    rows.append(CheckResult("gadgets", "edge-count-errors", ne_bad, "=0", ne_bad == 0))
    return rows


# --------------------------------------------------------- streaming suite


def _identity_gadget_pair(k: int, depth: int) -> games.IntersectScInstance:
    side = games.ScInstance(
        k, depth, tuple(games.SetFunctionTable.identity(k) for _ in range(depth))
    )
    return games.IntersectScInstance(side, side)


def _suite_streaming(seed: int, trials: Optional[int]) -> list[CheckResult]:
    rows: list[CheckResult] = []
    inst = _identity_gadget_pair(4, 2)
    dist = gadgets.build_distance_gadget(inst)
    reach = gadgets.build_reachability_gadget(inst)

    rep = streaming.run_streaming(streaming.alg_bidirectional_bfs(4), dist, 10)
    ok = rep.answer == 1 and rep.passes_used == 2
    rows.append(CheckResult("streaming", "bidir-bfs-gadget-passes", rep.passes_used, "=2", ok))

    rep = streaming.run_streaming(streaming.alg_forward_bfs(4), dist, 10)
    ok = rep.answer == 1 and rep.passes_used == 4
    rows.append(CheckResult("streaming", "forward-bfs-gadget-passes", rep.passes_used, "=4", ok))

    rep = streaming.run_streaming(streaming.alg_directed_frontier(), reach, 10)
    ok = rep.answer == 1 and rep.passes_used == 2
    rows.append(CheckResult("streaming", "frontier-chain-passes", rep.passes_used, "=2", ok))

    t = trials or 120
    rng = derive_rng(seed, 4, 0)
    mism = 0
    uf_pass_bad = 0
    rev_bad = 0
    for _ in range(t):
        k = int(rng.integers(2, 7))
        depth = int(rng.integers(1, 4))
        inst = games.sample_intersect_sc(k, depth, rng, include_prob=float(rng.uniform(0.1, 0.5)))
        truth = games.eval_intersect_sc(inst)
        d_g = gadgets.build_distance_gadget(inst)
        r_g = gadgets.build_reachability_gadget(inst)
        budget = 4 * depth + 4
        rep = streaming.run_streaming(streaming.alg_forward_bfs(2 * depth), d_g, budget)
        mism += rep.answer != truth
        rep = streaming.run_streaming(streaming.alg_bidirectional_bfs(2 * depth), d_g, budget)
        mism += rep.answer != truth
        rep = streaming.run_streaming(streaming.alg_directed_frontier(), r_g, d_g.nv + 1)
        mism += rep.answer != truth
        rep = streaming.run_streaming(streaming.alg_union_find(), d_g, 2)
        conn = oracles.oracle_distance(d_g) < math.inf
        mism += rep.answer != int(conn)
        uf_pass_bad += rep.passes_used != 1
        rev_bad += oracles.oracle_reachable(gadgets.reverse_stream(r_g)) != oracles.oracle_reachable(r_g)
        rev_bad += (
            oracles.oracle_distance(gadgets.reverse_stream(d_g)) != oracles.oracle_distance(d_g)
        )
    rows.append(CheckResult("streaming", "answer-mismatches", mism, "=0", mism == 0))
    rows.append(CheckResult("streaming", "union-find-pass-errors", uf_pass_bad, "=0", uf_pass_bad == 0))
    rows.append(CheckResult("streaming", "reversal-oracle-changes", rev_bad, "=0", rev_bad == 0))

    worst_ratio = 0.0
    for nv in (16, 64, 256):
        rng = derive_rng(seed, 4, 1, nv)
        edges = tuple(
            (int(a), int(b))
            for a, b in rng.integers(0, nv, size=(3 * nv, 2))
            if int(a) != int(b)
        )
        g = gadgets.GraphStream(nv, False, 0, nv - 1, 1, edges)
        rep = streaming.run_streaming(streaming.alg_union_find(), g, 2)
        worst_ratio = max(worst_ratio, rep.max_state_bits / (nv * max(1, (nv - 1).bit_length())))
    rows.append(
        CheckResult("streaming", "union-find-state-ratio", worst_ratio, "<=2", worst_ratio <= 2.0)
    )
    return rows


SUITES: dict[str, Callable[[int, Optional[int]], list[CheckResult]]] = {
    "info": _suite_info,
    "protocols": _suite_protocols,
    "reduction": _suite_reduction,
    "gadgets": _suite_gadgets,
    "streaming": _suite_streaming,
}


def run_suite(name: str, seed: int, trials: Optional[int] = None) -> list[CheckResult]:
    """Run one named suite, or all of them in a fixed order."""
    if name == "all":
        out: list[CheckResult] = []
        for key in ("info", "protocols", "reduction", "gadgets", "streaming"):
            out.extend(SUITES[key](seed, trials))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](seed, trials)
