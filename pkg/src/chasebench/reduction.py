"""Randomized reduction from OR-of-escape-equality to set-chase intersection.

The reduction scrambles each item's chase with fresh layer permutations
(shared at the outermost layer so equality survives), then overlays the t
scrambled items into one set-chase instance whose final sets intersect
whenever some item's chases agree.  A pre-round short-circuit handles the
non-injectivity escape: if any table is r-non-injective the answer is 1
before any scrambling happens.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import InfeasibleParametersError
from .games import (
    FunctionTable,
    IntersectScInstance,
    LpceInstance,
    OrLpceInstance,
    ScInstance,
    SetFunctionTable,
    is_r_non_injective,
)
from .protocols import Transcript

__all__ = [
    "ReductionParams",
    "choose_params",
    "PermutationFamily",
    "sample_permutation_family",
    "scramble",
    "overlay",
    "ShortCircuit",
    "reduce_or_lpce",
    "end_to_end_solve",
    "end_to_end_report",
    "EndToEndReport",
    "feasible",
]


def feasible(n: int, p: int, r: int, t: int) -> bool:
    """Exact check of the soundness budget: 10 * t^(2p) * r^(p-1) <= n."""
    return 10 * t ** (2 * p) * r ** (p - 1) <= n


@dataclass(frozen=True)
class ReductionParams:
    """Problem size (n, p, r) plus a fan-in t within the soundness budget."""

    n: int
    p: int
    r: int
    t: int

    def __post_init__(self):
        if min(self.n, self.p, self.r, self.t) < 1:
            raise ValueError("parameters must be positive")
        if not feasible(self.n, self.p, self.r, self.t):
            raise InfeasibleParametersError(
                f"t={self.t} violates 10*t^(2p)*r^(p-1) <= n for n={self.n}, p={self.p}, r={self.r}"
            )


def choose_params(n: int, p: int, r: int) -> ReductionParams:
    """Largest fan-in on the standard schedule, in exact integer arithmetic.

    Picks the largest t with (10*r*t^2)^p <= n, the integer form of
    t <= n^(1/(2p)) / sqrt(10*r).  Raises when even t=1 does not fit.
    """
    if n < 1 or p < 1 or r < 1:
        raise ValueError("parameters must be positive")
    t = 0
    while (10 * r * (t + 1) ** 2) ** p <= n:
        t += 1
    if t < 1:
        raise InfeasibleParametersError(
            f"no positive width satisfies (10*r*t^2)^p <= n for n={n}, p={p}, r={r}"
        )
    return ReductionParams(n, p, r, t)


@dataclass(frozen=True, eq=False)
class PermutationFamily:
    """Per-item, per-layer permutations for both chase sides.

    pi[j, i] scrambles layer i of item j's left chase; rho likewise on the
    right.  The outermost layers are shared: pi[j, 0] == rho[j, 0], which is
    what lets a scrambled equality survive as an intersection.
    """

    n: int
    pi: np.ndarray  # shape (t, p, n)
    rho: np.ndarray  # shape (t, p, n)

    def __post_init__(self):
        pi = np.asarray(self.pi, dtype=np.int64)
        rho = np.asarray(self.rho, dtype=np.int64)
        if pi.ndim != 3 or pi.shape != rho.shape or pi.shape[2] != self.n:
            raise ValueError("pi and rho must both have shape (t, p, n)")
        ref = np.arange(self.n)
        for fam in (pi, rho):
            flat = fam.reshape(-1, self.n)
            if not all(np.array_equal(np.sort(row), ref) for row in flat):
                raise ValueError("every row must be a permutation of [0, n)")
        if not np.array_equal(pi[:, 0, :], rho[:, 0, :]):
            raise ValueError("outermost layers must be shared between pi and rho")
        for name, fam in (("pi", pi), ("rho", rho)):
            fam = fam.copy()
            fam.flags.writeable = False
            object.__setattr__(self, name, fam)

    @property
    def t(self) -> int:
        return self.pi.shape[0]

    @property
    def p(self) -> int:
        return self.pi.shape[1]

    def inverse(self) -> "PermutationFamily":
        return PermutationFamily(self.n, np.argsort(self.pi, axis=2), np.argsort(self.rho, axis=2))


def sample_permutation_family(
    n: int, p: int, t: int, rng: np.random.Generator
) -> PermutationFamily:
    """Independent uniform permutations, except the shared outermost layer.

    Draw order per item: shared layer first, then remaining left layers, then
    remaining right layers, so a fixed seed pins the whole family.
    """
    pi = np.zeros((t, p, n), dtype=np.int64)
    rho = np.zeros((t, p, n), dtype=np.int64)
    for j in range(t):
        shared = rng.permutation(n)
        pi[j, 0] = shared
        rho[j, 0] = shared
        for i in range(1, p):
            pi[j, i] = rng.permutation(n)
        for i in range(1, p):
            rho[j, i] = rng.permutation(n)
    return PermutationFamily(n, pi, rho)


def _scramble_side(
    funcs: Sequence[FunctionTable], perms: np.ndarray
) -> tuple[FunctionTable, ...]:
    """Conjugate one chase's tables by the layer permutations.

    Layer i becomes perms[i] o f_i o perms[i+1]^-1; the innermost layer has
    no inner inverse so the chase still starts at the raw element 0.
    """
    p = len(funcs)
    n = funcs[0].n
    out = []
    for i in range(p):
        image = funcs[i].image
        if i + 1 < p:
            inner_inv = np.argsort(perms[i + 1])
            image = image[inner_inv]
        out.append(FunctionTable(n, perms[i][image]))
    return tuple(out)


def scramble(
    item: LpceInstance, j: int, perms: PermutationFamily
) -> tuple[tuple[FunctionTable, ...], tuple[FunctionTable, ...]]:
    """Scrambled copies of item's left and right tables under family slot j.

    The chase answers are carried through: each side's answer becomes the
    shared outermost permutation of the original answer, so equality (and
    every table's preimage-count profile) is preserved exactly.
    """
    if item.n != perms.n or item.p != perms.p:
        raise ValueError("permutation family does not match the item's shape")
    if not 0 <= j < perms.t:
        raise ValueError(f"item slot {j} outside [0, {perms.t})")
    left = _scramble_side(item.left.funcs, perms.pi[j])
    right = _scramble_side(item.right.funcs, perms.rho[j])
    return left, right


def overlay(
    scrambled: Sequence[tuple[Sequence[FunctionTable], Sequence[FunctionTable]]]
) -> IntersectScInstance:
    """Merge t scrambled items into one set-chase intersection instance.

    Layer i of the result maps x to the set of the t scrambled layer-i
    values at x (duplicates collapse).
    """
    if not scrambled:
        raise ValueError("need at least one scrambled item")
    n = scrambled[0][0][0].n
    p = len(scrambled[0][0])

    def overlay_side(side: int) -> ScInstance:
        tables = []
        for i in range(p):
            stacked = np.sort(
                np.stack([np.asarray(pair[side][i].image) for pair in scrambled]), axis=0
            )
            keep = np.ones_like(stacked, dtype=bool)
            keep[1:] = stacked[1:] != stacked[:-1]
            offsets = np.zeros(n + 1, dtype=np.int64)
            offsets[1:] = np.cumsum(keep.sum(axis=0))
            values = stacked.T[keep.T]
            tables.append(SetFunctionTable(n, offsets, values))
        return ScInstance(n, p, tuple(tables))

    return IntersectScInstance(overlay_side(0), overlay_side(1))


@dataclass(frozen=True)
class ShortCircuit:
    """Pre-round outcome: some table tripped the non-injectivity escape.

    witness is (item, side, layer) of the first offending table, sides being
    0=left, 1=right.  The game answer is 1 by definition in this case.
    """

    witness: tuple[int, int, int]

    @property
    def answer(self) -> int:
        return 1


def _find_non_injective(inst: OrLpceInstance) -> tuple[int, int, int] | None:
    for j, item in enumerate(inst.items):
        for side, chase in enumerate((item.left, item.right)):
            for i, f in enumerate(chase.funcs):
                if is_r_non_injective(f, inst.r):
                    return (j, side, i)
    return None


def reduce_or_lpce(
    inst: OrLpceInstance,
    rng: np.random.Generator,
    *,
    check_feasible: bool = True,
) -> Union[IntersectScInstance, ShortCircuit]:
    """Randomized reduction to set-chase intersection.

    Completeness is deterministic: an OR answer of 1 always maps to an
    intersecting instance.  Soundness (a 0 maps to non-intersecting with
    probability >= 9/10) additionally needs the parameter budget checked by
    `feasible`; pass check_feasible=False to run the map outside the budget,
    e.g. for completeness-only experiments.
    """
    if check_feasible and not feasible(inst.n, inst.p, inst.r, inst.t):
        raise InfeasibleParametersError(
            f"10*t^(2p)*r^(p-1) > n for n={inst.n}, p={inst.p}, r={inst.r}, t={inst.t}"
        )
    witness = _find_non_injective(inst)
    if witness is not None:
        return ShortCircuit(witness)
    perms = sample_permutation_family(inst.n, inst.p, inst.t, rng)
    pairs = [scramble(item, j, perms) for j, item in enumerate(inst.items)]
    return overlay(pairs)


Solver = Callable[[IntersectScInstance], tuple[int, Transcript]]


@dataclass(frozen=True)
class EndToEndReport:
    """Outcome of solving an OR instance through the reduction."""

    answer: int
    communication_bits: int
    short_circuited: bool


def end_to_end_report(
    inst: OrLpceInstance,
    solver: Solver,
    rng: np.random.Generator,
    *,
    check_feasible: bool = True,
) -> EndToEndReport:
    """Reduce, then run a set-chase intersection solver on the result.

    Communication accounting charges one pre-round bit per player (2p bits,
    each player reporting whether any table they hold is non-injective) on
    top of whatever the solver's transcript used.
    """
    pre_round_bits = 2 * inst.p
    reduced = reduce_or_lpce(inst, rng, check_feasible=check_feasible)
    if isinstance(reduced, ShortCircuit):
        return EndToEndReport(1, pre_round_bits, True)
    answer, transcript = solver(reduced)
    return EndToEndReport(answer, pre_round_bits + transcript.total_bits, False)


def end_to_end_solve(
    inst: OrLpceInstance,
    solver: Solver,
    rng: np.random.Generator,
    *,
    check_feasible: bool = True,
) -> int:
    """Answer bit of `end_to_end_report` (short-circuits pass through as 1)."""
    return end_to_end_report(inst, solver, rng, check_feasible=check_feasible).answer
