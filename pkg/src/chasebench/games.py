"""Pointer-chase and set-chase game instances, evaluators, and samplers.

The games here are communication problems: p players each hold one function
table over a common ground set of size n, and the quantity of interest is a
nested application of those tables.  A pointer chase follows single values,
a set chase follows subsets under vectorized application.  On top of the two
chases sit the derived predicates: equality of two chases, equality with a
non-injectivity escape hatch, set-chase intersection, and a t-way OR.

Indexing convention: ground-set elements, table indices, and players are all
0-based.  The chase starts at element 0 (the traditional "start at 1" with
labels shifted down).  Serializers in `gameio` keep the same convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FunctionTable",
    "SetFunctionTable",
    "PcInstance",
    "ScInstance",
    "LpceInstance",
    "OrLpceInstance",
    "IntersectScInstance",
    "vec_apply",
    "eval_pc",
    "eval_sc",
    "is_r_non_injective",
    "eval_equal_pc",
    "eval_lpce",
    "eval_intersect_sc",
    "eval_or_lpce",
    "sample_uniform_function",
    "sample_uniform_pc",
    "sample_uniform_lpce",
    "sample_uniform_or_lpce",
    "sample_set_function",
    "sample_intersect_sc",
    "force_equal",
]


def _frozen_array(values, dtype=np.int64) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(values, dtype=dtype))
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """A total mapping from [0, n) to [0, n), stored as an image array.

    image[x] is the value the table assigns to x.  Instances are immutable:
    the array is made read-only at construction.
    """

    n: int
    image: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set must be nonempty")
        image = np.asarray(self.image, dtype=np.int64)
        if image.shape != (self.n,):
            raise ValueError(f"image must have shape ({self.n},), got {image.shape}")
        if image.min() < 0 or image.max() >= self.n:
            raise ValueError("image values must lie in [0, n)")
        object.__setattr__(self, "image", _frozen_array(image))

    @classmethod
    def identity(cls, n: int) -> "FunctionTable":
        return cls(n, np.arange(n))

    @classmethod
    def constant(cls, n: int, value: int) -> "FunctionTable":
        return cls(n, np.full(n, value))

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def __eq__(self, other):
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.image, other.image)


@dataclass(frozen=True, eq=False)
class SetFunctionTable:
    """A total mapping from [0, n) to subsets of [0, n).

    Rows are packed: the image of x is values[offsets[x]:offsets[x+1]],
    strictly ascending.  Empty images are allowed.
    """

    n: int
    offsets: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set must be nonempty")
        offsets = np.asarray(self.offsets, dtype=np.int64)
        values = np.asarray(self.values, dtype=np.int64)
        if offsets.shape != (self.n + 1,) or offsets[0] != 0:
            raise ValueError("offsets must have shape (n+1,) and start at 0")
        if np.any(np.diff(offsets) < 0) or offsets[-1] != values.size:
            raise ValueError("offsets must be nondecreasing and end at len(values)")
        if values.size and (values.min() < 0 or values.max() >= self.n):
            raise ValueError("image values must lie in [0, n)")
        if values.size > 1:
            # ascending within each row: any non-increase must sit on a row boundary
            non_incr = np.nonzero(np.diff(values) <= 0)[0] + 1
            starts = set(offsets[1:-1].tolist())
            if any(int(i) not in starts for i in non_incr):
                raise ValueError("each image row must be strictly ascending")
        object.__setattr__(self, "offsets", _frozen_array(offsets))
        object.__setattr__(self, "values", _frozen_array(values))

    @classmethod
    def from_sets(cls, n: int, sets: Sequence[Iterable[int]]) -> "SetFunctionTable":
        if len(sets) != n:
            raise ValueError("need exactly one image set per ground-set element")
        rows = [np.array(sorted(set(int(y) for y in s)), dtype=np.int64) for s in sets]
        offsets = np.zeros(n + 1, dtype=np.int64)
        offsets[1:] = np.cumsum([r.size for r in rows])
        values = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
        return cls(n, offsets, values)

    @classmethod
    def identity(cls, n: int) -> "SetFunctionTable":
        return cls(n, np.arange(n + 1), np.arange(n))

    @classmethod
    def from_function(cls, table: FunctionTable) -> "SetFunctionTable":
        """Singleton-image table computing the same chase as `table`."""
        return cls(table.n, np.arange(table.n + 1), table.image.copy())

    def image(self, x: int) -> np.ndarray:
        if not 0 <= x < self.n:
            raise ValueError(f"element {x} outside [0, {self.n})")
        return self.values[self.offsets[x]:self.offsets[x + 1]]

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(self.image(x).tolist()) for x in range(self.n)]

    def total_image_size(self) -> int:
        return int(self.values.size)

    def __eq__(self, other):
        if not isinstance(other, SetFunctionTable):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.values, other.values)
        )


def _check_layer_shapes(n: int, p: int, funcs, kind) -> None:
    if p < 1:
        raise ValueError("need at least one layer")
    if len(funcs) != p:
        raise ValueError(f"expected {p} tables, got {len(funcs)}")
    for f in funcs:
        if not isinstance(f, kind):
            raise TypeError(f"layer tables must be {kind.__name__}")
        if f.n != n:
            raise ValueError("all layers must share the same ground set size")


@dataclass(frozen=True, eq=False)
class PcInstance:
    """A pointer chase: p function tables applied innermost-last-first.

    funcs[0] is the outermost table (applied last); funcs[p-1] is applied
    first to the start element 0.
    """

    n: int
    p: int
    funcs: tuple[FunctionTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "funcs", tuple(self.funcs))
        _check_layer_shapes(self.n, self.p, self.funcs, FunctionTable)

    def __eq__(self, other):
        if not isinstance(other, PcInstance):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self.funcs == other.funcs


@dataclass(frozen=True, eq=False)
class ScInstance:
    """A set chase: like PcInstance but with set-valued tables."""

    n: int
    p: int
    funcs: tuple[SetFunctionTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "funcs", tuple(self.funcs))
        _check_layer_shapes(self.n, self.p, self.funcs, SetFunctionTable)

    def __eq__(self, other):
        if not isinstance(other, ScInstance):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self.funcs == other.funcs


@dataclass(frozen=True, eq=False)
class LpceInstance:
    """Two pointer chases plus a non-injectivity escape threshold r.

    The predicate is forced to 1 whenever any table has some output with at
    least r preimages; otherwise it is plain equality of the two chases.
    """

    left: PcInstance
    right: PcInstance
    r: int

    def __post_init__(self):
        if self.left.n != self.right.n or self.left.p != self.right.p:
            raise ValueError("left and right chases must have matching n and p")
        if self.r < 1:
            raise ValueError("escape threshold r must be positive")

    @property
    def n(self) -> int:
        return self.left.n

    @property
    def p(self) -> int:
        return self.left.p

    def tables(self) -> tuple[FunctionTable, ...]:
        return self.left.funcs + self.right.funcs

    def __eq__(self, other):
        if not isinstance(other, LpceInstance):
            return NotImplemented
        return self.left == other.left and self.right == other.right and self.r == other.r


@dataclass(frozen=True, eq=False)
class OrLpceInstance:
    """A t-way OR of escape-equality items sharing n, p, and r."""

    t: int
    items: tuple[LpceInstance, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if self.t < 1 or len(self.items) != self.t:
            raise ValueError("need exactly t >= 1 items")
        first = self.items[0]
        for item in self.items:
            if item.n != first.n or item.p != first.p or item.r != first.r:
                raise ValueError("all items must share n, p, and r")

    @property
    def n(self) -> int:
        return self.items[0].n

    @property
    def p(self) -> int:
        return self.items[0].p

    @property
    def r(self) -> int:
        return self.items[0].r

    def __eq__(self, other):
        if not isinstance(other, OrLpceInstance):
            return NotImplemented
        return self.t == other.t and self.items == other.items


@dataclass(frozen=True, eq=False)
class IntersectScInstance:
    """Two set chases; the predicate asks whether the final sets intersect."""

    left: ScInstance
    right: ScInstance

    def __post_init__(self):
        if self.left.n != self.right.n or self.left.p != self.right.p:
            raise ValueError("left and right chases must have matching n and p")

    @property
    def n(self) -> int:
        return self.left.n

    @property
    def p(self) -> int:
        return self.left.p

    def __eq__(self, other):
        if not isinstance(other, IntersectScInstance):
            return NotImplemented
        return self.left == other.left and self.right == other.right


# ---------------------------------------------------------------------------
# evaluators


def _vec_apply_sorted(f: SetFunctionTable, elems: np.ndarray) -> np.ndarray:
    """Union of image rows for a sorted element array; returns a sorted array."""
    if elems.size == 0:
        return np.zeros(0, dtype=np.int64)
    parts = [f.values[f.offsets[x]:f.offsets[x + 1]] for x in elems.tolist()]
    joined = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    return np.unique(joined)


def vec_apply(f: SetFunctionTable, s: Iterable[int]) -> frozenset[int]:
    """Union of f's image sets over the elements of s."""
    elems = sorted(set(int(x) for x in s))
    for x in elems:
        if not 0 <= x < f.n:
            raise ValueError(f"element {x} outside [0, {f.n})")
    out = _vec_apply_sorted(f, np.array(elems, dtype=np.int64))
    return frozenset(out.tolist())


def eval_pc(inst: PcInstance) -> int:
    """Chase the start element 0 through the tables, innermost first."""
    x = 0
    for f in reversed(inst.funcs):
        x = int(f.image[x])
    return x


def eval_sc(inst: ScInstance) -> frozenset[int]:
    """Chase the start set {0} through the set tables, innermost first."""
    cur = np.array([0], dtype=np.int64)
    for f in reversed(inst.funcs):
        cur = _vec_apply_sorted(f, cur)
    return frozenset(cur.tolist())


def is_r_non_injective(f: FunctionTable, r: int) -> bool:
    """True when some output value has at least r preimages."""
    if r < 1:
        raise ValueError("r must be positive")
    if r > f.n:
        return False
    return int(np.bincount(f.image, minlength=f.n).max()) >= r


def eval_equal_pc(left: PcInstance, right: PcInstance) -> int:
    if left.n != right.n or left.p != right.p:
        raise ValueError("chases must have matching n and p")
    return int(eval_pc(left) == eval_pc(right))


def eval_lpce(inst: LpceInstance) -> int:
    """Equality with escape: 1 if any table is r-non-injective, else equality."""
    if any(is_r_non_injective(f, inst.r) for f in inst.tables()):
        return 1
    return eval_equal_pc(inst.left, inst.right)


def eval_intersect_sc(inst: IntersectScInstance) -> int:
    return int(bool(eval_sc(inst.left) & eval_sc(inst.right)))


def eval_or_lpce(inst: OrLpceInstance) -> int:
    return int(any(eval_lpce(item) for item in inst.items))


# ---------------------------------------------------------------------------
# samplers
#
# All samplers draw from the supplied generator in a documented fixed order,
# so identical seeds reproduce identical instances bit for bit.


def sample_uniform_function(n: int, rng: np.random.Generator) -> FunctionTable:
    """A uniformly random function table: each image entry iid uniform."""
    return FunctionTable(n, rng.integers(0, n, size=n))


def sample_uniform_pc(n: int, p: int, rng: np.random.Generator) -> PcInstance:
    """Uniform pointer chase; tables drawn in funcs order (outermost first)."""
    return PcInstance(n, p, tuple(sample_uniform_function(n, rng) for _ in range(p)))


def sample_uniform_lpce(n: int, p: int, r: int, rng: np.random.Generator) -> LpceInstance:
    """Uniform escape-equality item; left chase drawn before right."""
    left = sample_uniform_pc(n, p, rng)
    right = sample_uniform_pc(n, p, rng)
    return LpceInstance(left, right, r)


def sample_uniform_or_lpce(
    n: int, p: int, r: int, t: int, rng: np.random.Generator
) -> OrLpceInstance:
    """Uniform t-way OR instance; items drawn in index order."""
    return OrLpceInstance(t, tuple(sample_uniform_lpce(n, p, r, rng) for _ in range(t)))


def sample_set_function(
    n: int, rng: np.random.Generator, include_prob: float = 0.5
) -> SetFunctionTable:
    """Random set table with iid membership coins of the given bias.

    include_prob=0.5 is the uniform distribution over all set tables.
    """
    if not 0.0 <= include_prob <= 1.0:
        raise ValueError("include_prob must be a probability")
    mask = rng.random((n, n)) < include_prob
    rows, cols = np.nonzero(mask)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.add.at(offsets, rows + 1, 1)
    offsets = np.cumsum(offsets)
    return SetFunctionTable(n, offsets, cols.astype(np.int64))


def sample_intersect_sc(
    n: int, p: int, rng: np.random.Generator, include_prob: float = 0.5
) -> IntersectScInstance:
    """Random intersection instance; left tables drawn before right."""
    left = ScInstance(n, p, tuple(sample_set_function(n, rng, include_prob) for _ in range(p)))
    right = ScInstance(n, p, tuple(sample_set_function(n, rng, include_prob) for _ in range(p)))
    return IntersectScInstance(left, right)


def force_equal(inst: LpceInstance) -> LpceInstance:
    """Minimal edit making both chases land on the same element.

    Rewrites one entry of the right chase's outermost table so the right
    chase ends at the left chase's answer.  Everything else is untouched;
    the result may still short-circuit if some table is r-non-injective.
    """
    target = eval_pc(inst.left)
    x = 0
    for f in reversed(inst.right.funcs[1:]):
        x = int(f.image[x])
    outer = inst.right.funcs[0].image.copy()
    outer[x] = target
    new_right = PcInstance(
        inst.right.n, inst.right.p, (FunctionTable(inst.right.n, outer),) + inst.right.funcs[1:]
    )
    return LpceInstance(inst.left, new_right, inst.r)
