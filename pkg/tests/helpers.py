"""Shared builders for the test suite (no assertions live here)."""
from __future__ import annotations

import numpy as np

import chasebench as cb


def set_table(n: int, rows) -> cb.SetFunctionTable:
    """Build a set-valued table from a list of per-element target iterables."""
    offsets = np.zeros(n + 1, dtype=np.int64)
    flat: list[int] = []
    for x, row in enumerate(rows):
        targets = sorted(row)
        offsets[x + 1] = offsets[x] + len(targets)
        flat.extend(targets)
    return cb.SetFunctionTable(n, offsets, np.array(flat, dtype=np.int64))


def identity_set_table(n: int) -> cb.SetFunctionTable:
    return set_table(n, [[x] for x in range(n)])


def identity_instance(k: int, depth: int) -> cb.IntersectScInstance:
    """Both sides chase the singleton {x} -> {x}; the final sets intersect."""
    f = identity_set_table(k)
    side = cb.ScInstance(k, depth, tuple([f] * depth))
    return cb.IntersectScInstance(side, side)


def intersect_instance(k: int, left_tables, right_tables) -> cb.IntersectScInstance:
    depth = len(left_tables)
    return cb.IntersectScInstance(
        cb.ScInstance(k, depth, tuple(left_tables)),
        cb.ScInstance(k, depth, tuple(right_tables)),
    )


def all_set_tables(k: int) -> list[cb.SetFunctionTable]:
    """Every mapping from [k] to subsets of [k]; 2**(k*k) tables."""
    subsets = [[i for i in range(k) if mask >> i & 1] for mask in range(2**k)]
    out = []
    idx = [0] * k
    while True:
        out.append(set_table(k, [subsets[i] for i in idx]))
        for pos in range(k - 1, -1, -1):
            idx[pos] += 1
            if idx[pos] < len(subsets):
                break
            idx[pos] = 0
        else:
            return out


def brute_eval_sc(inst: cb.ScInstance) -> frozenset[int]:
    """Pure-python reference for the set chase (applies funcs[p-1] first)."""
    cur = {0}
    for f in reversed(inst.funcs):
        nxt: set[int] = set()
        for x in cur:
            lo, hi = int(f.offsets[x]), int(f.offsets[x + 1])
            nxt.update(int(v) for v in f.values[lo:hi])
        cur = nxt
    return frozenset(cur)


def brute_intersect(inst: cb.IntersectScInstance) -> int:
    return int(bool(brute_eval_sc(inst.left) & brute_eval_sc(inst.right)))
