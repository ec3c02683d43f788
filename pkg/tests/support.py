"""Shared generators for randomized tests."""

from __future__ import annotations

import random
from fractions import Fraction

from gridideals import (
    ColumnSpec,
    SequenceFamily,
    SetDescriptor,
    EVENTUALLY_CONSTANT,
    NONDECREASING,
    NONINCREASING,
)


def random_points(rng: random.Random, width: int, height: int, max_n: int):
    n = rng.randint(0, max_n)
    pool = [(c, r) for c in range(width) for r in range(height)]
    return tuple(sorted(rng.sample(pool, min(n, len(pool)))))


def random_sparse_chain(rng: random.Random, max_len: int = 10):
    """Consecutive growth keeps every pair mutually sparse."""
    n = rng.randint(1, max_len)
    pts = []
    col = rng.randint(0, 3)
    for _ in range(n):
        row = rng.randint(0, 6)
        pts.append((col, row))
        col = col + row + 1 + rng.randint(0, 3)
    return tuple(pts)


def random_vertical_sample(rng: random.Random, max_len: int = 10):
    c = rng.randint(0, 7)
    rows = sorted(rng.sample(range(24), rng.randint(1, max_len)))
    return tuple((c, r) for r in rows)


def random_descriptor(rng: random.Random) -> SetDescriptor:
    cols = rng.sample(range(12), rng.randint(0, 3))
    tails = [(rng.randint(0, 12), rng.randint(1, 6)) for _ in range(rng.randint(0, 2))]
    pts = [(rng.randint(0, 12), rng.randint(0, 12)) for _ in range(rng.randint(0, 5))]
    return SetDescriptor.build(cols, tails, pts)


def random_witness_family(rng: random.Random, level: int):
    """level+1 points with increasing columns and sums beyond the last."""
    cols = sorted(rng.sample(range(0, 24), level + 1))
    last = cols[-1]
    return tuple((c, last - c + 1 + rng.randint(0, 4)) for c in cols)


def _approach_below(limit):
    return lambda j: limit - Fraction(1, j + 2)


def _approach_above(limit):
    return lambda j: limit + Fraction(1, j + 2)


def _constant_from(limit, pivot):
    def term(j):
        if j >= pivot:
            return limit
        return limit - (pivot - j)

    return term


def _random_jmap(rng: random.Random):
    a = rng.randint(1, 3)
    b = rng.randint(0, 2)
    return lambda k: a * k + b


def family_limits_increasing(rng: random.Random, n_cols: int) -> SequenceFamily:
    cols = []
    base = Fraction(rng.randint(0, 3))
    for i in range(n_cols):
        base += Fraction(rng.randint(1, 4), rng.choice([1, 2, 3]))
        jmap = _random_jmap(rng)
        if rng.random() < 0.25:
            thr = rng.randint(0, 3)
            cols.append(
                ColumnSpec(EVENTUALLY_CONSTANT, base, _constant_from(base, jmap(thr)), jmap, thr)
            )
        else:
            cols.append(ColumnSpec(NONDECREASING, base, _approach_below(base), jmap))
    return SequenceFamily(tuple(cols))


def family_constant_eventually(rng: random.Random, n_cols: int) -> SequenceFamily:
    value = Fraction(rng.randint(-3, 6), rng.choice([1, 2, 3]))
    cols = []
    for _ in range(n_cols):
        jmap = _random_jmap(rng)
        thr = rng.randint(0, 4)
        cols.append(
            ColumnSpec(EVENTUALLY_CONSTANT, value, _constant_from(value, jmap(thr)), jmap, thr)
        )
    return SequenceFamily(tuple(cols))


def family_constant_increasing(rng: random.Random, n_cols: int) -> SequenceFamily:
    value = Fraction(rng.randint(-3, 6), rng.choice([1, 2, 3]))
    cols = [
        ColumnSpec(NONDECREASING, value, _approach_below(value), _random_jmap(rng))
        for _ in range(n_cols)
    ]
    return SequenceFamily(tuple(cols))


def family_limits_decreasing(rng: random.Random, n_cols: int) -> SequenceFamily:
    cols = []
    base = Fraction(4 * n_cols + rng.randint(0, 5))
    for _ in range(n_cols):
        base -= Fraction(rng.randint(2, 4))
        cols.append(ColumnSpec(NONDECREASING, base, _approach_below(base), _random_jmap(rng)))
    return SequenceFamily(tuple(cols))


def family_dual_decreasing(rng: random.Random, n_cols: int) -> SequenceFamily:
    """Nonincreasing columns whose limits strictly decrease, like terms
    1/(i+2) + 1/(j+2): only the mirrored pipeline can serve them."""
    cols = []
    base = Fraction(4 * n_cols + rng.randint(0, 5))
    for _ in range(n_cols):
        base -= Fraction(rng.randint(1, 3))
        cols.append(ColumnSpec(NONINCREASING, base, _approach_above(base), _random_jmap(rng)))
    return SequenceFamily(tuple(cols))


MON_FAMILY_MAKERS = {
    "limits-increasing": family_limits_increasing,
    "constant-terms-constant": family_constant_eventually,
    "constant-terms-increasing": family_constant_increasing,
    "limits-decreasing": family_limits_decreasing,
}


def mirror_family(fam: SequenceFamily) -> SequenceFamily:
    """Negate every column, swapping the declared directions."""
    swapped = {
        NONDECREASING: NONINCREASING,
        NONINCREASING: NONDECREASING,
        EVENTUALLY_CONSTANT: EVENTUALLY_CONSTANT,
    }

    def negate(term):
        return lambda j: -term(j)

    cols = tuple(
        ColumnSpec(swapped[s.mode], -s.limit, negate(s.term), s.jmap, s.threshold)
        for s in fam.columns
    )
    return SequenceFamily(cols, fam.depth)
