"""Grid points, orderings, and the pair colorings everything else shares."""

from __future__ import annotations

from typing import Callable, Iterable

Point = tuple[int, int]


def point_sum(p: Point) -> int:
    """Coordinate sum col + row."""
    return p[0] + p[1]


def canonical_points(points: Iterable[Point]) -> tuple[Point, ...]:
    """Deduplicated and sorted by (col, row)."""
    return tuple(sorted(set(points)))


def window_points(cols: int, rows: int | None = None) -> list[Point]:
    """All points with col < cols and row < rows, column-major order."""
    if rows is None:
        rows = cols
    return [(c, r) for c in range(cols) for r in range(rows)]


def lex_before(a: Point, b: Point) -> bool:
    """Strict lexicographic comparison by (col, row)."""
    return a < b


def sparse_pair_color(a: Point, b: Point) -> int:
    """0 when the pair fits inside one sparse chain, 1 otherwise.

    Ordering the two points lexicographically, color 0 means the larger
    point's column exceeds the smaller point's coordinate sum.  Symmetric
    in its arguments; defined on distinct points only.
    """
    if a == b:
        raise ValueError("pair required")
    lo, hi = (a, b) if a < b else (b, a)
    return 0 if hi[0] > lo[0] + lo[1] else 1


def nondecreasing_pair_color(a: Point, b: Point) -> int:
    """0 when the pair fits on the graph of a nondecreasing function."""
    if a == b:
        raise ValueError("pair required")
    lo, hi = (a, b) if a < b else (b, a)
    return 0 if lo[0] < hi[0] and lo[1] <= hi[1] else 1


def is_sparse_chain(points: Iterable[Point]) -> bool:
    """True when every pair is mutually sparse: each later column lies
    beyond the earlier point's coordinate sum.

    Checking consecutive points of the canonical enumeration suffices
    because columns are nondecreasing along it.  Empty sets and singletons
    qualify.
    """
    pts = canonical_points(points)
    for a, b in zip(pts, pts[1:]):
        if b[0] <= a[0] + a[1]:
            return False
    return True


def is_ranked_chain(rank: Callable[[Point], int], points: Iterable[Point]) -> bool:
    """Chain condition for a ranked family.

    Columns strictly increase, ranks strictly increase, and every point's
    column is at least the rank of each earlier point.  As with sparse
    chains, consecutive pairs of the canonical enumeration decide it.
    """
    pts = canonical_points(points)
    for a, b in zip(pts, pts[1:]):
        if b[0] <= a[0]:
            return False
        if rank(b) <= rank(a) or b[0] < rank(a):
            return False
    return True
