"""Named ideal presentations and a small symbolic algebra of infinite sets.

Descriptors denote finite unions of whole columns, column tails, and
finite point sets.  That algebra is deliberately tiny: it covers every
infinite set the supported constructions manipulate while keeping
membership in each presented ideal decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .covering import IdealError
from .grid import Point, canonical_points
from .gridmaps import DIAG_RANK, RankMap


@dataclass(frozen=True)
class SetDescriptor:
    """Symbolic subset of the grid: columns, column tails, finite points.

    Canonical form: a tail never starts at row 0, never sits on a listed
    column, and the points immediately below it are folded into it;
    listed points never lie on a column or inside a tail.
    """

    columns: frozenset[int] = frozenset()
    tails: tuple[tuple[int, int], ...] = ()
    points: frozenset[Point] = frozenset()

    @staticmethod
    def build(columns=(), tails=(), points=()) -> "SetDescriptor":
        cols = set(columns)
        tail_map: dict[int, int] = {}
        for c, start in tails:
            if start <= 0:
                cols.add(c)
            else:
                prev = tail_map.get(c)
                tail_map[c] = start if prev is None else min(prev, start)
        pts = set(points)
        for c in list(tail_map):
            if c in cols:
                del tail_map[c]
                continue
            start = tail_map[c]
            while (c, start - 1) in pts:
                pts.discard((c, start - 1))
                start -= 1
            if start <= 0:
                cols.add(c)
                del tail_map[c]
            else:
                tail_map[c] = start
        pts = {
            p
            for p in pts
            if p[0] not in cols
            and not (p[0] in tail_map and p[1] >= tail_map[p[0]])
        }
        return SetDescriptor(frozenset(cols), tuple(sorted(tail_map.items())), frozenset(pts))

    def contains(self, p: Point) -> bool:
        c, r = p
        if c in self.columns:
            return True
        for tc, start in self.tails:
            if tc == c and r >= start:
                return True
        return p in self.points

    def union(self, other: "SetDescriptor") -> "SetDescriptor":
        return SetDescriptor.build(
            self.columns | other.columns,
            self.tails + other.tails,
            self.points | other.points,
        )

    __or__ = union

    def intersect(self, other: "SetDescriptor") -> "SetDescriptor":
        cols = self.columns & other.columns
        t1 = dict(self.tails)
        t2 = dict(other.tails)
        tails = []
        for c in self.columns:
            if c in t2:
                tails.append((c, t2[c]))
        for c in other.columns:
            if c in t1:
                tails.append((c, t1[c]))
        for c, s in t1.items():
            if c in t2:
                tails.append((c, max(s, t2[c])))
        pts = {p for p in self.points if other.contains(p)}
        pts |= {p for p in other.points if self.contains(p)}
        return SetDescriptor.build(cols, tails, pts)

    __and__ = intersect

    def is_finite(self) -> bool:
        return not self.columns and not self.tails

    def is_empty(self) -> bool:
        return self.is_finite() and not self.points

    def infinite_columns(self) -> tuple[int, ...]:
        """Columns the denoted set meets infinitely often."""
        return tuple(sorted(self.columns | {c for c, _ in self.tails}))

    def finite_part(self) -> tuple[Point, ...]:
        return canonical_points(self.points)

    def to_json(self) -> dict:
        return {
            "columns": sorted(self.columns),
            "tails": [list(t) for t in self.tails],
            "points": [list(p) for p in canonical_points(self.points)],
        }

    @staticmethod
    def from_json(obj: dict) -> "SetDescriptor":
        return SetDescriptor.build(
            obj.get("columns", ()),
            [tuple(t) for t in obj.get("tails", ())],
            [tuple(p) for p in obj.get("points", ())],
        )


def empty_set() -> SetDescriptor:
    return SetDescriptor.build()


def column(c: int) -> SetDescriptor:
    return SetDescriptor.build(columns=(c,))


def column_tail(c: int, start: int) -> SetDescriptor:
    return SetDescriptor.build(tails=((c, start),))


def finite_points(points: Iterable[Point]) -> SetDescriptor:
    return SetDescriptor.build(points=points)


def pick_outside(d: SetDescriptor, strategy: str = "least-lex", beyond: int | None = None) -> Point:
    """A point outside the denoted set, chosen deterministically.

    least-lex scans columns from 0; least-col-beyond takes the first
    not-fully-covered column past the given one.  No descriptor denotes
    the whole grid, so both terminate.
    """
    tails = dict(d.tails)

    def first_free_row(c: int) -> int | None:
        if c in d.columns:
            return None
        limit = tails.get(c)
        r = 0
        while limit is None or r < limit:
            if (c, r) not in d.points:
                return r
            r += 1
        return None

    if strategy == "least-lex":
        start = 0
    elif strategy == "least-col-beyond":
        if beyond is None:
            raise ValueError("least-col-beyond needs the column bound")
        start = beyond + 1
    else:
        raise ValueError(f"unknown strategy: {strategy!r}")
    c = start
    while True:
        r = first_free_row(c)
        if r is not None:
            return (c, r)
        c += 1


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class IdealPresentation:
    """A named generator system.

    Atomic families: Fin, WR, ED, EDup, FinxFin, EmptyxFin, and WRpi
    (parameterized by a rank map).  Composite families: direct sums and
    restrictions.
    """

    family: str
    rank_map: RankMap | None = None
    left: "IdealPresentation | None" = None
    right: "IdealPresentation | None" = None
    base: "IdealPresentation | None" = None
    carrier: SetDescriptor | None = None

    def describe(self) -> str:
        if self.family == "WRpi":
            return f"WRpi({self.rank_map.name})"
        if self.family == "sum":
            return f"({self.left.describe()} (+) {self.right.describe()})"
        if self.family == "restrict":
            return f"{self.base.describe()}|carrier"
        return self.family


FIN = IdealPresentation("Fin")
WR = IdealPresentation("WR")
ED = IdealPresentation("ED")
EDUP = IdealPresentation("EDup")
FIN_X_FIN = IdealPresentation("FinxFin")
EMPTY_X_FIN = IdealPresentation("EmptyxFin")


def wr_pi(rank_map: RankMap) -> IdealPresentation:
    return IdealPresentation("WRpi", rank_map=rank_map)


def direct_sum(left: IdealPresentation, right: IdealPresentation) -> IdealPresentation:
    return IdealPresentation("sum", left=left, right=right)


def restrict(base: IdealPresentation, carrier: SetDescriptor) -> IdealPresentation:
    return IdealPresentation("restrict", base=base, carrier=carrier)


def split_by_parity(d: SetDescriptor) -> tuple[SetDescriptor, SetDescriptor]:
    """Split a descriptor between the two summands of a direct sum.

    Direct sums live on the grid by interleaving columns, even columns
    carrying the left component and odd ones the right.
    """
    sides: tuple = (([], [], []), ([], [], []))
    for c in d.columns:
        sides[c % 2][0].append(c // 2)
    for c, s in d.tails:
        sides[c % 2][1].append((c // 2, s))
    for c, r in d.points:
        sides[c % 2][2].append((c // 2, r))
    return tuple(SetDescriptor.build(*part) for part in sides)


_ALWAYS_CONTAIN = {"WR", "WRpi", "ED", "EDup", "FinxFin"}
_FINITE_ONLY = {"Fin", "EmptyxFin"}


def descriptor_in_ideal(ideal: IdealPresentation, d: SetDescriptor) -> bool:
    """Exact membership of the denoted set in the presented ideal.

    Columns and tails are inside (or covered by) single generators of the
    line-generated families, and finite sets are in everything, so any
    descriptor is a member there.  The sets finite on every column reject
    descriptors with a column or tail atom, and composites delegate.
    """
    fam = ideal.family
    if fam in _ALWAYS_CONTAIN:
        return True
    if fam in _FINITE_ONLY:
        return d.is_finite()
    if fam == "sum":
        dl, dr = split_by_parity(d)
        return descriptor_in_ideal(ideal.left, dl) and descriptor_in_ideal(ideal.right, dr)
    if fam == "restrict":
        return descriptor_in_ideal(ideal.base, d.intersect(ideal.carrier))
    raise IdealError(f"no symbolic membership for {fam!r}")


# ---------------------------------------------------------------------------
# dense subsets


def dense_subset(
    ideal: IdealPresentation,
    universe,
    n: int,
    *,
    min_col: int = 0,
    search_bound: int = 512,
) -> tuple[Point, ...]:
    """A size-n subset of an infinite set lying inside one generator.

    Descriptor universes: a column met infinitely often supplies n of its
    points.  Rule universes (membership callables): a greedy chain is
    grown, each next point having a strictly larger column, column at
    least the previous point's rank, and a strictly larger rank; ties
    resolve to the lexicographically least admissible point.  Growing the
    chain is bounded by search_bound, and outputs are prefixes of each
    other as n increases.
    """
    if ideal.family == "WR":
        rank = DIAG_RANK
    elif ideal.family == "WRpi":
        rank = ideal.rank_map
    else:
        raise IdealError("dense subsets are implemented for the chain families only")
    if n <= 0:
        return ()

    if isinstance(universe, SetDescriptor):
        candidates = [c for c in universe.infinite_columns() if c >= min_col]
        if not candidates:
            raise ValueError("finite input set")
        c = min(candidates)
        start = dict(universe.tails).get(c, 0)
        return tuple((c, start + i) for i in range(n))

    member: Callable[[Point], bool] = universe
    row_cap = max(8 * n, 64)
    hi = min_col + search_bound

    def least_member(col_from: int, admissible: Callable[[Point], bool]) -> Point | None:
        for c in range(col_from, hi):
            for r in range(row_cap):
                p = (c, r)
                if member(p) and admissible(p):
                    return p
        return None

    seed = least_member(min_col, lambda p: True)
    if seed is None:
        raise ValueError("no member found within the search bound")
    chain = [seed]
    while len(chain) < n:
        prev = chain[-1]
        lo = max(prev[0] + 1, rank(prev), min_col)
        prev_rank = rank(prev)
        nxt = least_member(lo, lambda p: rank(p) > prev_rank)
        if nxt is None:
            raise ValueError("chain search exhausted; raise search_bound")
        chain.append(nxt)
    return tuple(chain)
