"""The point-picking game on a presentation.

Player one plays a set from the ideal each round, player two answers
with a point outside it, and player one aims to trap the picks inside a
single ideal set.  For the chain families the blocking strategy walls
off every column a future pick could pair up with, so the picks always
form one chain generator.  The module also carries the finite
transformations between colorings, decreasing set chains, trees, and
partitions that surround the game.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .covering import IdealError, phi_cost
from .grid import Point, is_sparse_chain, point_sum
from .gridmaps import PartitionWitness
from .presentations import (
    IdealPresentation,
    SetDescriptor,
    descriptor_in_ideal,
    pick_outside,
)


class GameError(RuntimeError):
    pass


@dataclass
class GameState:
    presentation: IdealPresentation
    moves: list[tuple[SetDescriptor, Point]] = field(default_factory=list)
    seed: int | None = None

    @property
    def round(self) -> int:
        return len(self.moves)

    def picks(self) -> tuple[Point, ...]:
        return tuple(k for _, k in self.moves)


def blocking_strategy(exact: bool = False) -> Callable[[GameState], SetDescriptor]:
    """Player one's winning recipe for the chain families.

    Each round blocks, for every pick so far, all columns up to its
    coordinate sum (plus the picks themselves), which forces the next
    pick to be pair-compatible with everything played.  The exact mode
    blocks only the color-1 section of each pick, using tails below it
    instead of whole columns.  For a ranked family the finitely many
    points of too-small rank are blocked as a finite set.
    """

    def strategy(state: GameState) -> SetDescriptor:
        picks = state.picks()
        if not picks:
            return SetDescriptor.build()
        fam = state.presentation.family
        if fam == "WR":
            if exact:
                cols: list[int] = []
                tails: list[tuple[int, int]] = []
                for i, j in picks:
                    cols.extend(range(i, i + j + 1))
                    tails.extend((c, i - c) for c in range(i))
                return SetDescriptor.build(cols, tails, picks)
            top = max(point_sum(p) for p in picks)
            return SetDescriptor.build(range(top + 1), (), picks)
        if fam == "WRpi":
            rank = state.presentation.rank_map
            top = max(max(p[0], rank(p) - 1) for p in picks)
            low = {
                q
                for p in picks
                for v in range(rank(p) + 1)
                for q in rank.preimages(v)
            }
            return SetDescriptor.build(range(top + 1), (), low | set(picks))
        raise GameError(f"no blocking strategy for {fam!r}")

    return strategy


def empty_strategy(state: GameState) -> SetDescriptor:
    return SetDescriptor.build()


def least_lex_opponent(state: GameState, blocked: SetDescriptor) -> Point:
    return pick_outside(blocked, "least-lex")


def random_opponent(seed: int, spread: int = 8, row_spread: int = 12):
    """Seeded legal opponent: random points near the action, with a
    deterministic fallback beyond the blocked columns."""
    rng = random.Random(seed)

    def opponent(state: GameState, blocked: SetDescriptor) -> Point:
        hi = max((point_sum(k) for k in state.picks()), default=0) + spread
        for _ in range(64):
            p = (rng.randint(0, hi), rng.randint(0, row_spread))
            if not blocked.contains(p):
                return p
        return pick_outside(blocked, "least-col-beyond", beyond=hi)

    return opponent


def scripted_opponent(points: Iterable[Point]):
    script = iter(points)

    def opponent(state: GameState, blocked: SetDescriptor) -> Point:
        try:
            return next(script)
        except StopIteration:
            raise GameError("script exhausted") from None

    return opponent


def play(
    presentation: IdealPresentation,
    player_one: Callable[[GameState], SetDescriptor],
    player_two: Callable[[GameState, SetDescriptor], Point],
    rounds: int,
    seed: int | None = None,
) -> GameState:
    """Run a legality-checked match and return the transcript state."""
    state = GameState(presentation, seed=seed)
    for n in range(rounds):
        blocked = player_one(state)
        if not descriptor_in_ideal(presentation, blocked):
            raise GameError(f"player one left the ideal at round {n}")
        pick = player_two(state, blocked)
        if blocked.contains(pick):
            raise GameError(f"player two picked a blocked point at round {n}")
        state.moves.append((blocked, pick))
    return state


def verdict(state: GameState) -> dict:
    """Finite-horizon report: no winner is declared, only whether the
    picks sit inside one chain generator and what they cost to cover."""
    picks = state.picks()
    out = {
        "rounds": state.round,
        "sparse_chain": is_sparse_chain(picks),
    }
    try:
        out["phi"] = phi_cost(state.presentation, picks)
    except IdealError:
        out["phi"] = None
    return out


def transcript_json(state: GameState) -> dict:
    return {
        "seed": state.seed,
        "rounds": [
            {"X": blocked.to_json(), "k": list(pick)}
            for blocked, pick in state.moves
        ],
        "verdict": verdict(state),
    }


# ---------------------------------------------------------------------------
# trees built from colorings


class FiniteTree:
    """Lazily materialized tree of chosen-point sequences.

    The children of a node are exactly the members of its ramification;
    materialized nodes stay prefix closed by construction.
    """

    def __init__(self, root_ramification: Iterable[Point], child_rule, depth: int = 0):
        self._ram: dict[tuple, frozenset] = {(): frozenset(root_ramification)}
        self._rule = child_rule
        self.depth = depth

    def ramification(self, node: Iterable[Point]) -> frozenset:
        node = tuple(node)
        if node not in self._ram:
            parent = node[:-1]
            parent_ram = self.ramification(parent)
            if node[-1] not in parent_ram:
                raise KeyError(f"{node!r} is not a tree node")
            self._ram[node] = self._rule(parent, parent_ram, node[-1])
        return self._ram[node]

    def children(self, node: Iterable[Point]) -> list[Point]:
        return sorted(self.ramification(node))

    def nodes(self) -> list[tuple]:
        return sorted(self._ram)

    def branches(self, depth: int | None = None):
        """All chosen-point sequences of the given length (shorter when a
        ramification empties out first)."""
        if depth is None:
            depth = self.depth

        def rec(node):
            if len(node) == depth:
                yield node
                return
            ram = self.ramification(node)
            if not ram:
                yield node
                return
            for x in sorted(ram):
                yield from rec(node + (x,))

        yield from rec(())


def coloring_to_tree(
    coloring: Callable[[Point, Point], int],
    small_class: Callable[[Point], int],
    depth: int,
    window: int | Iterable[Point],
) -> FiniteTree:
    """Tree whose ramification below a chosen point keeps only its big
    color section: small_class names the color class claimed small, and
    children survive in the opposite class."""
    if isinstance(window, int):
        pts = frozenset((c, r) for c in range(window) for r in range(window))
    else:
        pts = frozenset(window)

    def rule(parent, parent_ram, chosen):
        large = 1 - small_class(chosen)
        return frozenset(
            b for b in parent_ram if b != chosen and coloring(chosen, b) == large
        )

    return FiniteTree(pts, rule, depth)


# ---------------------------------------------------------------------------
# chains, colorings, families of sets over the naturals


def decreasing_chain_to_coloring(chain: Callable[[int], object]) -> Callable[[int, int], int]:
    """Color a pair 0 exactly when the larger element belongs to the
    smaller element's set."""

    def color(n: int, m: int) -> int:
        if n == m:
            raise ValueError("pair required")
        lo, hi = (n, m) if n < m else (m, n)
        members = chain(lo)
        inside = members(hi) if callable(members) else hi in members
        return 0 if inside else 1

    return color


def normalize_family(family: Mapping[tuple, frozenset]) -> dict[tuple, frozenset]:
    """Intersect each set with every family member whose index is no
    longer and has no larger maximum, making the family monotone in that
    preorder while staying pointwise inside the original."""
    out = {}
    for t, xt in family.items():
        cur = set(xt)
        lt = len(t)
        mt = max(t, default=-1)
        for s, xs in family.items():
            if s != t and len(s) <= lt and max(s, default=-1) <= mt:
                cur &= set(xs)
        out[t] = frozenset(cur)
    return out


def condition4_check(witness: PartitionWitness, f: Callable[[int], int], window: int) -> bool:
    """Strictly increasing and always jumping into a class indexed above
    the previous value."""
    vals = [f(n) for n in range(window)]
    for a, b in zip(vals, vals[1:]):
        if b <= a or witness.class_of(b) <= a:
            return False
    return True
