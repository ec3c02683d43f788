import random

import pytest

from gridideals import (
    DIAG_RANK,
    FIN,
    WR,
    GameError,
    GameState,
    blocking_strategy,
    coloring_to_tree,
    column,
    condition4_check,
    decreasing_chain_to_coloring,
    descriptor_in_ideal,
    dyadic_partition,
    empty_set,
    finite_points,
    is_sparse_chain,
    least_lex_opponent,
    normalize_family,
    phi_cost,
    play,
    random_opponent,
    scripted_opponent,
    sparse_pair_color,
    transcript_json,
    verdict,
    wr_pi,
)
from gridideals.game import empty_strategy


def test_strategy_descriptor_shapes():
    strat = blocking_strategy()
    state = GameState(WR)
    assert strat(state) == empty_set()
    state.moves.append((empty_set(), (0, 0)))
    assert strat(state) == column(0) | finite_points([(0, 0)])
    state.moves.append((empty_set(), (1, 7)))
    d = strat(state)
    assert sorted(d.columns) == list(range(9))


def test_least_lex_match():
    state = play(WR, blocking_strategy(), least_lex_opponent, 3)
    assert state.picks() == ((0, 0), (1, 0), (2, 0))
    assert verdict(state)["sparse_chain"]
    assert verdict(state)["phi"] == 1


def test_column_spammer_defeats_empty_strategy():
    state = play(WR, empty_strategy, scripted_opponent([(0, 0), (0, 1), (0, 2)]), 3)
    assert state.picks() == ((0, 0), (0, 1), (0, 2))
    assert not verdict(state)["sparse_chain"]


def test_random_opponents_lose_long_games():
    for seed in range(5):
        state = play(WR, blocking_strategy(), random_opponent(seed), 60, seed=seed)
        picks = state.picks()
        assert is_sparse_chain(picks)
        assert phi_cost(WR, picks) == 1
        for blocked, pick in state.moves:
            assert descriptor_in_ideal(WR, blocked)
            assert not blocked.contains(pick)


def test_exact_sections_also_win():
    state = play(WR, blocking_strategy(exact=True), random_opponent(5), 40)
    assert is_sparse_chain(state.picks())
    for blocked, _ in state.moves:
        assert descriptor_in_ideal(WR, blocked)


def test_exact_sections_block_exactly_color_one():
    strat = blocking_strategy(exact=True)
    state = GameState(WR)
    state.moves.append((empty_set(), (3, 2)))
    d = strat(state)
    for c in range(12):
        for r in range(12):
            if (c, r) == (3, 2):
                assert d.contains((c, r))
            else:
                expected = sparse_pair_color((3, 2), (c, r)) == 1
                assert d.contains((c, r)) == expected


def test_ranked_family_strategy():
    from gridideals import MAX_RANK, OFFSET_RANK, SKEW_RANK, is_ranked_chain

    for rank in (DIAG_RANK, MAX_RANK, SKEW_RANK, OFFSET_RANK):
        ideal = wr_pi(rank)
        state = play(ideal, blocking_strategy(), random_opponent(11), 25)
        assert is_ranked_chain(rank, state.picks())
        assert verdict(state)["phi"] == 1


def test_illegal_strategy_is_caught():
    def cheating_player_two(state, blocked):
        return (0, 0)

    strat = blocking_strategy()
    with pytest.raises(GameError, match="round 1"):
        play(WR, strat, cheating_player_two, 2)

    def cheating_player_one(state):
        return column(0)  # fine for WR, illegal for Fin

    with pytest.raises(GameError, match="player one"):
        play(FIN, cheating_player_one, least_lex_opponent, 1)


def test_unsupported_strategy_family():
    # round 0 blocks nothing, so the family is only interrogated afterwards
    with pytest.raises(GameError):
        play(FIN, blocking_strategy(), least_lex_opponent, 2)


def test_transcript_shape():
    state = play(WR, blocking_strategy(), random_opponent(2), 4, seed=2)
    doc = transcript_json(state)
    assert doc["seed"] == 2
    assert len(doc["rounds"]) == 4
    assert set(doc["rounds"][0]) == {"X", "k"}
    assert doc["verdict"]["sparse_chain"] is True


# ---------------------------------------------------------------------------
# trees and transformations


def test_tree_examples():
    tree = coloring_to_tree(sparse_pair_color, lambda x: 1, 0, 8)
    assert len(tree.ramification(())) == 64
    after = tree.ramification(((0, 0),))
    assert after == frozenset((c, r) for c in range(1, 8) for r in range(8))
    const0 = coloring_to_tree(lambda a, b: 0, lambda x: 1, 2, 4)
    ram = const0.ramification(((0, 0),))
    assert ram == frozenset(p for p in const0.ramification(()) if p != (0, 0))


def test_tree_branches_are_sparse_chains():
    tree = coloring_to_tree(sparse_pair_color, lambda x: 1, 4, 8)
    count = 0
    for branch in tree.branches(4):
        count += 1
        assert is_sparse_chain(branch)
    assert count > 0
    # nodes materialized along the way stay prefix closed
    nodes = set(tree.nodes())
    assert all(n[:-1] in nodes for n in nodes if n)


def test_tree_rejects_foreign_nodes():
    tree = coloring_to_tree(sparse_pair_color, lambda x: 1, 2, 6)
    with pytest.raises(KeyError):
        tree.ramification(((0, 0), (0, 1)))


def test_chain_coloring_examples():
    tail = decreasing_chain_to_coloring(lambda n: (lambda m: m > n))
    assert all(tail(n, m) == 0 for n in range(5) for m in range(n + 1, 9))
    evens = decreasing_chain_to_coloring(lambda n: {m for m in range(40) if m % 2 == 0 and m > n})
    assert evens(1, 4) == 0
    assert evens(1, 3) == 1
    with pytest.raises(ValueError):
        evens(2, 2)


def test_chain_coloring_reproduces_chain():
    chain = {n: frozenset(m for m in range(40) if m % 3 == 0 and m > n) for n in range(10)}
    color = decreasing_chain_to_coloring(lambda n: chain[n])
    for n in range(10):
        derived = {m for m in range(n + 1, 40) if color(n, m) == 0}
        assert derived == set(chain[n])


def test_normalize_family():
    full = frozenset(range(10))
    fam = {(): full}
    assert normalize_family(fam) == fam
    fam = {(1,): frozenset({1, 2, 3}), (2, 2): frozenset({2, 3, 4})}
    out = normalize_family(fam)
    assert out[(2, 2)] == frozenset({2, 3})  # (1,) is shorter with smaller max
    assert out[(1,)] == frozenset({1, 2, 3})
    fam = {(0,): full, (1, 1): full, (2,): full}
    assert all(v == full for v in normalize_family(fam).values())


def test_normalize_family_monotone_in_preorder():
    rng = random.Random(23)
    for _ in range(30):
        fam = {}
        for _ in range(rng.randint(1, 6)):
            key = tuple(rng.randint(0, 4) for _ in range(rng.randint(0, 3)))
            fam[key] = frozenset(rng.sample(range(12), rng.randint(3, 10)))
        out = normalize_family(fam)
        for t in out:
            assert out[t] <= fam[t]
            for s in out:
                if len(s) <= len(t) and max(s, default=-1) <= max(t, default=-1):
                    assert out[t] <= out[s]


def test_condition4_examples():
    from gridideals import partition_from_labels

    ident = partition_from_labels(list(range(600)))
    assert condition4_check(ident, lambda n: 2 ** n, 9)
    assert condition4_check(ident, lambda n: n, 20)
    assert not condition4_check(ident, lambda n: 5, 3)
    # dyadic classes grow too slowly for any increasing selector
    w = dyadic_partition()
    assert not condition4_check(w, lambda n: 2 ** (n + 1) - 1, 8)
