"""Exact values: minimax solver against an unrestricted brute-force oracle."""

import itertools
import math
import random
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from namer_claimer.core import (
    CapacityError,
    PointSet,
    play_game,
    validate_transcript,
)
from namer_claimer.solver import (
    DEFAULT_CAP,
    OptimalClaimer,
    OptimalNamer,
    Solver,
    maximal_independent_sets,
    optimal_claimer_move,
    optimal_namer_move,
    solve,
    value_of,
)
from namer_claimer.strategies import DoublingNamer, GreedyClaimer, GreedyNamer, RepeatNamer


# =========================================================================
# Unrestricted oracle
# =========================================================================
#
# Claimer may claim ANY nonempty d-free subset of A (claiming nothing is
# never better than claiming something, by monotonicity, and admitting it
# would make the recursion circular); Namer may name ANY legal distance,
# occurring or not.  No canonicalization, no pruning.


def _oracle(board_n: int, mask: int, memo: dict) -> int:
    if mask == 0:
        return 0
    if mask in memo:
        return memo[mask]
    points = [x + 1 for x in range(board_n) if mask >> x & 1]
    best_for_namer = 0
    for d in range(1, max(1, board_n - 1) + 1):
        best_for_claimer = None
        for r in range(1, len(points) + 1):
            for combo in itertools.combinations(points, r):
                if any(x + d in combo for x in combo):
                    continue
                cm = 0
                for x in combo:
                    cm |= 1 << (x - 1)
                sub = _oracle(board_n, mask & ~cm, memo)
                if best_for_claimer is None or sub < best_for_claimer:
                    best_for_claimer = sub
                if best_for_claimer == 0:
                    break
            if best_for_claimer == 0:
                break
        best_for_namer = max(best_for_namer, 1 + best_for_claimer)
    memo[mask] = best_for_namer
    return best_for_namer


def oracle_value(s: PointSet, memo: dict) -> int:
    return _oracle(s.n, s.mask, memo)


def test_oracle_sanity():
    memo = {}
    assert oracle_value(PointSet.empty(4), memo) == 0
    assert oracle_value(PointSet.of(4, [2]), memo) == 1
    assert oracle_value(PointSet.full(2), memo) == 2


def test_solver_matches_oracle_exhaustively_n8():
    memo = {}
    solver = Solver()
    for mask in range(1 << 8):
        s = PointSet(8, mask)
        assert solver.value_of(s) == oracle_value(s, memo), s.to_list()


# =========================================================================
# Frozen values and examples
# =========================================================================


def test_value_examples():
    assert value_of(PointSet.empty(8)) == 0
    assert value_of(PointSet.of(8, [5])) == 1
    assert value_of(PointSet.full(2)) == 2
    assert value_of(PointSet.full(8)) == 3
    assert value_of(PointSet.full(4)) == 3


def test_frozen_value_table():
    assert [solve(n).value for n in range(1, 17)] == [
        1, 2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 4,
    ]


def test_values_nondecreasing_in_n():
    values = [solve(n).value for n in range(1, 17)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_power_of_two_upper_bound():
    for t in range(1, 5):
        assert solve(1 << t).value <= 1 + t


# =========================================================================
# Optimal moves
# =========================================================================


def test_optimal_namer_move_n8():
    d = optimal_namer_move(PointSet.full(8))
    assert d == 1
    assert value_of(PointSet.full(8)) == 3


def test_optimal_claimer_move_n8():
    claim = optimal_claimer_move(PointSet.full(8), 1)
    assert claim.to_list() == [1, 3, 5, 8]
    remaining = PointSet.full(8) - claim
    assert value_of(remaining) == 2


def test_optimal_claimer_move_singleton():
    assert optimal_claimer_move(PointSet.of(8, [4]), 1).to_list() == [4]


def test_optimal_moves_achieve_value():
    rng = random.Random(3)
    for _ in range(25):
        mask = rng.getrandbits(10)
        if not mask:
            continue
        s = PointSet(10, mask)
        v = value_of(s)
        d = optimal_namer_move(s)
        claim = optimal_claimer_move(s, d)
        assert value_of(s - claim) == v - 1


# =========================================================================
# Maximal independent sets
# =========================================================================


def test_mis_examples():
    got = sorted(c.to_list() for c in maximal_independent_sets(PointSet.full(3), 1))
    assert got == [[1, 3], [2]]
    got = sorted(c.to_list() for c in maximal_independent_sets(PointSet.of(3, [1, 2]), 1))
    assert got == [[1], [2]]


def _brute_maximal(s: PointSet, d: int) -> set:
    points = s.to_list()
    result = set()
    for r in range(len(points) + 1):
        for combo in itertools.combinations(points, r):
            chosen = set(combo)
            if any(x + d in chosen for x in chosen):
                continue
            if any(
                x not in chosen
                and x + d not in chosen
                and x - d not in chosen
                for x in points
            ):
                continue
            result.add(tuple(sorted(chosen)))
    return result


@given(
    st.integers(2, 12).flatmap(
        lambda n: st.tuples(
            st.builds(
                PointSet.of, st.just(n), st.lists(st.integers(1, n), unique=True)
            ),
            st.integers(1, n - 1),
        )
    )
)
@settings(max_examples=80)
def test_mis_matches_brute_force(case):
    s, d = case
    got = {tuple(c.to_list()) for c in maximal_independent_sets(s, d)}
    assert got == _brute_maximal(s, d)


def test_mis_count_follows_path_recurrence():
    # the number of maximal independent sets of a path P_m satisfies
    # a(m) = a(m-2) + a(m-3), a(1)=1, a(2)=2, a(3)=2
    @lru_cache(None)
    def a(m: int) -> int:
        if m <= 0:
            return 1 if m == 0 else 0
        if m == 1:
            return 1
        if m == 2:
            return 2
        if m == 3:
            return 2
        return a(m - 2) + a(m - 3)

    for m in range(1, 13):
        path = PointSet.full(m)
        count = sum(1 for _ in maximal_independent_sets(path, 1))
        assert count == len(_brute_maximal(path, 1)) == a(m)


# =========================================================================
# Structural invariants
# =========================================================================


def test_monotonicity_exhaustive_n10():
    solver = Solver()
    values = {}
    for mask in range(1 << 10):
        values[mask] = solver.value_of(PointSet(10, mask))
    rng = random.Random(0)
    for mask, v in values.items():
        sub = mask & rng.getrandbits(10)
        assert values[sub] <= v


@given(
    st.builds(
        PointSet.of,
        st.just(12),
        st.lists(st.integers(1, 6), unique=True),
    ),
    st.integers(0, 6),
)
@settings(max_examples=60)
def test_translation_and_reflection_invariance(s, t):
    v = value_of(s)
    shifted = PointSet.of(12, [x + t for x in s])
    assert value_of(shifted) == v
    reflected = PointSet.of(12, [12 + 1 - x for x in s])
    assert value_of(reflected) == v


def test_sandwich_bounds():
    for n in (6, 8, 10, 12):
        greedy_len = len(play_game(GreedyNamer(), GreedyClaimer(), n).rounds)
        v = value_of(PointSet.full(n))
        assert greedy_len >= v
        for namer in (RepeatNamer(n, 1), DoublingNamer(n)):
            fixed_len = len(play_game(namer, OptimalClaimer(n), n).rounds)
            assert fixed_len <= v


# =========================================================================
# solve() and the capacity cap
# =========================================================================


def test_solve_n8_principal_line():
    report = solve(8)
    assert report.value == 3
    line = report.principal_line
    assert len(line.rounds) == 3
    assert line.terminal
    assert validate_transcript(line)
    assert report.states_visited > 0
    assert report.elapsed >= 0.0
    data = report.to_dict()
    assert data["value"] == 3
    assert data["principal_line"]["rounds"][0] == {
        "d": 1,
        "claimed": [1, 3, 5, 8],
    }


def test_capacity_cap():
    with pytest.raises(CapacityError):
        solve(DEFAULT_CAP + 1)
    with pytest.raises(CapacityError):
        value_of(PointSet.full(DEFAULT_CAP + 1))
    with pytest.raises(CapacityError):
        OptimalNamer(DEFAULT_CAP + 1)
    with pytest.raises(CapacityError):
        OptimalClaimer(DEFAULT_CAP + 1)
    assert solve(8, cap=8).value == 3


def test_optimal_handles_play_the_value():
    for n in (5, 8, 11):
        t = play_game(OptimalNamer(n), OptimalClaimer(n), n)
        assert t.terminal
        assert len(t.rounds) == value_of(PointSet.full(n))
        assert validate_transcript(t)
