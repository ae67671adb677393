"""Board primitives, round legality, game loop, transcripts."""

import json

import pytest
from hypothesis import given, strategies as st

from namer_claimer.core import (
    IllegalClaimError,
    InvalidDistanceError,
    PointSet,
    Round,
    StrategyFault,
    Transcript,
    apply_round,
    check_distance,
    default_round_cap,
    is_d_free,
    max_distance,
    occurring_distances,
    path_components,
    play_game,
    transcript_fault,
    validate_transcript,
)
from namer_claimer.strategies import (
    GreedyClaimer,
    GreedyNamer,
    LazyClaimer,
    RepeatNamer,
)


# =========================================================================
# PointSet semantics
# =========================================================================


def test_pointset_constructors_and_membership():
    s = PointSet.of(8, [1, 3, 5, 8])
    assert len(s) == 4
    assert 3 in s and 4 not in s
    assert s.to_list() == [1, 3, 5, 8]
    assert s.min() == 1 and s.max() == 8
    assert PointSet.full(3).to_list() == [1, 2, 3]
    assert not PointSet.empty(3)


def test_pointset_rejects_out_of_range():
    with pytest.raises(ValueError):
        PointSet.of(4, [5])
    with pytest.raises(ValueError):
        PointSet.of(4, [0])
    with pytest.raises(ValueError):
        PointSet(0, 0)


def test_pointset_algebra():
    a = PointSet.of(6, [1, 2, 4])
    b = PointSet.of(6, [2, 4, 6])
    assert (a & b).to_list() == [2, 4]
    assert (a | b).to_list() == [1, 2, 4, 6]
    assert (a - b).to_list() == [1]
    assert a.complement().to_list() == [3, 5, 6]
    assert a.minus(1).to_list() == [1, 3]
    assert a.plus(2).to_list() == [3, 4, 6]
    assert PointSet.of(6, [1, 2]).issubset(a)


def test_pointset_board_mismatch_raises():
    with pytest.raises(ValueError):
        PointSet.full(4) & PointSet.full(5)


sets_with_d = st.integers(2, 64).flatmap(
    lambda n: st.tuples(
        st.builds(
            PointSet.of,
            st.just(n),
            st.lists(st.integers(1, n), unique=True),
        ),
        st.integers(1, n - 1),
    )
)


@given(sets_with_d)
def test_translate_agrees_with_set_semantics(case):
    s, d = case
    expected = sorted(x - d for x in s if x - d >= 1)
    assert s.minus(d).to_list() == expected


# =========================================================================
# Distances and d-freeness
# =========================================================================


def test_distance_domain():
    assert max_distance(8) == 7
    assert max_distance(1) == 1
    check_distance(1, 1)
    with pytest.raises(InvalidDistanceError):
        check_distance(0, 8)
    with pytest.raises(InvalidDistanceError):
        check_distance(8, 8)


def test_is_d_free_examples():
    assert is_d_free(PointSet.of(8, [1, 3, 5, 8]), 1)
    assert is_d_free(PointSet.empty(8), 3)
    assert not is_d_free(PointSet.of(8, [2, 5]), 3)


def test_occurring_distances():
    assert occurring_distances(PointSet.of(8, [1, 3, 5])) == [2, 4]
    assert occurring_distances(PointSet.of(8, [7])) == []


# =========================================================================
# Path components
# =========================================================================


def test_path_components_examples():
    assert path_components(PointSet.full(5), 2) == [[1, 3, 5], [2, 4]]
    assert path_components(PointSet.of(5, [1, 2, 4, 5]), 3) == [[1, 4], [2, 5]]
    assert path_components(PointSet.of(8, [7]), 1) == [[7]]


@given(sets_with_d)
def test_path_components_partition(case):
    s, d = case
    paths = path_components(s, d)
    flat = sorted(x for p in paths for x in p)
    assert flat == s.to_list()
    for p in paths:
        assert all(b - a == d for a, b in zip(p, p[1:]))
        assert p[0] - d not in s and p[-1] + d not in s


# =========================================================================
# apply_round
# =========================================================================


def test_apply_round_play_table():
    a0 = PointSet.full(8)
    a1 = apply_round(a0, 1, PointSet.of(8, [1, 3, 5, 8]))
    assert a1.to_list() == [2, 4, 6, 7]
    a2 = apply_round(a1, 2, PointSet.of(8, [2, 6, 7]))
    assert a2.to_list() == [4]
    a3 = apply_round(a2, 1, PointSet.of(8, [4]))
    assert not a3


def test_apply_round_rejects_illegal():
    a = PointSet.of(8, [2, 4, 6, 7])
    with pytest.raises(IllegalClaimError):
        apply_round(a, 2, PointSet.of(8, [2, 4]))
    with pytest.raises(IllegalClaimError):
        apply_round(a, 2, PointSet.of(8, [1]))
    with pytest.raises(InvalidDistanceError):
        apply_round(a, 0, PointSet.empty(8))


@given(sets_with_d)
def test_apply_round_cardinality(case):
    s, d = case
    claim = PointSet(s.n, s.mask & ~(s.mask >> d))
    remaining = apply_round(s, d, claim)
    assert len(remaining) == len(s) - len(claim)


@given(sets_with_d, st.randoms(use_true_random=False))
def test_apply_round_rejects_fuzzed_illegal_claims(case, rng):
    s, d = case
    if len(s) < 1:
        return
    points = s.to_list()
    x = rng.choice(points)
    bad_pair = PointSet.of(s.n, [x, x + d]) if x + d <= s.n else None
    if bad_pair is not None and x + d in s:
        with pytest.raises(IllegalClaimError):
            apply_round(s, d, bad_pair)
    outside = s.complement()
    if outside:
        y = rng.choice(outside.to_list())
        with pytest.raises(IllegalClaimError):
            apply_round(s, d, PointSet.of(s.n, [y]))


# =========================================================================
# Transcripts
# =========================================================================


def _play_table_transcript() -> Transcript:
    return Transcript(
        n=8,
        rounds=(
            Round(1, PointSet.of(8, [1, 3, 5, 8])),
            Round(2, PointSet.of(8, [2, 6, 7])),
            Round(1, PointSet.of(8, [4])),
        ),
        terminal=True,
    )


def test_validate_play_table():
    assert validate_transcript(_play_table_transcript())


def test_validate_catches_bad_round():
    t = _play_table_transcript()
    bad = Transcript(
        n=8,
        rounds=(t.rounds[0], Round(2, PointSet.of(8, [2, 4, 6])), t.rounds[2]),
        terminal=True,
    )
    assert not validate_transcript(bad)
    index, reason = transcript_fault(bad)
    assert index == 2
    assert "distance 2" in reason


def test_validate_empty_transcript_n1():
    assert validate_transcript(Transcript(n=1, rounds=(), terminal=False))
    assert not validate_transcript(Transcript(n=1, rounds=(), terminal=True))


def test_transcript_json_round_trip():
    t = _play_table_transcript()
    data = json.loads(t.to_json())
    assert data == {
        "n": 8,
        "rounds": [
            {"d": 1, "claimed": [1, 3, 5, 8]},
            {"d": 2, "claimed": [2, 6, 7]},
            {"d": 1, "claimed": [4]},
        ],
        "terminal": True,
    }
    assert Transcript.from_json(t.to_json()) == t


# =========================================================================
# Game loop
# =========================================================================


def test_lazy_vs_repeat_n4():
    t = play_game(RepeatNamer(4, 1), LazyClaimer(), 4)
    assert t.terminal and len(t.rounds) == 4
    assert [r.claimed.to_list() for r in t.rounds] == [[4], [3], [2], [1]]


def test_greedy_vs_greedy_n2():
    t = play_game(GreedyNamer(), GreedyClaimer(), 2)
    assert t.terminal and len(t.rounds) == 2


def test_nonempty_claims_terminate_within_n():
    for n in (1, 2, 3, 5, 9, 33):
        t = play_game(RepeatNamer(n, 1), LazyClaimer(), n, round_cap=n)
        assert t.terminal
        assert validate_transcript(t)


def test_round_cap_truncates():
    class Passer:
        def next_claim(self, unclaimed, d, history):
            return PointSet.empty(unclaimed.n)

    t = play_game(RepeatNamer(8, 1), Passer(), 8)
    assert not t.terminal
    assert len(t.rounds) == default_round_cap(8)
    assert validate_transcript(t)


def test_strategy_fault_names_offender():
    class BadClaimer:
        def next_claim(self, unclaimed, d, history):
            return PointSet.of(unclaimed.n, [1, 1 + d])

    with pytest.raises(StrategyFault) as info:
        play_game(RepeatNamer(8, 2), BadClaimer(), 8)
    assert "claimer" in str(info.value)
    assert "round 1" in str(info.value)

    class BadNamer:
        def next_distance(self, unclaimed, history):
            return 0

    with pytest.raises(StrategyFault) as info:
        play_game(BadNamer(), LazyClaimer(), 8)
    assert "namer" in str(info.value)
