"""Board representation, move legality, and the game loop.

Points are 1-indexed.  A :class:`PointSet` stores its board size ``n`` and a
Python int ``mask`` whose bit ``x - 1`` is set exactly when point ``x`` is in
the set.  All the set algebra the game needs (shifts by a distance, unions,
intersections, popcounts) is then single big-int operations, which keeps every
engine step O(n / wordsize) and makes boards up to 2**24 practical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


# =========================================================================
# Errors
# =========================================================================


class GameError(Exception):
    """Base class for everything this package raises on purpose."""


class InvalidDistanceError(GameError):
    """A named distance lies outside the legal range for the board."""


class IllegalClaimError(GameError):
    """A claim is not a subset of the unclaimed points, or is not d-free."""


class CapacityError(GameError):
    """A requested board or search size exceeds a configured cap."""


class InvariantViolation(GameError):
    """An internal invariant that should be unreachable was violated."""


class StrategyFault(GameError):
    """A strategy broke the rules during play.

    Attributes:
        role: "namer" or "claimer".
        round_index: 1-based round in which the fault happened.
        reason: human-readable description.
    """

    def __init__(self, role: str, round_index: int, reason: str):
        super().__init__(f"{role} fault in round {round_index}: {reason}")
        self.role = role
        self.round_index = round_index
        self.reason = reason


# =========================================================================
# Point sets
# =========================================================================


def _mask_from_points(n: int, points: Iterable[int]) -> int:
    mask = 0
    for x in points:
        if not 1 <= x <= n:
            raise ValueError(f"point {x} outside [1, {n}]")
        mask |= 1 << (x - 1)
    return mask


@dataclass(frozen=True, slots=True)
class PointSet:
    """An immutable subset of the board [n].

    Value semantics: two PointSets are equal iff they have the same board size
    and the same members.  The mask is part of the public contract only in the
    sense that bit ``x - 1`` means membership of ``x``; use the constructors
    rather than building masks by hand.
    """

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("board size must be at least 1")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError("mask has bits outside the board")

    # ---- constructors ----

    @classmethod
    def empty(cls, n: int) -> "PointSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "PointSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def of(cls, n: int, points: Iterable[int]) -> "PointSet":
        return cls(n, _mask_from_points(n, points))

    # ---- queries ----

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, x: int) -> bool:
        return 1 <= x <= self.n and (self.mask >> (x - 1)) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length()
            m ^= low

    def to_list(self) -> list[int]:
        return list(self)

    def min(self) -> int:
        if not self.mask:
            raise ValueError("empty set has no minimum")
        return (self.mask & -self.mask).bit_length()

    def max(self) -> int:
        if not self.mask:
            raise ValueError("empty set has no maximum")
        return self.mask.bit_length()

    # ---- algebra ----

    def _check_same_board(self, other: "PointSet") -> None:
        if self.n != other.n:
            raise ValueError("point sets live on different boards")

    def __and__(self, other: "PointSet") -> "PointSet":
        self._check_same_board(other)
        return PointSet(self.n, self.mask & other.mask)

    def __or__(self, other: "PointSet") -> "PointSet":
        self._check_same_board(other)
        return PointSet(self.n, self.mask | other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._check_same_board(other)
        return PointSet(self.n, self.mask & ~other.mask)

    def complement(self) -> "PointSet":
        return PointSet(self.n, ~self.mask & ((1 << self.n) - 1))

    def issubset(self, other: "PointSet") -> bool:
        self._check_same_board(other)
        return self.mask & ~other.mask == 0

    def minus(self, d: int) -> "PointSet":
        """The translate {x - d : x in S}, clipped to the board."""
        if d < 0:
            raise ValueError("translate distance must be nonnegative")
        return PointSet(self.n, self.mask >> d)

    def plus(self, d: int) -> "PointSet":
        """The translate {x + d : x in S}, clipped to the board."""
        if d < 0:
            raise ValueError("translate distance must be nonnegative")
        return PointSet(self.n, (self.mask << d) & ((1 << self.n) - 1))


# =========================================================================
# Distances and d-freeness
# =========================================================================


def max_distance(n: int) -> int:
    # A one-point board has no genuine pair distance, but the game still
    # needs one nameable d for its single round; allow d=1 there.
    return max(1, n - 1)


def check_distance(d: int, n: int) -> None:
    if not isinstance(d, int) or isinstance(d, bool):
        raise InvalidDistanceError(f"distance must be an int, got {d!r}")
    if not 1 <= d <= max_distance(n):
        raise InvalidDistanceError(
            f"distance {d} outside [1, {max_distance(n)}] for board [{n}]"
        )


def is_d_free(s: PointSet, d: int) -> bool:
    """True iff no two points of ``s`` differ by exactly ``d``."""
    check_distance(d, s.n)
    return s.mask & (s.mask >> d) == 0


def occurring_distances(s: PointSet) -> list[int]:
    """Distances d such that some pair of ``s`` is exactly d apart."""
    m = s.mask
    if m.bit_count() < 2:
        return []
    span = m.bit_length() - (m & -m).bit_length()
    return [d for d in range(1, span + 1) if m & (m >> d)]


def path_components(s: PointSet, d: int) -> list[list[int]]:
    """Connected components of the distance-d graph restricted to ``s``.

    Each component is a path x, x+d, x+2d, ...; the list is ordered by the
    path's smallest element and each path is listed in ascending order.
    """
    check_distance(d, s.n)
    m = s.mask
    starts = m & ~(m << d)
    paths = []
    while starts:
        low = starts & -starts
        starts ^= low
        x = low.bit_length()
        path = [x]
        while x + d <= s.n and (m >> (x + d - 1)) & 1:
            x += d
            path.append(x)
        paths.append(path)
    paths.sort(key=lambda p: p[0])
    return paths


# =========================================================================
# Rounds and transcripts
# =========================================================================


@dataclass(frozen=True, slots=True)
class Round:
    """One completed round: the named distance and the points claimed."""

    d: int
    claimed: PointSet


@dataclass(frozen=True, slots=True)
class Transcript:
    """A full game record.

    Invariants (enforced by :func:`validate_transcript`): claims are pairwise
    disjoint, each round's claim was d-free and unclaimed at the time, and
    ``terminal`` is true exactly when the claims cover [n].
    """

    n: int
    rounds: tuple[Round, ...]
    terminal: bool

    def union_claimed(self) -> PointSet:
        mask = 0
        for r in self.rounds:
            mask |= r.claimed.mask
        return PointSet(self.n, mask)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rounds": [
                {"d": r.d, "claimed": r.claimed.to_list()} for r in self.rounds
            ],
            "terminal": self.terminal,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Transcript":
        n = data["n"]
        rounds = tuple(
            Round(r["d"], PointSet.of(n, r["claimed"])) for r in data["rounds"]
        )
        return cls(n=n, rounds=rounds, terminal=bool(data["terminal"]))

    @classmethod
    def from_json(cls, text: str) -> "Transcript":
        return cls.from_dict(json.loads(text))


def apply_round(unclaimed: PointSet, d: int, claim: PointSet) -> PointSet:
    """Validate one round and return the remaining unclaimed set.

    Raises InvalidDistanceError for a bad d, IllegalClaimError when the claim
    is not a subset of ``unclaimed`` or contains a pair at distance d.  The
    empty claim is legal (a pass).
    """
    check_distance(d, unclaimed.n)
    if claim.n != unclaimed.n:
        raise IllegalClaimError("claim lives on a different board")
    if not claim.issubset(unclaimed):
        raise IllegalClaimError("claim includes already-claimed points")
    if claim.mask & (claim.mask >> d):
        raise IllegalClaimError(f"claim contains two points at distance {d}")
    return unclaimed - claim


def transcript_fault(t: Transcript) -> Optional[tuple[int, str]]:
    """First rule violation in a transcript, or None if it is valid.

    Returns (round_index, reason) with 1-based indexing; a terminal flag that
    disagrees with coverage reports index len(rounds) + 1.
    """
    unclaimed = PointSet.full(t.n)
    for i, r in enumerate(t.rounds, start=1):
        try:
            unclaimed = apply_round(unclaimed, r.d, r.claimed)
        except GameError as exc:
            return i, str(exc)
    if t.terminal != (not unclaimed):
        return len(t.rounds) + 1, (
            "terminal flag is %s but remaining unclaimed set is %s"
            % (t.terminal, "empty" if not unclaimed else "nonempty")
        )
    return None


def validate_transcript(t: Transcript) -> bool:
    """True iff every round was legal and the terminal flag is accurate."""
    return transcript_fault(t) is None


# =========================================================================
# Game loop
# =========================================================================


def default_round_cap(n: int) -> int:
    # 4 * (floor(log2 n) + 2): an order of magnitude above the greedy
    # Claimer's 1 + log2(n) guarantee, so no honest strategy ever hits it.
    return 4 * (n.bit_length() + 1)


def play_game(namer, claimer, n: int, *, round_cap: Optional[int] = None) -> Transcript:
    """Run a full game and return its transcript.

    ``namer`` needs a ``next_distance(unclaimed, history)`` method returning a
    distance; ``claimer`` needs ``next_claim(unclaimed, d, history)`` returning
    a PointSet.  Every move is validated; an illegal move raises
    :class:`StrategyFault` naming the offender and the round.  If the game is
    still live after ``round_cap`` rounds the transcript comes back with
    ``terminal=False``.
    """
    if round_cap is None:
        round_cap = default_round_cap(n)
    unclaimed = PointSet.full(n)
    history: list[Round] = []
    while unclaimed and len(history) < round_cap:
        index = len(history) + 1
        try:
            d = namer.next_distance(unclaimed, history)
            check_distance(d, n)
        except InvalidDistanceError as exc:
            raise StrategyFault("namer", index, str(exc)) from exc
        try:
            claim = claimer.next_claim(unclaimed, d, history)
            unclaimed = apply_round(unclaimed, d, claim)
        except (IllegalClaimError, InvalidDistanceError) as exc:
            raise StrategyFault("claimer", index, str(exc)) from exc
        history.append(Round(d, claim))
    return Transcript(n=n, rounds=tuple(history), terminal=not unclaimed)
