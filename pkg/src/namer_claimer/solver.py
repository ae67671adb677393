"""Exact game values by memoized minimax on bitmask states.

V(empty) = 0, V(single point) = 1, and otherwise one round plus the best
the Namer can force against the best Claimer reply:

    V(A) = 1 + max over occurring d of min over maximal d-free claims C
           of V(A minus C)

Two prunings keep the tree honest: the Namer only names distances that
occur inside A (anything else hands the Claimer the whole board for one
round), and the Claimer only claims maximal independent sets of G_d[A]
(claiming more never hurts, by value monotonicity; this is validated
against an unrestricted oracle in the test suite).

States are memoized under a canonical key: translate the minimum to 1,
then keep the smaller of the mask and its reflection.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .core import CapacityError, PointSet, Round, Transcript

DEFAULT_CAP = 18


# =========================================================================
# State canonicalization
# =========================================================================


def _reflect(mask: int) -> int:
    """Reverse the bit order of ``mask`` over its own span."""
    span = mask.bit_length()
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << (span - low.bit_length())
        mask ^= low
    return out


def _canonical(mask: int) -> int:
    if not mask:
        return 0
    t = mask >> ((mask & -mask).bit_length() - 1)
    r = _reflect(t)
    return t if t <= r else r


def _points(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def _occurring(mask: int) -> list[int]:
    pts = _points(mask)
    return sorted({b - a for i, a in enumerate(pts) for b in pts[i + 1 :]})


# =========================================================================
# Maximal independent sets of G_d[A]
# =========================================================================


def _paths(mask: int, d: int) -> list[list[int]]:
    comps = []
    starts = mask & ~(mask << d)
    while starts:
        low = starts & -starts
        starts ^= low
        x = low.bit_length()
        comp = []
        while mask >> (x - 1) & 1:
            comp.append(x)
            x += d
        comps.append(comp)
    return comps


def _path_mis(verts: list[int]) -> list[int]:
    """All maximal independent sets of a path, as masks over the board.

    DFS state: next index, whether the previous vertex was selected, and
    whether the one before demands coverage (unselected with no selected
    neighbour yet).
    """
    out: list[int] = []
    last = len(verts)

    def rec(i: int, prev_sel: bool, pending: bool, acc: int):
        if i == last:
            if not pending:
                out.append(acc)
            return
        if not prev_sel:
            rec(i + 1, True, False, acc | 1 << (verts[i] - 1))
        if not pending:
            rec(i + 1, False, not prev_sel, acc)

    rec(0, False, False, 0)
    return out


def maximal_independent_sets(A: PointSet, d: int) -> Iterator[PointSet]:
    """Exactly the maximal independent sets of G_d[A].

    Cross product of per-path choices; a vertex with no d-neighbour in A
    is forced into every set.
    """
    per_path = [_path_mis(comp) for comp in _paths(A.mask, d)]
    for combo in product(*per_path):
        acc = 0
        for m in combo:
            acc |= m
        yield PointSet(A.n, acc)


# =========================================================================
# Solver
# =========================================================================


@dataclass(frozen=True, slots=True)
class SolveReport:
    """Result of solving a full board: value, line, and effort counters."""

    n: int
    value: int
    principal_line: Transcript
    states_visited: int
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "value": self.value,
            "states_visited": self.states_visited,
            "elapsed": self.elapsed,
            "principal_line": self.principal_line.to_dict(),
        }


class Solver:
    """Memoized minimax with a hard cap on position size.

    The memo is value-keyed by canonical mask and shared across queries,
    so interleaving value_of / optimal_* calls is cheap.
    """

    def __init__(self, cap: int = DEFAULT_CAP):
        if cap < 1:
            raise ValueError("state cap must be positive")
        self.cap = cap
        self._memo: dict[int, int] = {}
        self._computed = 0

    # -- internals ---------------------------------------------------

    def _check(self, size: int):
        if size > self.cap:
            raise CapacityError(
                f"position has {size} points, past the solver cap {self.cap}"
            )

    def _mis_masks(self, mask: int, d: int) -> Iterator[int]:
        per_path = [_path_mis(comp) for comp in _paths(mask, d)]
        for combo in product(*per_path):
            acc = 0
            for m in combo:
                acc |= m
            yield acc

    def _value(self, mask: int) -> int:
        if not mask:
            return 0
        if not mask & (mask - 1):
            return 1
        key = _canonical(mask)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        best = 0
        for d in _occurring(key):
            worst: Optional[int] = None
            for claim in self._mis_masks(key, d):
                v = self._value(key & ~claim)
                if worst is None or v < worst:
                    worst = v
                    if worst <= best:
                        break
            if worst is not None and worst > best:
                best = worst
        value = 1 + best
        self._memo[key] = value
        self._computed += 1
        return value

    # -- public surface ----------------------------------------------

    @property
    def states_visited(self) -> int:
        return self._computed

    def value_of(self, A: PointSet) -> int:
        self._check(len(A))
        return self._value(A.mask)

    def optimal_namer_move(self, A: PointSet) -> int:
        """Smallest distance achieving the game value."""
        self._check(len(A))
        if not A.mask:
            raise ValueError("no move on an empty board")
        distances = _occurring(A.mask) or [1]
        best_d, best_v = None, -1
        for d in distances:
            worst = min(self._value(A.mask & ~c) for c in self._mis_masks(A.mask, d))
            if worst > best_v:
                best_d, best_v = d, worst
        return best_d

    def optimal_claimer_move(self, A: PointSet, d: int) -> PointSet:
        """A claim reaching the minimum, lexicographically smallest on ties."""
        self._check(len(A))
        if not A.mask:
            raise ValueError("no move on an empty board")
        best_key, best_mask, best_v = None, None, None
        for claim in self._mis_masks(A.mask, d):
            v = self._value(A.mask & ~claim)
            key = tuple(_points(claim))
            if best_v is None or v < best_v or (v == best_v and key < best_key):
                best_key, best_mask, best_v = key, claim, v
        return PointSet(A.n, best_mask)

    def solve(self, n: int) -> SolveReport:
        if n > self.cap:
            raise CapacityError(f"boards past n={self.cap} are out of solver range")
        start = time.perf_counter()
        before = self._computed
        value = self.value_of(PointSet.full(n))
        rounds = []
        A = PointSet.full(n)
        while A:
            d = self.optimal_namer_move(A)
            claim = self.optimal_claimer_move(A, d)
            rounds.append(Round(d, claim))
            A = A - claim
        return SolveReport(
            n=n,
            value=value,
            principal_line=Transcript(n=n, rounds=tuple(rounds), terminal=True),
            states_visited=self._computed - before,
            elapsed=time.perf_counter() - start,
        )


_shared = Solver()


def value_of(A: PointSet) -> int:
    return _shared.value_of(A)


def optimal_namer_move(A: PointSet) -> int:
    return _shared.optimal_namer_move(A)


def optimal_claimer_move(A: PointSet, d: int) -> PointSet:
    return _shared.optimal_claimer_move(A, d)


def solve(n: int, cap: int = DEFAULT_CAP) -> SolveReport:
    """Solve the full board [n] with a fresh memo (reproducible counters)."""
    return Solver(cap).solve(n)


# =========================================================================
# Engine handles
# =========================================================================


class OptimalNamer:
    def __init__(self, n: int, solver: Optional[Solver] = None):
        self._solver = solver or _shared
        if n > self._solver.cap:
            raise CapacityError(
                f"optimal play needs n <= {self._solver.cap}, got {n}"
            )

    def next_distance(self, unclaimed: PointSet, history: list[Round]) -> int:
        return self._solver.optimal_namer_move(unclaimed)


class OptimalClaimer:
    def __init__(self, n: int, solver: Optional[Solver] = None):
        self._solver = solver or _shared
        if n > self._solver.cap:
            raise CapacityError(
                f"optimal play needs n <= {self._solver.cap}, got {n}"
            )

    def next_claim(self, unclaimed: PointSet, d: int, history: list[Round]) -> PointSet:
        return self._solver.optimal_claimer_move(unclaimed, d)
