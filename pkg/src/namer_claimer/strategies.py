"""Namer and Claimer strategies.

Pure move functions (``greedy_claimer_move`` and friends) do the actual work
on bitmasks; thin handle classes adapt them to the engine's
``next_distance`` / ``next_claim`` protocol and hold per-game state where a
strategy needs it.  ``make_namer`` / ``make_claimer`` build handles from the
spec strings the CLI and the service share.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (
    GameError,
    InvariantViolation,
    PointSet,
    Round,
    check_distance,
    max_distance,
)


class NoMoveError(GameError):
    """A strategy was asked to move on an empty board."""


# =========================================================================
# Bit kernels
# =========================================================================
#
# All kernels work on raw masks (bit x-1 = point x).  Shifting up by d maps
# x to x+d; shifting down maps x to x-d.  Python ints make each step O(n/64).


def _alternate_from(mask: int, d: int, seeds: int) -> int:
    """Points reached from ``seeds`` by repeated 2d-steps staying inside mask.

    Each step y -> y+2d requires both y+d and y+2d in the mask, i.e. the path
    continues.  Doubling over jump lengths keeps this O(log n) big-int ops.
    """
    step_ok = mask & (mask << d)  # x with x and x-d both present
    sel = seeds
    shift = 2 * d
    limit = mask.bit_length()
    while shift < limit:
        sel |= (sel << shift) & step_ok
        step_ok &= step_ok << shift
        shift <<= 1
    # one final fold in case limit was not a power-of-two multiple of 2d
    sel |= (sel << shift) & step_ok
    return sel


def _path_starts(mask: int, d: int) -> int:
    return mask & ~(mask << d)


def greedy_claimer_move(unclaimed: PointSet, d: int) -> PointSet:
    """Maximum d-free subset: alternate points of every path from its start.

    For each component x, x+d, ..., of the distance-d graph this takes
    x, x+2d, x+4d, ..., which is a maximum independent set of a path, so the
    claim has ceil(len/2) points per component and at least |A|/2 overall.
    """
    check_distance(d, unclaimed.n)
    m = unclaimed.mask
    return PointSet(unclaimed.n, _alternate_from(m, d, _path_starts(m, d)))


def lazy_claimer_move(unclaimed: PointSet, d: int) -> PointSet:
    """Claim {x in A : x + d not in A}; what stays behind is A and (A - d).

    One point per path component (its far end) plus nothing else, hence
    trivially d-free.  Iterating this rule is what connects game positions to
    Hilbert cubes: after rounds d_1..d_k the survivors are exactly the points
    whose whole subset-sum cube over {d_1..d_k} sat inside the start set.
    """
    check_distance(d, unclaimed.n)
    m = unclaimed.mask
    return PointSet(unclaimed.n, m & ~(m >> d))


def _exact_distance_count(mask: int, d: int) -> int:
    return (mask & (mask >> d)).bit_count()


def _exact_counts(unclaimed: PointSet) -> np.ndarray:
    counts = np.zeros(unclaimed.n, dtype=np.int64)
    m = unclaimed.mask
    for d in range(1, m.bit_length()):
        counts[d] = _exact_distance_count(m, d)
    return counts


_FFT_THRESHOLD = 2048


def distance_counts(unclaimed: PointSet) -> np.ndarray:
    """counts[d] = number of pairs of ``unclaimed`` at distance d, d < n.

    Uses exact popcounts on small boards and an rfft autocorrelation above
    the threshold.  The float route is exact after rounding: counts are at
    most n and the FFT error for a 0/1 signal of this length is orders of
    magnitude below 1/2.
    """
    n = unclaimed.n
    m = unclaimed.mask
    if n < _FFT_THRESHOLD:
        return _exact_counts(unclaimed)
    nbytes = (n + 7) // 8
    bits = np.unpackbits(
        np.frombuffer(m.to_bytes(nbytes, "little"), dtype=np.uint8),
        bitorder="little",
    )[:n].astype(np.float64)
    size = 1 << (2 * n - 1).bit_length()
    spec = np.fft.rfft(bits, size)
    ac = np.fft.irfft(spec * spec.conj(), size)[:n]
    return np.rint(ac).astype(np.int64)


def greedy_namer_move(unclaimed: PointSet) -> int:
    """The most common pair distance, smallest first on ties; d=1 if |A| = 1.

    The rounded FFT counts are exact (the error for a 0/1 signal at any
    supported board size is orders of magnitude below 1/2), so the argmax
    is read straight off them.  One popcount re-checks the winner as a
    canary; a mismatch would mean the rounding argument failed, and then
    the whole count vector is rebuilt exactly.
    """
    size = len(unclaimed)
    if size == 0:
        raise NoMoveError("no distance to name on an empty board")
    if size == 1:
        return 1
    counts = distance_counts(unclaimed)
    best_d = _argmax_distance(counts)
    if _exact_distance_count(unclaimed.mask, best_d) != int(counts[best_d]):
        counts = _exact_counts(unclaimed)
        best_d = _argmax_distance(counts)
    return best_d


def _argmax_distance(counts: np.ndarray) -> int:
    """Smallest d >= 1 maximizing counts[d]."""
    return 1 + int(np.argmax(counts[1:]))


# =========================================================================
# Buckets and block classes
# =========================================================================


def bucket_of(d: int) -> int:
    """Dyadic bucket index: 1 for d <= 2, else the i with 2^(i-1) < d <= 2^i."""
    if d < 1:
        raise ValueError("distances are positive")
    if d <= 2:
        return 1
    return (d - 1).bit_length()


def bucket_range(i: int) -> tuple[int, int]:
    """Inclusive distance range covered by bucket i."""
    if i < 1:
        raise ValueError("bucket indices start at 1")
    if i == 1:
        return (1, 2)
    return (2 ** (i - 1) + 1, 2 ** i)


def block_class(i: int, j: int, n: int) -> PointSet:
    """Residue-j class of width-2^(i-1) blocks, period three blocks.

    Point x belongs to class j iff floor((x-1) / 2^(i-1)) = j (mod 3).  Within
    a block distances are below 2^(i-1); across selected blocks they exceed
    2^i; so the class is d-free for every d in bucket i, and the three classes
    partition [n].
    """
    if not 0 <= j <= 2:
        raise ValueError("block classes are indexed 0, 1, 2")
    if i < 1:
        raise ValueError("bucket indices start at 1")
    width = 1 << (i - 1)
    period = 3 * width
    rep = ((1 << width) - 1) << (j * width)
    span = period
    while span < n + period:
        rep |= rep << span
        span <<= 1
    return PointSet(n, rep & ((1 << n) - 1))


# =========================================================================
# Composed Claimer
# =========================================================================


def composed_k(n: int) -> int:
    """Cube dimension for the composed strategy's partition argument.

    ceil(log2 log2 n + 2 log2 log2 log2 n), clamped to at least 2 so tiny
    boards stay meaningful.
    """
    if n < 4:
        raise ValueError("composed strategy needs a board of at least 4")
    ll = math.log2(math.log2(n))
    value = ll if ll <= 1 else ll + 2 * math.log2(ll)
    return max(2, math.ceil(value - 1e-9))


def composed_round_bound(k: int) -> int:
    """Terminal-round guarantee for the composed Claimer: (4k - 1) * 3 + 1."""
    return (4 * k - 1) * 3 + 1


@dataclass
class ComposedState:
    """Mutable per-game state of the composed Claimer.

    ``virtual_a`` / ``virtual_b`` evolve by the lazy rule regardless of what
    was actually still unclaimed; the covering invariant
    virtual_x >= unclaimed & x0 holds after every move, so when both virtual
    sets die the board is clear.  ``seen`` maps bucket -> block-colouring
    moves used (0..3); a bucket's first occurrence routes to the master lazy
    phases instead and does not count against its three block moves.
    """

    n: int
    k: int
    seed: int
    a0: int
    b0: int
    virtual_a: int
    virtual_b: int
    seen: dict = field(default_factory=dict)
    s_moves: int = 0
    a_moves: int = 0
    b_moves: int = 0
    bound_violation: bool = False


def composed_claimer_new(n: int, k: Optional[int] = None, seed: int = 0) -> ComposedState:
    from .cubes import random_partition  # local import, no cycle

    if n < 4:
        raise ValueError("composed strategy needs a board of at least 4")
    if k is None:
        k = composed_k(n)
    elif k < 1:
        raise ValueError("cube dimension must be positive")
    cls_a, cls_b = random_partition(n, 2, seed)
    return ComposedState(
        n=n, k=k, seed=seed,
        a0=cls_a.mask, b0=cls_b.mask,
        virtual_a=cls_a.mask, virtual_b=cls_b.mask,
    )


def composed_claimer_move(state: ComposedState, unclaimed: PointSet, d: int) -> PointSet:
    """One composed move: route by bucket novelty, claim inside ``unclaimed``.

    First occurrence of a bucket: a master move, lazy rule on the live virtual
    set (A side until it empties, then B side); budget is 2k per side and
    overruns set ``bound_violation`` but the rule keeps running until the side
    exhausts.  Repeat occurrence: the bucket's next block-colouring class,
    at most three, after which the board must be clear.
    """
    check_distance(d, state.n)
    bucket = bucket_of(d)
    if bucket not in state.seen:
        state.seen[bucket] = 0
        if state.virtual_a:
            if state.a_moves >= 2 * state.k:
                state.bound_violation = True
            state.a_moves += 1
            virtual_claim = state.virtual_a & ~(state.virtual_a >> d)
            state.virtual_a &= state.virtual_a >> d
        else:
            if state.b_moves >= 2 * state.k:
                state.bound_violation = True
            state.b_moves += 1
            virtual_claim = state.virtual_b & ~(state.virtual_b >> d)
            state.virtual_b &= state.virtual_b >> d
        state.s_moves += 1
        return PointSet(state.n, virtual_claim & unclaimed.mask)
    progress = state.seen[bucket]
    if progress >= 3:
        raise InvariantViolation(
            f"bucket {bucket} already used its three block moves on a live board"
        )
    state.seen[bucket] = progress + 1
    cls = block_class(bucket, progress, state.n)
    return cls & unclaimed


# =========================================================================
# Strategy handles
# =========================================================================


class GreedyNamer:
    def next_distance(self, unclaimed: PointSet, history: list[Round]) -> int:
        return greedy_namer_move(unclaimed)


class RepeatNamer:
    def __init__(self, n: int, d: int):
        check_distance(d, n)
        self.d = d

    def next_distance(self, unclaimed: PointSet, history: list[Round]) -> int:
        return self.d


class DoublingNamer:
    """Names 1, 2, 4, ..., capped at the board's largest legal distance."""

    def __init__(self, n: int):
        self._next = 1
        self._cap = max_distance(n)

    def next_distance(self, unclaimed: PointSet, history: list[Round]) -> int:
        d = min(self._next, self._cap)
        self._next *= 2
        return d


class RandomNamer:
    def __init__(self, n: int, seed: int):
        self._rng = random.Random(seed)
        self._cap = max_distance(n)

    def next_distance(self, unclaimed: PointSet, history: list[Round]) -> int:
        return self._rng.randint(1, self._cap)


class ScriptedNamer:
    """Plays a fixed distance sequence, then keeps repeating the last one."""

    def __init__(self, distances: list[int]):
        if not distances:
            raise ValueError("script needs at least one distance")
        self._script = list(distances)
        self._i = 0

    def next_distance(self, unclaimed: PointSet, history: list[Round]) -> int:
        d = self._script[min(self._i, len(self._script) - 1)]
        self._i += 1
        return d


class GreedyClaimer:
    def next_claim(self, unclaimed: PointSet, d: int, history: list[Round]) -> PointSet:
        return greedy_claimer_move(unclaimed, d)


class LazyClaimer:
    def next_claim(self, unclaimed: PointSet, d: int, history: list[Round]) -> PointSet:
        return lazy_claimer_move(unclaimed, d)


class BlockClaimer:
    """Block-colouring responder: three partition classes per bucket.

    Against any Namer that stays inside one bucket the third response clears
    the board, because the three classes partition [n] and each is claimed
    whole (intersected with what is still unclaimed) when its turn comes.
    """

    def __init__(self, n: int):
        self.n = n
        self._progress: dict[int, int] = {}

    def next_claim(self, unclaimed: PointSet, d: int, history: list[Round]) -> PointSet:
        bucket = bucket_of(d)
        j = self._progress.get(bucket, 0)
        if j >= 3:
            raise InvariantViolation(
                f"bucket {bucket} already used its three block moves on a live board"
            )
        self._progress[bucket] = j + 1
        return block_class(bucket, j, self.n) & unclaimed


class RandomClaimer:
    """Claims a maximal independent set chosen by a coin per path component.

    Heads alternates from the path's first vertex, tails from its second
    (falling back to the first on one-point paths, so the claim stays
    maximal).  Components never interact, so the union is d-free.
    """

    def __init__(self, n: int, seed: int):
        self.n = n
        self._rng = random.Random(seed)

    def next_claim(self, unclaimed: PointSet, d: int, history: list[Round]) -> PointSet:
        m = unclaimed.mask
        if not m:
            return PointSet(self.n, 0)
        starts = _path_starts(m, d)
        coins = self._rng.getrandbits(self.n)
        heads = starts & coins
        tails = starts & ~coins
        second = (tails << d) & m
        lonely = tails & ~(m >> d)
        seeds = heads | second | lonely
        return PointSet(self.n, _alternate_from(m, d, seeds))


class ComposedClaimer:
    """Handle around :func:`composed_claimer_move` with diagnostics."""

    def __init__(self, n: int, k: Optional[int] = None, seed: int = 0):
        self.state = composed_claimer_new(n, k, seed)

    @property
    def k(self) -> int:
        return self.state.k

    def next_claim(self, unclaimed: PointSet, d: int, history: list[Round]) -> PointSet:
        return composed_claimer_move(self.state, unclaimed, d)

    @property
    def flags(self) -> dict:
        return {
            "k": self.state.k,
            "bound_violation": self.state.bound_violation,
            "s_moves": self.state.s_moves,
            "block_moves": sum(self.state.seen.values()),
        }


# =========================================================================
# Spec strings
# =========================================================================

NAMER_SPECS = ("greedy", "repeat", "doubling", "random", "optimal")
CLAIMER_SPECS = ("greedy", "lazy", "composed", "blocks", "random", "optimal")


def _parse_spec(spec: str) -> tuple[str, dict]:
    name, _, argstr = spec.partition(":")
    name = name.strip()
    args: dict[str, str] = {}
    if argstr:
        for part in argstr.split(","):
            key, _, val = part.partition("=")
            if not _ or not key.strip():
                raise ValueError(f"malformed strategy argument {part!r} in {spec!r}")
            args[key.strip()] = val.strip()
    return name, args


def _int_arg(args: dict, key: str, default: int) -> int:
    raw = args.get(key)
    if raw is None or raw == "auto":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"strategy argument {key}={raw!r} is not an integer") from exc


def make_namer(spec: str, n: int, *, default_seed: int = 0):
    """Build a Namer handle from a spec string like ``repeat:d=3``."""
    name, args = _parse_spec(spec)
    if name == "greedy":
        return GreedyNamer()
    if name == "repeat":
        if "d" not in args:
            raise ValueError("repeat Namer needs d=<distance>")
        return RepeatNamer(n, _int_arg(args, "d", 1))
    if name == "doubling":
        return DoublingNamer(n)
    if name == "random":
        return RandomNamer(n, _int_arg(args, "seed", default_seed))
    if name == "optimal":
        from .solver import OptimalNamer

        return OptimalNamer(n)
    if name == "human":
        raise ValueError("the human strategy only exists in live sessions")
    raise ValueError(f"unknown Namer strategy {name!r}")


def make_claimer(spec: str, n: int, *, default_seed: int = 0):
    """Build a Claimer handle from a spec string like ``composed:k=auto,seed=7``."""
    name, args = _parse_spec(spec)
    if name == "greedy":
        return GreedyClaimer()
    if name == "lazy":
        return LazyClaimer()
    if name == "composed":
        k_raw = args.get("k", "auto")
        k = None if k_raw == "auto" else _int_arg(args, "k", 0)
        return ComposedClaimer(n, k=k, seed=_int_arg(args, "seed", default_seed))
    if name == "blocks":
        return BlockClaimer(n)
    if name == "random":
        return RandomClaimer(n, _int_arg(args, "seed", default_seed))
    if name == "optimal":
        from .solver import OptimalClaimer

        return OptimalClaimer(n)
    if name == "human":
        raise ValueError("the human strategy only exists in live sessions")
    raise ValueError(f"unknown Claimer strategy {name!r}")
