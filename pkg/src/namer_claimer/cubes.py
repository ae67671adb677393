"""Hilbert cubes: construction, detection, certification, Ramsey numbers.

A cube H(x; d_1, ..., d_k) is the set of subset sums {x + sum(d_i, i in I)}.
It is non-degenerate when all 2^k sums are distinct, which depends on the
sides alone.  The bridge to the game: a point survives k lazy rounds with
distances d_1..d_k exactly when its whole cube sat inside the start set, so
"no big cube in either half" is what makes a random bipartition a good
opening book for the Claimer.

Search strategy in :func:`find_nondegenerate_cube`: depth-first over
nondecreasing side vectors, carrying the running intersection
T <- T and (T - d).  Two prunes keep it honest and fast:

* completion size: a surviving branch at depth j must still hold
  2^(k-j) distinct points, because the tail sides of any non-degenerate
  completion generate that many distinct translates of the base;
* headroom: with sides nondecreasing, the base of a completion through
  side d at depth j cannot exceed n - chosen - (k-j) d, so a branch whose
  running set is empty below that bound is dead.  Only the branch test
  looks at the bound; the running set itself is never clipped, because
  bases near the front need translate points near the back.

On large boards the wide third-side level is evaluated per surviving side
pair as one histogram of banded position differences, then the few
survivors are re-checked exactly in lexicographic order, so the reported
witness is the lexicographically smallest either way.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import CapacityError, PointSet


# =========================================================================
# Cube specs
# =========================================================================


@dataclass(frozen=True, slots=True)
class CubeSpec:
    """A Hilbert cube given by its base point and side lengths.

    Sides need not be distinct; equal sides simply make the cube
    degenerate.  Dimension is ``len(sides)``.
    """

    x: int
    sides: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.x, int) or isinstance(self.x, bool) or self.x < 1:
            raise ValueError("cube base must be a positive integer")
        object.__setattr__(self, "sides", tuple(self.sides))
        for d in self.sides:
            if not isinstance(d, int) or isinstance(d, bool) or d < 1:
                raise ValueError("cube sides must be positive integers")

    @property
    def dimension(self) -> int:
        return len(self.sides)

    def to_dict(self) -> dict:
        return {"x": self.x, "sides": list(self.sides)}


def cube_points(c: CubeSpec, n: int) -> PointSet:
    """All subset sums of ``c`` as a point set on the board [n].

    The doubling fold mask |= mask << d builds exactly the sums reachable
    with each side used at most once.  Raises if the cube pokes past n.
    """
    top = c.x + sum(c.sides)
    if top > n:
        raise ValueError(f"cube reaches {top}, past the board bound {n}")
    mask = 1 << (c.x - 1)
    for d in c.sides:
        mask |= mask << d
    return PointSet(n, mask)


def is_nondegenerate(c: CubeSpec) -> bool:
    """True iff all 2^k subset sums are distinct (base point irrelevant)."""
    sums = 1
    for d in c.sides:
        shifted = sums << d
        if sums & shifted:
            return False
        sums |= shifted
    return True


def contains_cube(S: PointSet, sides) -> Optional[int]:
    """Smallest base x with H(x; sides) inside S, or None.

    Runs the running-intersection characterization: after folding in side d
    the set T holds exactly the bases whose cube over the sides so far fits.
    """
    T = S.mask
    for d in sides:
        if d < 1:
            raise ValueError("cube sides must be positive integers")
        T &= T >> d
        if not T:
            return None
    if not T:
        return None
    return (T & -T).bit_length()


# =========================================================================
# Witness search
# =========================================================================

_VECTOR_MIN_N = 1024
_PROBE_NODES = 60_000


def _dfs_from(n, k, T, depth, prev_d, chosen, sums, sides, budget):
    """Exact DFS continuation from a partial side vector.

    Returns (witness or None, exhausted flag).  ``budget`` is a one-cell
    list of remaining node visits, or None for unlimited.

    T is never clipped: a base below the headroom bound may need translate
    points above it, so the headroom constraint only ever filters counts
    and the final base, not the running set.
    """
    if depth == k:
        return CubeSpec((T & -T).bit_length(), sides), True
    rem = k - depth
    d_top = (n - 1 - chosen) // rem
    for d in range(prev_d + 1, d_top + 1):
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0:
                return None, False
        shifted_sums = sums << d
        if sums & shifted_sums:
            continue
        T2 = T & (T >> d)
        if T2.bit_count() < 1 << (rem - 1):
            continue
        # any viable base fits under the headroom left by rem-1 more
        # sides of at least d each
        if not T2 & ((1 << (n - chosen - rem * d)) - 1):
            continue
        witness, done = _dfs_from(
            n, k, T2, depth + 1, d, chosen + d, sums | shifted_sums,
            sides + (d,), budget,
        )
        if witness is not None or not done:
            return witness, done
    return None, True


def _positions(mask: int, n: int) -> np.ndarray:
    """0-indexed set bit positions of ``mask`` as an int64 array."""
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little"))


def _vector_search(S: PointSet, k: int) -> Optional[CubeSpec]:
    """Full search with the wide third-side level done as banded histograms.

    For each surviving side pair, the exact counts |T2 and (T2 - d3)| for
    every d3 come from one bincount over the pairwise differences of T2's
    positions, restricted to the band of differences that can still start
    a nondecreasing completion.  Those counts upper-bound every deeper
    level, so no witness-bearing triple is dropped; survivors are re-run
    exactly in lexicographic order, keeping the reported witness the
    lexicographically smallest.
    """
    n, m = S.n, S.mask
    need3 = 1 << (k - 3)
    survivors: list[tuple[int, int, int]] = []

    for d1 in range(1, (n - 1) // k + 1):
        T1 = m & (m >> d1)
        if T1.bit_count() < 1 << (k - 1):
            continue
        if not T1 & ((1 << (n - k * d1)) - 1):
            continue
        d2_top = (n - 1 - d1) // (k - 1)
        for d2 in range(d1 + 1, d2_top + 1):
            T2 = T1 & (T1 >> d2)
            if T2.bit_count() < 1 << (k - 2):
                continue
            if not T2 & ((1 << (n - d1 - (k - 1) * d2)) - 1):
                continue
            cap3 = (n - 1 - d1 - d2) // (k - 2)
            if cap3 <= d2:
                continue
            pos = _positions(T2, n)
            band = np.searchsorted(pos, pos + cap3, side="right")
            band -= np.arange(pos.size) + 1
            width = int(band.max())
            if width <= 0:
                continue
            padded = np.concatenate([pos, np.full(width, 2 * n, dtype=pos.dtype)])
            win = np.lib.stride_tricks.sliding_window_view(padded, width + 1)
            win = win[: pos.size]
            diffs = win[:, 1:] - win[:, :1]
            np.minimum(diffs, cap3 + 1, out=diffs)
            counts = np.bincount(diffs.ravel(), minlength=cap3 + 2)
            hits = np.flatnonzero(counts[d2 + 1 : cap3 + 1] >= need3)
            for h in hits:
                d3 = d2 + 1 + int(h)
                if d3 != d1 + d2:
                    survivors.append((d1, d2, d3))

    survivors.sort()
    for d1, d2, d3 in survivors:
        T1 = m & (m >> d1)
        T2 = T1 & (T1 >> d2)
        T3 = T2 & (T2 >> d3)
        if T3.bit_count() < need3:
            continue
        if not T3 & ((1 << (n - d1 - d2 - (k - 2) * d3)) - 1):
            continue
        sums = 1
        for d in (d1, d2, d3):
            sums |= sums << d
        witness, _ = _dfs_from(
            n, k, T3, 3, d3, d1 + d2 + d3, sums, (d1, d2, d3), None,
        )
        if witness is not None:
            return witness
    return None


def find_nondegenerate_cube(S: PointSet, k: int) -> Optional[CubeSpec]:
    """Lexicographically smallest non-degenerate dimension-k cube in S.

    Exhaustive: a None return is a proof of absence.  Large boards get a
    budgeted plain probe first (dense boards have witnesses near the front
    of the order), then the vectorized sweep.
    """
    if k < 1:
        raise ValueError("cube dimension must be at least 1")
    if len(S) < 1 << k:
        return None
    if k >= 4 and S.n >= _VECTOR_MIN_N:
        witness, done = _dfs_from(S.n, k, S.mask, 0, 0, 0, 1, (), [_PROBE_NODES])
        if witness is not None or done:
            return witness
        return _vector_search(S, k)
    witness, _ = _dfs_from(S.n, k, S.mask, 0, 0, 0, 1, (), None)
    return witness


# =========================================================================
# Random partitions and certification
# =========================================================================


def random_partition(n: int, r: int, seed: int) -> list[PointSet]:
    """Partition [n] into r classes, each point placed independently.

    Two classes use one getrandbits draw (fast at n = 2^20 and beyond);
    more classes assign point by point.  Same seed, same partition.
    """
    if r < 2:
        raise ValueError("a partition needs at least 2 classes")
    rng = random.Random(seed)
    full = (1 << n) - 1
    if r == 2:
        a = rng.getrandbits(n) & full
        masks = [a, full & ~a]
    else:
        masks = [0] * r
        for x in range(n):
            masks[rng.randrange(r)] |= 1 << x
    return [PointSet(n, m) for m in masks]


def expected_cube_count(n: int, k: int) -> float:
    """First-moment bound n^(k+1) 2^(-2^k) on cubes in a random half.

    Evaluated in log space; a tiny bound is the whole point, so underflow
    to 0.0 is fine and huge exponents round up to infinity.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    exponent = (k + 1) * math.log2(n) - (1 << k)
    if exponent > 1000:
        return math.inf
    return 2.0 ** exponent


@dataclass(frozen=True, slots=True)
class PartitionCertificate:
    """Outcome of searching every class of a partition for a k-cube.

    ``exhaustive`` is True when every search came back empty, i.e. the
    partition is certified cube-free at dimension k.  Otherwise
    ``witnesses`` holds a cube for at least one class.
    """

    n: int
    classes: tuple[PointSet, ...]
    k: int
    exhaustive: bool
    witnesses: tuple[Optional[CubeSpec], ...]

    def class_report(self, i: int) -> dict:
        w = self.witnesses[i]
        return {
            "n": self.n,
            "k": self.k,
            "class": i,
            "witness": None if w is None else w.to_dict(),
            "exhaustive": w is None,
        }


def certify_partition(classes, k: int) -> PartitionCertificate:
    """Run the cube search over each class of a partition of [n]."""
    classes = tuple(classes)
    if not classes:
        raise ValueError("empty partition")
    n = classes[0].n
    union = 0
    total = 0
    for cls in classes:
        if cls.n != n:
            raise ValueError("partition classes disagree on the board size")
        union |= cls.mask
        total += len(cls)
    if union != (1 << n) - 1 or total != n:
        raise ValueError("classes do not partition the board")
    witnesses = tuple(find_nondegenerate_cube(cls, k) for cls in classes)
    return PartitionCertificate(
        n=n,
        classes=classes,
        k=k,
        exhaustive=all(w is None for w in witnesses),
        witnesses=witnesses,
    )


# =========================================================================
# Hilbert cube Ramsey numbers
# =========================================================================

_FRONTIER_CAP = 2_000_000


def _has_cube_at_max(cls_mask: int, k: int, mx: int) -> bool:
    """Does the class contain a (possibly degenerate) k-cube topping at mx?

    Sides run nondecreasing with repeats allowed; the base is forced to
    mx - sum(sides), so only the membership of the 2^k sums is checked.
    """

    def rec(depth: int, prev: int, total: int, sums: tuple[int, ...]) -> bool:
        if depth == k:
            x = mx - total
            if x < 1:
                return False
            return all(cls_mask >> (x + s - 1) & 1 for s in sums)
        d_top = (mx - 1 - total) // (k - depth)
        for d in range(prev, d_top + 1):
            if rec(depth + 1, d, total + d, sums + tuple(s + d for s in sums)):
                return True
        return False

    return rec(0, 1, 0, (0,))


def hilbert_ramsey_number(k: int, r: int, n_max: int) -> Optional[int]:
    """Least n <= n_max with no cube-free r-colouring of [n], else None.

    Degenerate cubes count.  Grows cube-free colourings one point at a
    time: a new cube in the extended colouring must top out at the new
    point, so only those are checked.  Colourings are kept in
    first-occurrence canonical form, which quotients out colour renaming.
    """
    if k < 1 or r < 1 or n_max < 1:
        raise ValueError("need k >= 1, r >= 1, n_max >= 1")
    frontier: set[tuple[int, ...]] = {()}
    for m in range(1, n_max + 1):
        extended: set[tuple[int, ...]] = set()
        for col in frontier:
            used = (max(col) + 1) if col else 0
            for c in range(min(used + 1, r)):
                ext = col + (c,)
                cls_mask = 0
                for i, ci in enumerate(ext):
                    if ci == c:
                        cls_mask |= 1 << i
                if not _has_cube_at_max(cls_mask, k, m):
                    extended.add(ext)
        if not extended:
            return m
        if len(extended) > _FRONTIER_CAP:
            raise CapacityError(
                f"colouring frontier passed {_FRONTIER_CAP} states at n={m}"
            )
        frontier = extended
    return None
