"""Batch simulations, bound checking, and growth tables.

Everything here is driven by strategy spec strings so a CSV row can be
reproduced exactly from its own columns plus the seed.  Each (n, seed)
cell derives distinct per-role seeds (2s for the Namer, 2s+1 for the
Claimer) so the two sides never share a stream.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO

from .core import (
    CapacityError,
    InvariantViolation,
    Transcript,
    default_round_cap,
    play_game,
    transcript_fault,
)
from .strategies import (
    ComposedClaimer,
    composed_round_bound,
    make_claimer,
    make_namer,
)

MAX_BOARD = 1 << 24
DEFAULT_GRID = (1 << 4, 1 << 8, 1 << 12, 1 << 16, 1 << 20)

# Strategies whose play depends on the seed; deterministic pairs run once.
_RANDOMIZED = ("random", "composed")


def _spec_name(spec: str) -> str:
    return spec.partition(":")[0].strip()


def is_randomized(spec: str) -> bool:
    return _spec_name(spec) in _RANDOMIZED


# =========================================================================
# Match records
# =========================================================================


@dataclass(frozen=True)
class MatchRecord:
    """One simulated game, reduced to what analysis needs.

    ``per_round_sizes`` holds |A| after each round, ending at 0 for
    terminal games.  ``bound`` / ``bound_ok`` carry the Claimer-side
    guarantee applicable to the claimer spec, if any.
    """

    n: int
    namer_spec: str
    claimer_spec: str
    seed: int
    rounds: int
    per_round_sizes: tuple[int, ...]
    terminal: bool
    bound: Optional[int]
    bound_ok: Optional[bool]
    flags: tuple[tuple[str, object], ...] = ()


def _claimer_bound(claimer_spec: str, n: int, handle) -> Optional[int]:
    name = _spec_name(claimer_spec)
    if name == "greedy":
        # halving guarantee: rounds <= 1 + floor(log2 n) = bit_length
        return n.bit_length()
    if name == "composed":
        return composed_round_bound(handle.k)
    return None


def run_matchup(
    namer_spec: str,
    claimer_spec: str,
    n_list: Iterable[int],
    seeds: Iterable[int],
) -> list[MatchRecord]:
    """One record per (n, seed), in grid order, deterministic given seeds."""
    records = []
    for n in n_list:
        if n > MAX_BOARD:
            raise CapacityError(f"boards past n={MAX_BOARD} are not supported")
        for seed in seeds:
            namer = make_namer(namer_spec, n, default_seed=2 * seed)
            claimer = make_claimer(claimer_spec, n, default_seed=2 * seed + 1)
            cap = default_round_cap(n)
            if isinstance(claimer, ComposedClaimer):
                cap = max(cap, composed_round_bound(claimer.k) + 1)
            transcript = play_game(namer, claimer, n, round_cap=cap)
            fault = transcript_fault(transcript)
            if fault is not None:
                raise InvariantViolation(
                    f"engine produced an invalid transcript at round {fault[0]}: {fault[1]}"
                )
            sizes = []
            remaining = n
            for rnd in transcript.rounds:
                remaining -= len(rnd.claimed)
                sizes.append(remaining)
            bound = _claimer_bound(claimer_spec, n, claimer)
            flags = tuple(sorted(getattr(claimer, "flags", {}).items()))
            bound_ok = None
            if bound is not None:
                violated = any(v for k, v in flags if k == "bound_violation")
                bound_ok = bool(
                    transcript.terminal
                    and len(transcript.rounds) <= bound
                    and not violated
                )
            records.append(
                MatchRecord(
                    n=n,
                    namer_spec=namer_spec,
                    claimer_spec=claimer_spec,
                    seed=seed,
                    rounds=len(transcript.rounds),
                    per_round_sizes=tuple(sizes),
                    terminal=transcript.terminal,
                    bound=bound,
                    bound_ok=bound_ok,
                    flags=flags,
                )
            )
    return records


# =========================================================================
# Bound checking
# =========================================================================


@dataclass(frozen=True)
class BoundViolation:
    n: int
    seed: int
    namer_spec: str
    claimer_spec: str
    kind: str
    detail: str


@dataclass(frozen=True)
class BoundReport:
    checked: int
    violations: tuple[BoundViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_bounds(records: Iterable[MatchRecord]) -> BoundReport:
    """Verify the per-strategy guarantees a record is subject to.

    Greedy Claimer: rounds <= 1 + log2 n.  Composed Claimer: terminal
    within (4k-1)*3 + 1 rounds and no routing-budget flag.  Greedy Namer:
    while |A| >= 100 the next size is at least 0.99 |A|^2 / (4n).
    Violations are returned as data, not raised.
    """
    checked = 0
    violations = []

    def flag(rec: MatchRecord, kind: str, detail: str):
        violations.append(
            BoundViolation(
                n=rec.n, seed=rec.seed, namer_spec=rec.namer_spec,
                claimer_spec=rec.claimer_spec, kind=kind, detail=detail,
            )
        )

    for rec in records:
        checked += 1
        claimer = _spec_name(rec.claimer_spec)
        if claimer == "greedy":
            limit = 1 + math.log2(rec.n) + 1e-9
            if not rec.terminal or rec.rounds > limit:
                flag(rec, "greedy-claimer", f"{rec.rounds} rounds, limit {limit:.2f}")
        elif claimer == "composed":
            if rec.bound is None or not rec.terminal or rec.rounds > rec.bound:
                flag(rec, "composed-claimer", f"{rec.rounds} rounds, limit {rec.bound}")
            if any(k == "bound_violation" and v for k, v in rec.flags):
                flag(rec, "composed-routing", "side budget exceeded")
        if _spec_name(rec.namer_spec) == "greedy":
            prev = rec.n
            for i, size in enumerate(rec.per_round_sizes):
                if prev >= 100:
                    floor_next = 0.99 * prev * prev / (4 * rec.n)
                    if size < floor_next:
                        flag(
                            rec, "greedy-namer-growth",
                            f"round {i + 1}: {prev} -> {size}, floor {floor_next:.1f}",
                        )
                prev = size
    return BoundReport(checked=checked, violations=tuple(violations))


# =========================================================================
# Growth tables
# =========================================================================


@dataclass(frozen=True)
class GrowthRow:
    n: int
    median_rounds: float
    max_rounds: int
    games: int


@dataclass(frozen=True)
class GrowthReport:
    """Medians and maxima per n with a descriptive log-log fit.

    The fit is least squares of median rounds against log2 log2 n with no
    intercept; residuals are reported alongside, and nothing is asserted
    about the slope (the growth law's constants are asymptotic).
    """

    namer_spec: str
    claimer_spec: str
    rows: tuple[GrowthRow, ...]
    fit_constant: float
    residuals: tuple[float, ...]
    records: tuple[MatchRecord, ...]

    def to_dict(self) -> dict:
        return {
            "namer": self.namer_spec,
            "claimer": self.claimer_spec,
            "rows": [
                {
                    "n": r.n,
                    "median_rounds": r.median_rounds,
                    "max_rounds": r.max_rounds,
                    "games": r.games,
                }
                for r in self.rows
            ],
            "fit": {
                "model": "rounds ~ c * log2(log2(n))",
                "c": self.fit_constant,
                "residuals": list(self.residuals),
            },
        }


def growth_table(
    namer_spec: str,
    claimer_spec: str,
    n_grid: Iterable[int] = DEFAULT_GRID,
    seeds: Iterable[int] = tuple(range(30)),
) -> GrowthReport:
    """Sweep the grid and aggregate; deterministic pairs collapse to one seed."""
    n_grid = list(n_grid)
    seeds = list(seeds)
    if not (is_randomized(namer_spec) or is_randomized(claimer_spec)):
        seeds = seeds[:1]
    records = run_matchup(namer_spec, claimer_spec, n_grid, seeds)
    rows = []
    xs, ys = [], []
    for n in n_grid:
        cell = [r.rounds for r in records if r.n == n]
        med = float(statistics.median(cell))
        rows.append(GrowthRow(n=n, median_rounds=med, max_rounds=max(cell), games=len(cell)))
        if n >= 4:
            xs.append(math.log2(math.log2(n)))
            ys.append(med)
    denom = sum(x * x for x in xs)
    c = sum(x * y for x, y in zip(xs, ys)) / denom if denom else 0.0
    residuals = tuple(y - c * x for x, y in zip(xs, ys))
    return GrowthReport(
        namer_spec=namer_spec,
        claimer_spec=claimer_spec,
        rows=tuple(rows),
        fit_constant=c,
        residuals=residuals,
        records=tuple(records),
    )


# =========================================================================
# CSV emission
# =========================================================================

CSV_HEADER = "n,seed,namer,claimer,rounds,bound,bound_ok"


def write_csv(records: Iterable[MatchRecord], out: TextIO):
    """Rows in the exact column order of CSV_HEADER; empty cells for n/a."""
    out.write(CSV_HEADER + "\n")
    for rec in records:
        bound = "" if rec.bound is None else str(rec.bound)
        ok = "" if rec.bound_ok is None else ("true" if rec.bound_ok else "false")
        out.write(
            f"{rec.n},{rec.seed},{rec.namer_spec},{rec.claimer_spec},"
            f"{rec.rounds},{bound},{ok}\n"
        )
