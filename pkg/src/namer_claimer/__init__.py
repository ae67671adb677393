"""Laboratory for the Namer-Claimer game on [n].

Two players alternate on the board [n] = {1, ..., n}: the Namer names a
distance d, the Claimer claims any set of unclaimed points containing no two
points exactly d apart.  The Claimer wants the whole board claimed in as few
rounds as possible; the Namer wants to stall.  This package provides the game
engine, the strategies whose round counts bracket the game value between
log-log and log bounds, a Hilbert-cube search toolkit behind the good Claimer
strategy, an exact minimax solver for small boards, an experiment harness, and
a CLI plus a WebSocket service for live play.
"""

from .core import (
    PointSet,
    Round,
    Transcript,
    GameError,
    InvalidDistanceError,
    IllegalClaimError,
    StrategyFault,
    CapacityError,
    InvariantViolation,
    is_d_free,
    path_components,
    apply_round,
    play_game,
    validate_transcript,
    transcript_fault,
    default_round_cap,
)

__all__ = [
    "PointSet",
    "Round",
    "Transcript",
    "GameError",
    "InvalidDistanceError",
    "IllegalClaimError",
    "StrategyFault",
    "CapacityError",
    "InvariantViolation",
    "is_d_free",
    "path_components",
    "apply_round",
    "play_game",
    "validate_transcript",
    "transcript_fault",
    "default_round_cap",
]

__version__ = "0.1.0"
