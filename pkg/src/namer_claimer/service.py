"""Live-play session service: one human, one engine, JSON over WebSocket.

Wire protocol (text frames, one JSON object each):

  client -> server
    {"type": "create", "n": int, "role": "namer"|"claimer",
     "engine": spec?, "seed": int?}
    {"type": "name", "d": int}
    {"type": "claim", "points": [int, ...]}
    {"type": "resume", "session": str}

  server -> client
    {"type": "state", "session": str, "unclaimed": [int], "history": [...],
     "phase": "awaiting-name"|"awaiting-claim"|"finished", "pending_d": int?}
    {"type": "named", "d": int}
    {"type": "claimed", "points": [int]}
    {"type": "end", "rounds": int}
    {"type": "error", "code": str, "detail": str}

Every mutation is followed by one state message, so a client can render
from the latest state alone.  Errors never mutate the session.  Finished
games are persisted as transcript JSON files under the service's out
directory.  Sessions live in memory; a dropped socket can reattach with
resume as long as the process is up.
"""

from __future__ import annotations

import asyncio
import json
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .core import (
    GameError,
    PointSet,
    Round,
    Transcript,
    apply_round,
    check_distance,
)
from .solver import DEFAULT_CAP
from .strategies import make_claimer, make_namer

LIVE_BOARD_CAP = 512

PHASE_NAME = "awaiting-name"
PHASE_CLAIM = "awaiting-claim"
PHASE_DONE = "finished"


def default_engine_spec(n: int) -> str:
    """Strongest documented opponent: exact play when solvable, else composed."""
    return "optimal" if n <= DEFAULT_CAP else "composed"


# =========================================================================
# Sessions
# =========================================================================


@dataclass
class Session:
    id: str
    n: int
    human_role: str
    engine_spec: str
    engine: object
    unclaimed: PointSet
    history: list[Round] = field(default_factory=list)
    phase: str = PHASE_NAME
    pending_d: Optional[int] = None
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)

    def state_message(self) -> dict:
        return {
            "type": "state",
            "session": self.id,
            "unclaimed": self.unclaimed.to_list(),
            "history": [
                {"d": r.d, "claimed": r.claimed.to_list()} for r in self.history
            ],
            "phase": self.phase,
            "pending_d": self.pending_d,
        }

    def transcript(self) -> Transcript:
        return Transcript(
            n=self.n, rounds=tuple(self.history), terminal=not self.unclaimed
        )


def _build_session(n: int, role: str, engine_spec: str, seed: int) -> Session:
    sid = uuid.uuid4().hex[:12]
    if role == "namer":
        engine = make_claimer(engine_spec, n, default_seed=2 * seed + 1)
    else:
        engine = make_namer(engine_spec, n, default_seed=2 * seed)
    return Session(
        id=sid,
        n=n,
        human_role=role,
        engine_spec=engine_spec,
        engine=engine,
        unclaimed=PointSet.full(n),
    )


# =========================================================================
# Application factory
# =========================================================================


def create_app(out_dir: str = "transcripts", static_dir: Optional[str] = None) -> FastAPI:
    """Build the service app.

    Args:
      out_dir: directory for finished-game transcript JSON files, created
        on demand.
      static_dir: optional directory of built client assets to host at /;
        the WebSocket protocol works the same with or without it.
    """
    app = FastAPI(title="namer-claimer")
    sessions: dict[str, Session] = {}
    out_path = Path(out_dir)

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "sessions": len(sessions)}

    def persist(session: Session) -> None:
        out_path.mkdir(parents=True, exist_ok=True)
        target = out_path / f"{session.id}.json"
        target.write_text(session.transcript().to_json() + "\n")

    async def send(sock: WebSocket, payload: dict) -> None:
        await sock.send_text(json.dumps(payload))

    async def send_error(sock: WebSocket, code: str, detail: str) -> None:
        await send(sock, {"type": "error", "code": code, "detail": detail})

    # ---- message handlers, one per client message type ----

    async def handle_create(sock: WebSocket, msg: dict) -> Optional[Session]:
        n = msg.get("n")
        role = msg.get("role")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            await send_error(sock, "bad_create", "n must be a positive integer")
            return None
        if n > LIVE_BOARD_CAP:
            await send_error(
                sock, "board-too-large",
                f"live boards are capped at n={LIVE_BOARD_CAP}",
            )
            return None
        if role not in ("namer", "claimer"):
            await send_error(sock, "bad_create", "role must be namer or claimer")
            return None
        seed = msg.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            await send_error(sock, "bad_create", "seed must be an integer")
            return None
        engine_spec = msg.get("engine") or "auto"
        if engine_spec == "auto":
            engine_spec = default_engine_spec(n)
        try:
            session = _build_session(n, role, engine_spec, seed)
        except (ValueError, GameError) as exc:
            await send_error(sock, "bad_engine", str(exc))
            return None
        sessions[session.id] = session
        async with session.lock:
            if role == "claimer":
                await engine_names(sock, session)
            else:
                await send(sock, session.state_message())
        return session

    async def engine_names(sock: WebSocket, session: Session) -> None:
        """Engine Namer move: pick a distance, announce it, then the state."""
        d = session.engine.next_distance(session.unclaimed, session.history)
        check_distance(d, session.n)
        session.pending_d = d
        session.phase = PHASE_CLAIM
        await send(sock, {"type": "named", "d": d})
        await send(sock, session.state_message())

    async def finish(sock: WebSocket, session: Session) -> None:
        session.phase = PHASE_DONE
        session.pending_d = None
        await send(sock, session.state_message())
        await send(sock, {"type": "end", "rounds": len(session.history)})
        persist(session)

    async def handle_name(sock: WebSocket, session: Session, msg: dict) -> None:
        async with session.lock:
            if session.phase != PHASE_NAME or session.human_role != "namer":
                await send_error(sock, "wrong_phase", f"phase is {session.phase}")
                return
            d = msg.get("d")
            if not isinstance(d, int) or isinstance(d, bool):
                await send_error(sock, "illegal_distance", "d must be an integer")
                return
            try:
                check_distance(d, session.n)
            except GameError as exc:
                await send_error(sock, "illegal_distance", str(exc))
                return
            claim = session.engine.next_claim(session.unclaimed, d, session.history)
            session.unclaimed = apply_round(session.unclaimed, d, claim)
            session.history.append(Round(d, claim))
            await send(sock, {"type": "claimed", "points": claim.to_list()})
            if not session.unclaimed:
                await finish(sock, session)
            else:
                await send(sock, session.state_message())

    async def handle_claim(sock: WebSocket, session: Session, msg: dict) -> None:
        async with session.lock:
            if session.phase != PHASE_CLAIM or session.human_role != "claimer":
                await send_error(sock, "wrong_phase", f"phase is {session.phase}")
                return
            points = msg.get("points")
            if not isinstance(points, list) or any(
                not isinstance(x, int) or isinstance(x, bool) for x in points
            ):
                await send_error(sock, "illegal_claim", "points must be a list of integers")
                return
            try:
                claim = PointSet.of(session.n, points)
                remaining = apply_round(session.unclaimed, session.pending_d, claim)
            except (ValueError, GameError) as exc:
                await send_error(sock, "illegal_claim", str(exc))
                return
            session.unclaimed = remaining
            session.history.append(Round(session.pending_d, claim))
            session.pending_d = None
            await send(sock, {"type": "claimed", "points": claim.to_list()})
            if not session.unclaimed:
                await finish(sock, session)
            else:
                await engine_names(sock, session)

    async def handle_resume(sock: WebSocket, msg: dict) -> Optional[Session]:
        sid = msg.get("session")
        session = sessions.get(sid) if isinstance(sid, str) else None
        if session is None:
            await send_error(sock, "session-not-found", f"no session {sid!r}")
            return None
        async with session.lock:
            await send(sock, session.state_message())
        return session

    @app.websocket("/ws")
    async def ws_endpoint(sock: WebSocket) -> None:
        await sock.accept()
        session: Optional[Session] = None
        while True:
            try:
                raw = await sock.receive_text()
            except WebSocketDisconnect:
                return
            try:
                msg = json.loads(raw)
                if not isinstance(msg, dict):
                    raise ValueError("frame is not an object")
            except ValueError:
                await send_error(sock, "bad_message", "frames must be JSON objects")
                continue
            mtype = msg.get("type")
            try:
                if mtype == "create":
                    session = await handle_create(sock, msg) or session
                elif mtype == "resume":
                    session = await handle_resume(sock, msg) or session
                elif mtype in ("name", "claim"):
                    if session is None:
                        await send_error(sock, "session-not-found",
                                         "create or resume a session first")
                    elif mtype == "name":
                        await handle_name(sock, session, msg)
                    else:
                        await handle_claim(sock, session, msg)
                else:
                    await send_error(sock, "bad_message", f"unknown type {mtype!r}")
            except GameError as exc:
                await send_error(sock, "engine_fault", str(exc))

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
