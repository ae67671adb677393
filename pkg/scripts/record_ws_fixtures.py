"""Record WebSocket server frames into JSON fixtures for the client tests.

Runs real sessions against the service app in-process and captures every
server frame in order. The browser client's replay test folds these logs
through its reducer and checks the rendered board against each state
frame. Rerun after any protocol change:

    python3 scripts/record_ws_fixtures.py
"""

import json
from pathlib import Path

from starlette.testclient import TestClient

from namer_claimer.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "frontend" / "test" / "fixtures"


def record_namer_game(client: TestClient) -> list[dict]:
    """Human namer, exact engine, n=8: three rounds of d=1 to the end."""
    log: list[dict] = []
    with client.websocket_connect("/ws") as ws:
        def shoot(**payload):
            ws.send_text(json.dumps(payload))

        def take(count):
            for _ in range(count):
                log.append(json.loads(ws.receive_text()))

        shoot(type="create", n=8, role="namer")
        take(1)                      # state
        shoot(type="name", d=0)
        take(1)                      # error illegal_distance
        for _ in range(3):
            shoot(type="name", d=1)
            take(2)                  # claimed + state
        take(1)                      # end
    return log


def record_claimer_game(client: TestClient) -> list[dict]:
    """Human claimer, n=8: one rejected claim, one real claim, one pass."""
    log: list[dict] = []
    with client.websocket_connect("/ws") as ws:
        def shoot(**payload):
            ws.send_text(json.dumps(payload))

        def take(count):
            for _ in range(count):
                log.append(json.loads(ws.receive_text()))

        shoot(type="create", n=8, role="claimer")
        take(2)                      # named + state
        d = log[0]["d"]
        shoot(type="claim", points=[1, 1 + d])
        take(1)                      # error illegal_claim
        shoot(type="claim", points=[1, 8])
        take(3)                      # claimed + named + state
        shoot(type="claim", points=[])
        take(3)                      # claimed [] + named + state
    return log


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with TestClient(create_app(out_dir="/tmp/ws-fixture-transcripts")) as client:
        for name, recorder in (
            ("namer8", record_namer_game),
            ("claimer8", record_claimer_game),
        ):
            log = recorder(client)
            target = FIXTURES / f"{name}.json"
            target.write_text(json.dumps(log, indent=2) + "\n")
            print(f"{target}: {len(log)} frames")


if __name__ == "__main__":
    main()
