"""Command-line entry points.

One executable, six subcommands:

    solve      exact game value and principal line for small boards
    simulate   strategy matchups over a grid of board sizes, CSV + JSON out
    cubes      partition certification (exhaustive cube search per class)
    ramsey     least n forcing a monochromatic cube in every r-colouring
    play       a single scripted game, transcript JSON out
    serve      live-play session service over WebSocket

Exit codes: 0 success, 1 runtime failure with a diagnostic, 2 usage error,
3 capacity errors (board or cap too large for the requested operation).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .core import CapacityError, GameError, PointSet, play_game, transcript_fault
from .cubes import certify_partition, expected_cube_count, hilbert_ramsey_number, random_partition
from .experiments import DEFAULT_GRID, growth_table, check_bounds, write_csv
from .solver import DEFAULT_CAP, solve
from .strategies import make_claimer, make_namer

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


# =========================================================================
# Argument helpers
# =========================================================================


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


# =========================================================================
# Subcommand handlers
# =========================================================================


def _cmd_solve(args) -> int:
    report = solve(args.n, cap=args.cap)
    print(json.dumps(report.to_dict(), indent=2))
    if args.line:
        for i, rnd in enumerate(report.principal_line.rounds, start=1):
            claim = ",".join(str(x) for x in rnd.claimed.to_list())
            print(f"round {i}: d={rnd.d} claim {{{claim}}}", file=sys.stderr)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    report = growth_table(
        args.namer,
        args.claimer,
        n_grid=args.n_grid,
        seeds=range(args.seeds),
    )
    if args.csv:
        with open(args.csv, "w") as fh:
            write_csv(report.records, fh)
    else:
        write_csv(report.records, sys.stdout)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
    bounds = check_bounds(report.records)
    if not bounds.ok:
        for v in bounds.violations:
            print(f"bound violation: {v.detail}", file=sys.stderr)
        return EXIT_FAILURE
    print(
        f"fit: rounds ~ {report.fit_constant:.3f} * log2(log2(n))",
        file=sys.stderr,
    )
    return EXIT_OK


def _odd_even(n: int) -> list[PointSet]:
    odds = 0
    for x in range(1, n + 1, 2):
        odds |= 1 << (x - 1)
    full = (1 << n) - 1
    return [PointSet(n, odds), PointSet(n, full & ~odds)]


def _cmd_cubes(args) -> int:
    if args.classes == "odd-even":
        classes = _odd_even(args.n)
    else:
        classes = random_partition(args.n, args.r, args.seed)
    cert = certify_partition(classes, args.k)
    reports = [cert.class_report(i) for i in range(len(classes))]
    print(json.dumps(reports, indent=2))
    print(
        f"expected cube count per class: {expected_cube_count(args.n, args.k):.3e}",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_ramsey(args) -> int:
    result = hilbert_ramsey_number(args.k, args.r, args.n_max)
    print("none" if result is None else result)
    return EXIT_OK


def _cmd_play(args) -> int:
    namer = make_namer(args.namer, args.n, default_seed=2 * args.seed)
    claimer = make_claimer(args.claimer, args.n, default_seed=2 * args.seed + 1)
    transcript = play_game(namer, claimer, args.n)
    fault = transcript_fault(transcript)
    if fault is not None:
        print(f"invalid transcript at round {fault[0]}: {fault[1]}", file=sys.stderr)
        return EXIT_FAILURE
    text = transcript.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"{len(transcript.rounds)} rounds", file=sys.stderr)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(out_dir=args.out_dir, static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


# =========================================================================
# Parser assembly
# =========================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="namer-claimer",
        description="Laboratory for the Namer-Claimer game on [n].",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact game value by memoized minimax")
    p.add_argument("--n", type=_positive, required=True, help="board size")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                   help=f"largest solvable n (default {DEFAULT_CAP})")
    p.add_argument("--line", action="store_true",
                   help="also print the principal line, one round per row")
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("simulate", help="strategy matchups over a board grid")
    p.add_argument("--namer", required=True, help="namer strategy spec")
    p.add_argument("--claimer", required=True, help="claimer strategy spec")
    p.add_argument("--n-grid", type=_int_list, default=list(DEFAULT_GRID),
                   help="comma-separated board sizes")
    p.add_argument("--seeds", type=_positive, default=30,
                   help="seeds 0..S-1 per grid point (randomized pairs only)")
    p.add_argument("--csv", help="write per-game rows here instead of stdout")
    p.add_argument("--json", help="write the growth report here")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("cubes", help="cube search and partition certification")
    cubes_sub = p.add_subparsers(dest="cubes_command", required=True)
    c = cubes_sub.add_parser("certify", help="exhaustively certify a partition")
    c.add_argument("--n", type=_positive, required=True, help="board size")
    c.add_argument("--k", type=_positive, required=True, help="cube dimension")
    c.add_argument("--classes", choices=("odd-even", "random"), default="random")
    c.add_argument("--seed", type=int, default=0, help="random partition seed")
    c.add_argument("--r", type=_positive, default=2, help="number of classes")
    c.set_defaults(handler=_cmd_cubes)

    p = sub.add_parser("ramsey", help="least n forcing a monochromatic cube")
    p.add_argument("--k", type=_positive, required=True, help="cube dimension")
    p.add_argument("--r", type=_positive, required=True, help="colour count")
    p.add_argument("--n-max", type=_positive, required=True,
                   help="give up past this board size")
    p.set_defaults(handler=_cmd_ramsey)

    p = sub.add_parser("play", help="one scripted game, transcript to stdout")
    p.add_argument("--namer", required=True, help="namer strategy spec")
    p.add_argument("--claimer", required=True, help="claimer strategy spec")
    p.add_argument("--n", type=_positive, required=True, help="board size")
    p.add_argument("--seed", type=int, default=0, help="seed for random strategies")
    p.add_argument("--out", help="write the transcript JSON here")
    p.set_defaults(handler=_cmd_play)

    p = sub.add_parser("serve", help="live-play session service")
    p.add_argument("--port", type=_positive, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--out-dir", default="transcripts",
                   help="directory for finished-game transcript JSON files")
    p.add_argument("--static-dir", default=None,
                   help="optional built web client to host at /")
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (GameError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
