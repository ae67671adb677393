"""Command-line dispatch: outputs, artifacts, exit codes."""

import json

import pytest

from namer_claimer.cli import EXIT_CAPACITY, EXIT_FAILURE, EXIT_OK, main
from namer_claimer.core import Transcript, validate_transcript


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# =========================================================================
# solve
# =========================================================================


def test_solve_n8(capsys):
    code, out, err = run(capsys, "solve", "--n", "8", "--line")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["value"] == 3
    line = Transcript.from_dict(report["principal_line"])
    assert validate_transcript(line)
    assert len(line.rounds) == 3
    assert "round 1: d=1 claim {1,3,5,8}" in err


def test_solve_over_cap_is_capacity_exit(capsys):
    code, _, err = run(capsys, "solve", "--n", "99")
    assert code == EXIT_CAPACITY
    assert "capacity" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve"])  # missing --n
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


# =========================================================================
# simulate
# =========================================================================


def test_simulate_writes_csv_and_json(tmp_path, capsys):
    csv_path = tmp_path / "games.csv"
    json_path = tmp_path / "growth.json"
    code, out, err = run(
        capsys, "simulate", "--namer", "greedy", "--claimer", "greedy",
        "--n-grid", "16,64", "--seeds", "2",
        "--csv", str(csv_path), "--json", str(json_path),
    )
    assert code == EXIT_OK
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0] == "n,seed,namer,claimer,rounds,bound,bound_ok"
    assert lines[1] == "16,0,greedy,greedy,5,5,true"
    report = json.loads(json_path.read_text())
    assert [row["n"] for row in report["rows"]] == [16, 64]
    assert "fit" in err


def test_simulate_stdout_csv(capsys):
    code, out, _ = run(
        capsys, "simulate", "--namer", "repeat:d=1", "--claimer", "blocks",
        "--n-grid", "32", "--seeds", "1",
    )
    assert code == EXIT_OK
    assert out.startswith("n,seed,namer,claimer")


def test_simulate_bad_spec_fails(capsys):
    code, _, err = run(
        capsys, "simulate", "--namer", "nope", "--claimer", "greedy",
        "--n-grid", "16", "--seeds", "1",
    )
    assert code == EXIT_FAILURE
    assert "error" in err


# =========================================================================
# cubes / ramsey
# =========================================================================


def test_cubes_certify_odd_even(capsys):
    code, out, err = run(
        capsys, "cubes", "certify", "--n", "16", "--classes", "odd-even",
        "--k", "2",
    )
    assert code == EXIT_OK
    reports = json.loads(out)
    assert reports[0]["witness"] == {"x": 1, "sides": [2, 4]}
    assert reports[0]["exhaustive"] is False
    assert "expected cube count" in err


def test_cubes_certify_random(capsys):
    code, out, _ = run(
        capsys, "cubes", "certify", "--n", "512", "--classes", "random",
        "--k", "6", "--seed", "0",
    )
    assert code == EXIT_OK
    reports = json.loads(out)
    assert all(r["witness"] is None for r in reports)
    assert all(r["exhaustive"] for r in reports)


def test_ramsey(capsys):
    code, out, _ = run(capsys, "ramsey", "--k", "1", "--r", "2", "--n-max", "10")
    assert code == EXIT_OK
    assert out.strip() == "3"
    code, out, _ = run(capsys, "ramsey", "--k", "1", "--r", "4", "--n-max", "4")
    assert code == EXIT_OK
    assert out.strip() == "none"


# =========================================================================
# play
# =========================================================================


def test_play_writes_transcript(tmp_path, capsys):
    out_file = tmp_path / "game.json"
    code, _, err = run(
        capsys, "play", "--namer", "greedy", "--claimer", "greedy",
        "--n", "64", "--out", str(out_file),
    )
    assert code == EXIT_OK
    t = Transcript.from_json(out_file.read_text())
    assert validate_transcript(t)
    assert t.terminal
    assert "7 rounds" in err


def test_play_stdout(capsys):
    code, out, _ = run(
        capsys, "play", "--namer", "repeat:d=2", "--claimer", "lazy", "--n", "12",
    )
    assert code == EXIT_OK
    t = Transcript.from_json(out)
    assert validate_transcript(t)


def test_play_human_spec_is_an_error(capsys):
    code, _, err = run(
        capsys, "play", "--namer", "human", "--claimer", "greedy", "--n", "8",
    )
    assert code == EXIT_FAILURE
    assert "live" in err
