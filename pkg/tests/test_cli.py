import subprocess
import sys

import pytest

from zqforce import families as F
from zqforce.cli import BUDGET, CHECK_FAILED, INPUT_ERROR, OK, main, play
from zqforce.strategies import make_blue, make_white
from zqforce.transcript import parse_transcript, replay


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_path(capsys):
    code, out, _ = run(capsys, "solve", "--graph", "path:5", "--q", "1")
    assert code == OK and "value: 1" in out


def test_solve_cnk_within_ceilings(capsys):
    code, out, _ = run(capsys, "solve", "--graph", "cnk:n=3,k=2", "--q", "2", "--format", "csv")
    assert code == OK
    value = int(out.splitlines()[1].split(",")[-1])
    assert 3 <= value <= 5


@pytest.mark.parametrize("argv", [
    ["solve", "--graph", "cnk:n=3"],
    ["solve", "--graph", "nosuch:3"],
    ["solve", "--graph", "path:4", "--q", "1,2"],
    ["solve", "--graph", "path:4", "--q", "-1"],
    ["solve", "--q", "1"],
    ["bound", "--q", "1"],
    ["frobnicate"],
    ["certify", "--graph", "path:4"],
    ["simulate", "--graph", "path:4", "--blue", "nosuch", "--white", "full"],
    ["solve", "--graph", "/no/such/file.txt"],
])
def test_input_errors_exit_1(capsys, argv):
    assert run(capsys, *argv)[0] == INPUT_ERROR


def test_budget_exit_2(capsys):
    code, _, err = run(capsys, "solve", "--graph", "cnk:n=4,k=2", "--q", "2", "--budget", "30")
    assert code == BUDGET and "budget" in err


def test_failed_check_exit_3(capsys):
    # the potential-trace criterion fails on its known counterexamples
    code, out, err = run(capsys, "verify", "--suite", "traces")
    assert code == CHECK_FAILED
    assert "[FAIL]  8" in out and "[PASS]  9" in out and "1/2" in err


def test_bound_csv_is_byte_stable(tmp_path, capsys):
    paths = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        code, _, _ = run(capsys, "bound", "--graph", "cnk:n=4,k=2", "--graph", "star-forest:5/4/3",
                         "--graph", "kary:k=2,depth=2", "--q", "1,2,3", "--exact",
                         "--format", "csv", "--out", str(out))
        assert code == OK
        paths.append(out.read_bytes())
    assert paths[0] == paths[1]
    lines = paths[0].decode("utf-8").split("\n")
    assert lines[0] == "graph,q,lower,lower_src,upper,upper_src,exact"
    assert len(lines) == 1 + 9 + 1 and lines[-1] == ""
    assert b"\r" not in paths[0]


def test_gen_round_trips(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert run(capsys, "gen", "--graph", "cnk:n=5,k=3,seed=2", "--out", str(out))[0] == OK
    code, text, _ = run(capsys, "solve", "--graph", str(out), "--q", "2")
    code2, text2, _ = run(capsys, "solve", "--graph", "cnk:n=5,k=3,seed=2", "--q", "2")
    assert code == code2 == OK
    value = [l for l in text.splitlines() if l.startswith("value")]
    assert value == [l for l in text2.splitlines() if l.startswith("value")]


def test_simulate_transcript_replays(capsys):
    code, out, _ = run(capsys, "simulate", "--graph", "cnk:n=6,k=2", "--q", "2",
                       "--blue", "cnk-q2", "--white", "protected-q2")
    assert code == OK
    tokens = int(next(l for l in out.splitlines() if l.startswith("tokens:")).split()[1])
    steps = parse_transcript(out.split("transcript:\n", 1)[1])
    final, spent = replay(F.cnk(6, 2), steps, 2)
    assert final.done() and spent == tokens


def test_certify_and_inertia(capsys):
    code, out, _ = run(capsys, "certify", "--graph", "cnk:n=3,k=2", "--q", "2",
                       "--blue", "cnk-q2", "--white", "protected-q2", "--exact")
    assert code == OK and "upper bound" in out and "lower bound" in out
    code, out, _ = run(capsys, "inertia", "--leaves", "4,3", "--q", "1", "--exact")
    assert code == OK and "FAIL" not in out


def test_verify_suite(capsys):
    code, out, err = run(capsys, "verify", "--suite", "solver")
    assert code == OK
    assert out.count("[PASS]") == 2 and "2/2" in err
    assert run(capsys, "verify", "--suite", "nosuch")[0] == INPUT_ERROR


def test_console_script_exit_code():
    res = subprocess.run([sys.executable, "-m", "zqforce.cli", "solve", "--graph", "bad"],
                         capture_output=True, text=True)
    assert res.returncode == INPUT_ERROR


def _scripted(lines):
    it = iter(lines)
    return lambda: next(it, None)


def test_play_as_blue():
    g = F.path(4)
    shown = []
    steps, tokens = play(g, 1, "blue", make_white("full", g, 1),
                         _scripted(["help", "spend 9", "spend 0", "force 0 1", "force 1 2", "force 2 3"]),
                         shown.append)
    assert tokens == 1 and [s.format() for s in steps] == ["SPEND 0", "FORCE 0 1", "FORCE 1 2", "FORCE 2 3"]
    assert any("illegal" in s for s in shown) and any("forces: 0->1" in s for s in shown)
    assert replay(g, steps, 1)[0].done()


def test_play_as_blue_with_offer():
    g = F.star(3)
    steps, tokens = play(g, 1, "blue", make_white("full", g, 1),
                         _scripted(["spend 0", "offer 0 1", "spend 2", "force 0 1"]), lambda s: None)
    assert [s.format() for s in steps][:2] == ["SPEND 0", "RULE3 offer=0,1 response=0,1 force=none"]
    assert tokens == 2
    assert replay(g, steps, 1)[0].done()


def test_play_as_white():
    g = F.cnk(6, 2)
    shown = []
    answers = iter(["respond 99"])

    def inp():
        # first an invalid answer, then hand back the first offered component
        nxt = next(answers, None)
        if nxt is not None:
            return nxt
        offer = next(s for s in reversed(shown) if s.startswith("Blue offers"))
        return "respond " + offer.split("[")[1].split(",")[0].rstrip("]")

    steps, tokens = play(g, 2, "white", make_blue("cnk-q2", g, 2), inp, shown.append)
    assert any(s.kind == "RULE3" for s in steps)
    assert any("nonempty subset" in s for s in shown)
    assert shown[-1] == f"game over; tokens spent: {tokens}"
    final, spent = replay(g, steps, 2)
    assert final.done() and spent == tokens


def test_play_stops_on_eof():
    g = F.path(3)
    steps, tokens = play(g, 1, "blue", make_white("full", g, 1), _scripted(["spend 1"]), lambda s: None)
    assert tokens == 1 and len(steps) == 1
