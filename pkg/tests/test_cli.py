"""End-to-end CLI behavior: outputs, determinism, and exit codes."""
import subprocess
import sys
from pathlib import Path

import pytest

import chasebench as cb
from chasebench import cli, gadgets, gameio, games, info, verify

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ------------------------------------------------------------- gen-game


def test_gen_game_matches_golden_file(capsys, tmp_path):
    out = tmp_path / "g.game"
    code, stdout, _ = run_cli(
        capsys, "gen-game", "--seed", "20260825", "--n", "8", "--p", "2", "--output", str(out)
    )
    assert code == 0 and stdout == ""
    assert out.read_text() == (GOLDEN / "intersectsc_n8_p2_seed20260825.game").read_text()


def test_gen_game_stdout_equals_file_output(capsys, tmp_path):
    code, stdout, _ = run_cli(capsys, "gen-game", "--seed", "5", "--n", "6", "--p", "1")
    assert code == 0
    out = tmp_path / "g.game"
    code2, _, _ = run_cli(
        capsys, "gen-game", "--seed", "5", "--n", "6", "--p", "1", "--output", str(out)
    )
    assert code2 == 0
    assert out.read_text() == stdout


def test_gen_game_is_deterministic(capsys):
    _, a, _ = run_cli(capsys, "gen-game", "--seed", "77", "--n", "8", "--p", "2")
    _, b, _ = run_cli(capsys, "gen-game", "--seed", "77", "--n", "8", "--p", "2")
    _, c, _ = run_cli(capsys, "gen-game", "--seed", "78", "--n", "8", "--p", "2")
    assert a == b
    assert c != a


def test_gen_game_kind_inference(capsys):
    _, plain, _ = run_cli(capsys, "gen-game", "--seed", "9", "--n", "8", "--p", "1")
    assert isinstance(gameio.parse_game(plain), games.IntersectScInstance)

    _, with_r, _ = run_cli(capsys, "gen-game", "--seed", "9", "--n", "8", "--p", "1", "--r", "3")
    lpce = gameio.parse_game(with_r)
    assert isinstance(lpce, games.LpceInstance)
    assert lpce.r == 3

    _, with_t, _ = run_cli(capsys, "gen-game", "--seed", "9", "--n", "8", "--p", "1", "--t", "2")
    orl = gameio.parse_game(with_t)
    assert isinstance(orl, games.OrLpceInstance)
    assert orl.t == 2
    # r defaults to the injectivity threshold for n
    assert orl.r == info.c_star_threshold(8)


def test_gen_game_missing_flags(capsys):
    assert run_cli(capsys, "gen-game", "--n", "8", "--p", "1")[0] == 2
    assert run_cli(capsys, "gen-game", "--seed", "1", "--p", "1")[0] == 2
    code, _, err = run_cli(capsys, "gen-game", "--seed", "1", "--n", "8")
    assert code == 2 and "gen-game needs" in err


# ------------------------------------------------------------ gen-graph


@pytest.mark.parametrize("gadget,fname", [
    ("distance", "distance_k4_p1_seed31.gs"),
    ("reach", "reach_k4_p1_seed31.gs"),
    ("matching", "matching_k4_p1_seed31.gs"),
])
def test_gen_graph_matches_golden_files(capsys, gadget, fname):
    code, stdout, _ = run_cli(
        capsys, "gen-graph", "--seed", "31", "--k", "4", "--p", "1", "--gadget", gadget
    )
    assert code == 0
    assert stdout == (GOLDEN / fname).read_text()


def test_gen_graph_from_game_file(capsys, tmp_path):
    game = tmp_path / "in.game"
    _, text, _ = run_cli(capsys, "gen-game", "--seed", "4", "--n", "5", "--p", "2")
    game.write_text(text)
    code, stdout, _ = run_cli(capsys, "gen-graph", "--input", str(game), "--gadget", "distance")
    assert code == 0
    stream = gadgets.parse_stream(stdout)
    assert stream == gadgets.build_distance_gadget(gameio.parse_game(text))


def test_gen_graph_input_depth_conflict(capsys, tmp_path):
    game = tmp_path / "in.game"
    _, text, _ = run_cli(capsys, "gen-game", "--seed", "4", "--n", "5", "--p", "2")
    game.write_text(text)
    # depth 2 game corresponds to p=1
    ok = run_cli(capsys, "gen-graph", "--input", str(game), "--p", "1", "--gadget", "reach")
    assert ok[0] == 0
    code, _, err = run_cli(
        capsys, "gen-graph", "--input", str(game), "--p", "2", "--gadget", "reach"
    )
    assert code == 2 and "conflicts" in err


def test_gen_graph_rejects_non_intersect_input(capsys, tmp_path):
    game = tmp_path / "in.game"
    _, text, _ = run_cli(capsys, "gen-game", "--seed", "4", "--n", "5", "--p", "1", "--r", "2")
    game.write_text(text)
    code, _, err = run_cli(capsys, "gen-graph", "--input", str(game), "--gadget", "distance")
    assert code == 2 and "intersectsc" in err


def test_gen_graph_bad_gadget_choice(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["gen-graph", "--seed", "1", "--k", "4", "--p", "1", "--gadget", "mst"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_gen_graph_sampling_needs_seed_and_shape(capsys):
    assert run_cli(capsys, "gen-graph", "--k", "4", "--p", "1", "--gadget", "reach")[0] == 2
    assert run_cli(capsys, "gen-graph", "--seed", "3", "--p", "1", "--gadget", "reach")[0] == 2


# --------------------------------------------------------------- reduce


def test_reduce_roundtrip_through_files(capsys, tmp_path):
    # default r is the injectivity threshold, so the short-circuit stays off
    game = tmp_path / "or.game"
    _, text, _ = run_cli(
        capsys, "gen-game", "--seed", "6", "--n", "512", "--p", "1", "--t", "2"
    )
    game.write_text(text)
    out = tmp_path / "reduced.game"
    code, _, _ = run_cli(
        capsys, "reduce", "--seed", "12", "--input", str(game), "--output", str(out)
    )
    assert code == 0
    reduced = gameio.parse_game(out.read_text())
    assert isinstance(reduced, games.IntersectScInstance)
    assert reduced.n == 512


def test_reduce_sampled_is_deterministic(capsys):
    args = ("reduce", "--seed", "3", "--n", "1024", "--p", "1")
    _, a, _ = run_cli(capsys, *args)
    _, b, _ = run_cli(capsys, *args)
    assert a == b and a.startswith("scgame v1 kind=intersectsc")


def test_reduce_infeasible_exits_3(capsys):
    code, _, err = run_cli(
        capsys, "reduce", "--seed", "1", "--n", "64", "--p", "2", "--t", "2", "--r", "9"
    )
    assert code == 3
    assert "infeasible parameters" in err


def test_reduce_shortcircuit_prints_witness(capsys, tmp_path):
    const = games.FunctionTable.constant(512, 0)
    item_bad = games.LpceInstance(
        games.PcInstance(512, 1, (const,)),
        games.PcInstance(512, 1, (games.FunctionTable.identity(512),)),
        3,
    )
    game = tmp_path / "or.game"
    game.write_text(gameio.serialize_game(games.OrLpceInstance(1, (item_bad,))))
    code, stdout, _ = run_cli(capsys, "reduce", "--seed", "2", "--input", str(game))
    assert code == 0
    assert stdout == "shortcircuit answer=1 witness=item0,side0,layer0\n"


def test_reduce_rejects_wrong_input_kind(capsys, tmp_path):
    game = tmp_path / "in.game"
    _, text, _ = run_cli(capsys, "gen-game", "--seed", "4", "--n", "5", "--p", "1")
    game.write_text(text)
    code, _, err = run_cli(capsys, "reduce", "--seed", "1", "--input", str(game))
    assert code == 2 and "orlpce" in err


# ------------------------------------------------------- solve-protocol


def test_solve_protocol_answer_line(capsys, tmp_path):
    game = tmp_path / "in.game"
    game.write_text((GOLDEN / "intersectsc_n8_p2_seed20260825.game").read_text())
    code, stdout, _ = run_cli(capsys, "solve-protocol", "--input", str(game), "--alg", "forward")
    assert code == 0
    assert stdout == "answer=1 rounds=2 total_bits=36\n"
    code, stdout, _ = run_cli(capsys, "solve-protocol", "--input", str(game), "--alg", "reverse")
    assert code == 0
    assert stdout == "answer=1 rounds=1 total_bits=33\n"


def test_solve_protocol_dump_precedes_answer(capsys, tmp_path):
    game = tmp_path / "in.game"
    game.write_text((GOLDEN / "intersectsc_n8_p2_seed20260825.game").read_text())
    code, stdout, _ = run_cli(
        capsys, "solve-protocol", "--input", str(game), "--alg", "forward", "--dump"
    )
    assert code == 0
    lines = stdout.splitlines()
    assert lines[-1].startswith("answer=1 ")
    assert all(" bits:" in ln for ln in lines[:-1])
    assert len(lines) == 9  # 8 messages for p=2, then the answer line


def test_solve_protocol_requires_input(capsys):
    code, _, err = run_cli(capsys, "solve-protocol", "--alg", "forward")
    assert code == 2 and "needs --input" in err


def test_solve_protocol_rejects_graph_file(capsys, tmp_path):
    bad = tmp_path / "in.game"
    bad.write_text((GOLDEN / "distance_k4_p1_seed31.gs").read_text())
    code, _, err = run_cli(capsys, "solve-protocol", "--input", str(bad), "--alg", "forward")
    assert code == 2 and "parse error" in err


# ----------------------------------------------------------- stream-run


def test_stream_run_csv_stdout(capsys):
    code, stdout, _ = run_cli(
        capsys, "stream-run", "--input", str(GOLDEN / "distance_k4_p1_seed31.gs"),
        "--alg", "bidir-bfs",
    )
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0] == "answer,passes_used,max_state_bits"
    answer, passes, bits = lines[1].split(",")
    assert answer in ("0", "1")
    assert int(passes) >= 1 and int(bits) > 0


def test_stream_run_report_file_and_budget(capsys, tmp_path):
    report = tmp_path / "r.csv"
    code, stdout, _ = run_cli(
        capsys, "stream-run", "--input", str(GOLDEN / "reach_k4_p1_seed31.gs"),
        "--alg", "directed-frontier", "--passes", "1", "--report", str(report),
    )
    assert code == 0 and stdout == ""
    answer, passes, _ = report.read_text().splitlines()[1].split(",")
    # one pass cannot finish a depth-2 chain walk
    assert answer == "none" and passes == "1"


def test_stream_run_union_find_single_pass(capsys):
    code, stdout, _ = run_cli(
        capsys, "stream-run", "--input", str(GOLDEN / "matching_k4_p1_seed31.gs"),
        "--alg", "union-find",
    )
    assert code == 0
    assert stdout.splitlines()[1].split(",")[1] == "1"


def test_stream_run_missing_file(capsys):
    code, _, err = run_cli(
        capsys, "stream-run", "--input", "/nonexistent/x.gs", "--alg", "union-find"
    )
    assert code == 2 and "error" in err


# --------------------------------------------------------------- verify


def test_verify_writes_csv_and_exits_0(capsys, tmp_path):
    report = tmp_path / "v.csv"
    code, stdout, err = run_cli(
        capsys, "verify", "--suite", "gadgets", "--seed", "5", "--trials", "30",
        "--report", str(report),
    )
    assert code == 0 and stdout == "" and err == ""
    text = report.read_text()
    assert text == verify.to_csv(verify.run_suite("gadgets", 5, trials=30))
    assert text.splitlines()[0] == "suite,check,measured,threshold,passed"


def test_verify_failure_exits_1(capsys, monkeypatch):
    def rigged(name, seed, trials=None):
        return [verify.CheckResult(name, "rigged", 1, "=0", False)]

    monkeypatch.setattr(cli.verify, "run_suite", rigged)
    code, stdout, err = run_cli(capsys, "verify", "--suite", "info", "--seed", "1")
    assert code == 1
    assert "FAILED info/rigged" in err
    assert "false" in stdout


def test_verify_needs_seed(capsys):
    code, _, err = run_cli(capsys, "verify", "--suite", "info")
    assert code == 2 and "needs --seed" in err


# ----------------------------------------------------- parser plumbing


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_console_script_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "chasebench.cli", "gen-game", "--seed", "1", "--n", "4", "--p", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("scgame v1 kind=intersectsc n=4 p=1\n")


def test_malformed_game_file_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.game"
    bad.write_text("scgame v1 kind=lpce n=2 p=1 r=oops\n")
    code, _, err = run_cli(capsys, "solve-protocol", "--input", str(bad), "--alg", "forward")
    assert code == 2 and "parse error" in err
