import pytest

from collapsekit.cli import run
from collapsekit.collapse import replay_certificate
from collapsekit.corpus import DATA_DIR, ball_B
from collapsekit.formats import parse_certificate, read_complex

BALL = str(DATA_DIR / "ball_B.txt")


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_collapse_ball_to_point(in_tmp):
    assert run(["collapse", BALL, "--to-point"]) == 0
    cert = parse_certificate((in_tmp / "ball_B.cert.txt").read_text())
    B = ball_B()
    assert cert.start_hash == B.content_hash()
    end = replay_certificate(B, cert.steps)
    assert end.valid and end.complex.f_vector() == (1,)


def test_extendable_collapse_ball(in_tmp):
    assert run(["extendable-collapse", BALL]) == 1
    core = read_complex(in_tmp / "ball_B.stuck.core.txt")
    cert = parse_certificate((in_tmp / "ball_B.stuck.txt").read_text())
    assert replay_certificate(ball_B(), cert.steps).complex == core


@pytest.mark.parametrize("argv, code", [
    (["info", "gs_32"], 0),
    (["collapse", "dunce_hat_D", "--to-point"], 1),
    (["collapse", "ball_B", "--to-point", "--budget", "1"], 2),
    (["collapse", "ball_B", "--onto", "dunce_hat_D"], 0),
    (["shell", "gs_32"], 0),
    (["shell", "dunce_hat_D"], 1),
    (["constructible", "dunce_hat_D"], 1),
    (["homology", "rp2_6"], 0),
    (["cm", "dunce_hat_D"], 0),
    (["cm", "rp2_6"], 1),
    (["iso", "gs_32", "ball_B"], 1),
    (["contains", "ball_B", "dunce_hat_D"], 0),
    (["tree-collapse", "gs_32", "--avoid", "dunce_hat_D"], 1),
    (["enumerate", "6"], 0),
    (["corpus", "--list"], 0),
    (["corpus", "gs_32"], 0),
    (["verify-paper", "--only", "A1"], 0),
])
def test_exit_codes(argv, code):
    assert run(argv) == code


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["collapse"],
    ["collapse", "no_such_file.txt", "--to-point"],
    ["verify-paper", "--only", "A99"],
    ["corpus"],
])
def test_usage_errors(argv):
    assert run(argv) == 3


def test_malformed_file_is_usage_error(in_tmp):
    (in_tmp / "bad.txt").write_text("0 0 1 2\n")
    assert run(["info", str(in_tmp / "bad.txt")]) == 3


def test_homology_output(capsys):
    run(["homology", "rp2_6"])
    assert capsys.readouterr().out.splitlines() == ["H0 = 0", "H1 = Z/2", "H2 = 0"]


def test_realize_and_schlegel(in_tmp):
    assert run(["realize", "gs_32", "--out", "gs.coords"]) == 0
    assert run(["schlegel", "gs.coords", "--pattern", "dunce_hat_D", "--off", "d.off"]) == 0
    assert (in_tmp / "d.off").read_text().splitlines()[1] == "8 17 24"
