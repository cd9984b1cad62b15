import io
import subprocess
import sys

import pytest

from bireversible import automata as au
from bireversible import cli, fixtures


@pytest.fixture(scope="module")
def fx_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fx")
    assert cli.run(["examples", "--dir", str(d)]) == 0
    return d


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_examples_written(fx_dir):
    names = sorted(p.name for p in fx_dir.iterdir())
    assert "odometer.aut" in names and "lattice_5_13.sqc" in names
    for name, a in fixtures.all_fixtures().items():
        assert au.parse_aut((fx_dir / f"{name}.aut").read_text()) == a


def test_check_identity(capsys, fx_dir):
    code, out, _ = run(capsys, "check", str(fx_dir / "identity2.aut"))
    assert code == 0 and "bireversible: yes" in out.splitlines()
    assert "orbit: 8/8 defined, 1 distinct" in out


def test_check_require(capsys, fx_dir):
    code, out, _ = run(capsys, "check", "--require", "bireversible", "--porcelain", str(fx_dir / "lamplighter.aut"))
    assert code == 1 and "bireversible:no" in out.splitlines()
    code, _, _ = run(capsys, "check", "--require", "reversible", str(fx_dir / "lamplighter.aut"))
    assert code == 0


def test_trivial_odometer(capsys, fx_dir):
    code, out, _ = run(capsys, "trivial", "--word", "a", str(fx_dir / "odometer.aut"))
    assert code == 0 and out == "nontrivial; witness input 000 -> 100\n"
    code, out, _ = run(capsys, "trivial", "--word", "a a^-", "--require", str(fx_dir / "odometer.aut"))
    assert code == 0 and out.startswith("trivial")
    code, _, _ = run(capsys, "trivial", "--word", "a", "--require", str(fx_dir / "odometer.aut"))
    assert code == 1


def test_pipeline_lattice_check():
    cmd = [sys.executable, "-m", "bireversible"]
    lat = subprocess.run(cmd + ["lattice", "--p", "5", "--l", "13", "--emit", "automaton"], capture_output=True, text=True)
    assert lat.returncode == 0
    chk = subprocess.run(cmd + ["check", "--require", "bireversible"], input=lat.stdout, capture_output=True, text=True)
    assert chk.returncode == 0 and "bireversible: yes" in chk.stdout


def test_complex_round_trip(capsys, monkeypatch, fx_dir):
    for name in fixtures.FIXTURES:
        text = (fx_dir / f"{name}.aut").read_text()
        _, sqc, _ = run(capsys, "complex", stdin=text, monkeypatch=monkeypatch)
        code, back, _ = run(capsys, "from-complex", "--mode", "directed", stdin=sqc, monkeypatch=monkeypatch)
        assert code == 0 and back == text


def test_lattice_round_trips_up_to_renaming(capsys, monkeypatch, fx_dir):
    text = (fx_dir / "lattice_5_13.aut").read_text()
    _, sqc, _ = run(capsys, "complex", stdin=text, monkeypatch=monkeypatch)
    _, back, _ = run(capsys, "from-complex", stdin=sqc, monkeypatch=monkeypatch)
    assert back == text.replace("^-", "~")
    code, vht, _ = run(capsys, "from-complex", "--mode", "vht", str(fx_dir / "lattice_5_13.sqc"))
    assert code == 0 and vht == text


def test_dual_and_invert(capsys, fx_dir, tmp_path):
    out_file = tmp_path / "d.aut"
    assert cli.run(["dual", str(fx_dir / "odometer.aut"), "-o", str(out_file)]) == 0
    assert au.parse_aut(out_file.read_text()) == au.dual(fixtures.odometer())
    code, out, _ = run(capsys, "invert", str(fx_dir / "odometer.aut"))
    assert code == 0 and au.parse_aut(out) == au.inverse(fixtures.odometer())
    code, _, err = run(capsys, "invert", str(out_file))
    assert code == 2 and "NotInvertible" in err


def test_link_report(capsys, fx_dir):
    code, out, _ = run(capsys, "link", "--porcelain", str(fx_dir / "identity2.aut"))
    assert code == 0 and "complete_bipartite:yes K_{4,4}" in out
    code, out, _ = run(capsys, "link", "--require", str(fx_dir / "odometer.aut"))
    assert code == 1 and "failing:" in out and "has 2 edges" in out and "has 0 edges" in out
    code, out, _ = run(capsys, "link", "--porcelain", str(fx_dir / "lattice_5_13.sqc"))
    assert code == 0 and "complete_bipartite:yes K_{6,14}" in out


def test_act_and_rect(capsys, fx_dir):
    path = str(fx_dir / "odometer.aut")
    assert run(capsys, "act", path, "--states", "a", "--word", "1 1 0")[1] == "0 0 1\n"
    code, out, _ = run(capsys, "rect", path, "--states", "a a", "--word", "0 0 0", "--porcelain")
    assert code == 0 and out.splitlines() == ["bottom:0 0 0", "left:a a", "top:0 1 0", "right:e e"]
    code, _, err = run(capsys, "rect", path, "--states", "a", "--word", "1^-")
    assert code == 2 and "NotReversible" in err


def test_normal_form_and_height(capsys, fx_dir):
    path = str(fx_dir / "identity2.aut")
    code, out, _ = run(capsys, "normal-form", path, "--word", "b 0", "--porcelain")
    assert code == 0 and out.splitlines()[:2] == ["horizontal:0", "vertical:b"]
    code, out, _ = run(capsys, "height", path, "--word", "0 0 a")
    assert "height: (2, 1)" in out and "infinite_order: yes-by-height" in out
    code, out, _ = run(capsys, "height", path, "--word", "0 a 0^- a^-")
    assert "infinite_order: unknown" in out


def test_free_cert_report(capsys, fx_dir):
    path = str(fx_dir / "lattice_5_13.aut")
    code, out, _ = run(capsys, "free-cert", "--automaton", path, "--max-len", "3")
    assert code == 0
    assert "words_checked: 2562" in out and "verdict: no-relation-up-to-3" in out
    comparable, _, timing = out.partition("-- timing\n")
    assert timing.startswith("wall_seconds:")
    again = run(capsys, "free-cert", "--automaton", path, "--max-len", "3")[1]
    assert again.partition("-- timing\n")[0] == comparable


def test_free_cert_relation(capsys, fx_dir):
    path = str(fx_dir / "identity2.aut")
    code, out, _ = run(capsys, "free-cert", "--automaton", path, "--max-len", "2", "--pairs", "a:a,b:b", "--require")
    assert code == 1 and "relation: a" in out and "verdict: relation-found" in out
    lat = str(fx_dir / "lattice_5_13.aut")
    pairs = "1+2i-2j-2k:1+2i-2j+2k,1+2i-2j-2k^-:1+2i-2j+2k^-"
    code, _, err = run(capsys, "free-cert", "--automaton", lat, "--max-len", "2", "--pairs", pairs)
    assert code == 2 and "PairingInvalid" in err
    code, _, err = run(capsys, "free-cert", "--automaton", lat, "--max-len", "2", "--pairs", "zz:1+2i-2j-2k")
    assert code == 2 and "--pairs:1:1" in err


def test_growth(capsys, fx_dir):
    code, out, _ = run(capsys, "growth", str(fx_dir / "odometer.aut"), "--max-len", "3", "--depth", "4", "--porcelain")
    assert code == 0 and [ln for ln in out.splitlines() if ln.startswith("length")] == [
        "length[1]:2", "length[2]:3", "length[3]:4",
    ]


def test_format_errors(capsys, monkeypatch):
    bad = "alphabet: 0 1\nstates: a\na: 0 -> 0 @ a ; 1 -> 2 @ a\n"
    code, _, err = run(capsys, "check", stdin=bad, monkeypatch=monkeypatch)
    assert code == 2 and "<stdin>:3:" in err
    code, _, err = run(capsys, "lattice", "--p", "7", "--l", "5")
    assert code == 2 and "BadPrime" in err
    code, _, err = run(capsys, "check", "/nonexistent.aut")
    assert code == 2
    assert cli.run(["no-such-command"]) == 2


def test_byte_stable(capsys, fx_dir):
    a = run(capsys, "check", str(fx_dir / "gupta_sidki.aut"))[1]
    b = run(capsys, "check", str(fx_dir / "gupta_sidki.aut"))[1]
    assert a == b
