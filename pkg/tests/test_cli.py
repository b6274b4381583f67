import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from kleinian.cli import UsageError, main, parse_complex

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "text, value",
    [
        ("5", 5), ("5i", 5j), ("i", 1j), ("-i", -1j), ("+2.5", 2.5),
        ("-1+1.7320508i", complex(-1, 1.7320508)), ("2e1-3e-1i", complex(20, -0.3)),
        (".5-.25i", complex(0.5, -0.25)), (" 3 - 4i ", 3 - 4j),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "j", "5j", "1+", "i5", "nan", "inf", "1+2i+3", "abc"])
def test_parse_complex_rejects(text):
    with pytest.raises(UsageError):
        parse_complex(text)


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1", "--a", "5", "--b", "5i")
    assert code == 0 and json.loads(out)["verdict"] == "verified"
    code, out, _ = run(capsys, "verify", "--n", "1", "--a", "3", "--b", "3i")
    assert code == 2 and json.loads(out)["verdict"] == "rejected"
    code, out, err = run(capsys, "verify", "--n", "0", "--a", "5", "--b", "5i")
    assert code == 1 and out == "" and "positive" in err


def test_shape(capsys):
    code, out, _ = run(capsys, "shape", "--a", "4", "--b", "-1+1.7320508i")
    tau = json.loads(out)["tau"]
    assert code == 0 and abs(tau[0] + 0.25) <= 1e-12 and abs(tau[1] - 0.4330127) <= 1e-12
    code, out, _ = run(capsys, "shape", "--a", "1", "--b", "i", "--target", "i")
    assert code == 0 and json.loads(out)["distance"] == 0
    code, out, _ = run(capsys, "shape", "--a", "1", "--b", "2")
    assert code == 1 and out == ""


def test_slopes(capsys):
    _, out, _ = run(capsys, "slopes", "--u", "1", "--v", "10i", "--L", "6")
    assert json.loads(out) == [{"p": 1, "q": 0, "length": 1.0}]
    _, out, _ = run(capsys, "slopes", "--u", "1", "--v", "i", "--L", "1")
    assert len(json.loads(out)) == 2
    _, out, _ = run(capsys, "slopes", "--u", "1", "--v", "2i", "--L", "0")
    assert json.loads(out) == []
    code, _, _ = run(capsys, "slopes", "--u", "1", "--v", "2i", "--L", "-1")
    assert code == 1


def test_render(capsys, tmp_path):
    fig = tmp_path / "fig.svg"
    code, out, _ = run(capsys, "render", "--example", "max-pinched", "--max-len", "1", "-o", str(fig))
    assert code == 0 and len(json.loads(out)["circles"]) == 4
    assert fig.read_bytes() == (GOLDEN / "max_pinched.svg").read_bytes()
    fig2 = tmp_path / "fig2.svg"
    code, out, _ = run(capsys, "render", "--example", "max-pinched", "--max-len", "1", "--dual", "-o", str(fig2))
    assert code == 0 and len(json.loads(out)["circles"]) == 8
    assert fig2.read_bytes() == (GOLDEN / "max_pinched_dual.svg").read_bytes()
    code, _, err = run(capsys, "render", "--example", "max-pinched")
    assert code == 1 and "--output" in err


def test_render_custom_rep(capsys, tmp_path):
    fig = tmp_path / "r.svg"
    code, out, _ = run(capsys, "render", "--n", "2", "--a", "20", "--b", "3+19i", "-o", str(fig),
                       "--stroke", "black", "--stroke-width", "0.1")
    assert code == 0 and 'stroke="black"' in fig.read_text()
    assert 'stroke-width="0.100000"' in fig.read_text()


def test_pinch(capsys):
    code, out, _ = run(capsys, "pinch", "--example", "max-pinched", "--enumerate", "2")
    words = [r["word"] for r in json.loads(out)]
    assert code == 0 and "g1" in words and "a G1" in words
    code, out, _ = run(capsys, "pinch", "--example", "max-pinched", "--word", "a G1", "--word", "b g1")
    reps = json.loads(out)
    assert [r["parabolic"] for r in reps] == [True, False]
    assert reps[0]["trace"] == [-2.0, 0.0]
    assert run(capsys, "pinch", "--example", "max-pinched", "--enumerate", "13")[0] == 1
    assert run(capsys, "pinch", "--example", "max-pinched", "--word", "g7")[0] == 1
    assert run(capsys, "pinch", "--example", "max-pinched")[0] == 1


def test_beltsum(capsys):
    code, out, _ = run(capsys, "beltsum", "--n", "4", "--m3", "2.5", "--m2", "1.5")
    assert code == 0
    assert json.loads(out) == {"n": 4, "shape": {"tau": [0.0, 2.0]}, "meridian": 7.0}


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[verify]\nn = 1\na = 5\nb = 5i\n")
    code, out, _ = run(capsys, "--config", str(cfg), "verify")
    assert code == 0
    # flags override the file
    code, _, _ = run(capsys, "--config", str(cfg), "verify", "--a", "3", "--b", "3i")
    assert code == 2
    cfg.write_text("[verify]\nn = 1\nbogus = 2\n")
    code, _, err = run(capsys, "--config", str(cfg), "verify")
    assert code == 1 and "bogus" in err
    cfg.write_text("[nonsense]\nx = 1\n")
    assert run(capsys, "--config", str(cfg), "verify")[0] == 1
    assert run(capsys, "--config", str(tmp_path / "none.ini"), "verify")[0] == 1


def test_usage_errors(capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "verify", "--n", "1", "--a", "5x", "--b", "5i")[0] == 1
    assert run(capsys, "verify", "--n", "1", "--a", "5", "--b", "5i", "--tol", "nan")[0] == 1


def test_stdout_deterministic(capsys):
    outs = {run(capsys, "verify", "--n", "2", "--a", "20", "--b", "3+19i")[1] for _ in range(3)}
    assert len(outs) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "kleinian", "beltsum", "--n", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["meridian"] == 3.0
    assert math.isclose(json.loads(proc.stdout)["shape"]["tau"][1], 2.0)
