import json
import subprocess
import sys

import pytest

from leptin import io
from leptin.cli import main
from leptin.cutproject import FibonacciZphi


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lattice_covolume(capsys):
    assert run(capsys, "lattice", "--group", "Z2", "--basis", "2,0;0,3")[:2] == (0, "6\n")
    assert run(capsys, "lattice", "--group", "H3Z", "--basis", "2")[:2] == (0, "16\n")


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "lattice", "--group", "Z2", "--basis", "1,2;2,4")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "boundary")[0] == 2


def test_gen_modelset_matches_library(capsys, tmp_path):
    out = tmp_path / "patch.txt"
    code, _, _ = run(capsys, "gen-modelset", "--scheme", "fib", "--window", "-1/2", "1/2", "--range", "-40", "40", "--out", str(out))
    assert code == 0
    sch = FibonacciZphi()
    want = sch.patch(sch.window(("-1/2", "1/2")), [(-40, 40)])
    assert io.read(out).pairs == want.pairs


def test_density_json(capsys):
    code, out, _ = run(capsys, "density", "--scheme", "cyclic", "--modulus", "5", "--window", "0", "1", "--n", "10")
    data = json.loads(out)
    assert code == 0 and data["haar"] == "counting"
    assert data["report"]["D_minus"] == data["leptin"]["lep_minus_probe"] == "2/5"
    assert data["report"]["chain_holds"] is True


def test_folner_ratio_csv_and_figure(capsys, tmp_path):
    fig = tmp_path / "ratio.png"
    code, out, _ = run(capsys, "folner-ratio", "--family", "cubes", "--group", "Z1", "--K", "-1;0;1", "--kind", "folner", "--n", "10,20", "--figure", str(fig))
    assert code == 0
    assert out.splitlines() == ["n,ratio", "10,1/5", "20,1/10"]
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "--suite", "boundaries", "--cases", "5", "--seed", "3")
    second = run(capsys, "verify", "--suite", "boundaries", "--cases", "5", "--seed", "3")
    assert first[0] == 0 and first[1] == second[1]
    assert json.loads(first[1])["suites"][0]["passed"] is True


@pytest.mark.slow
def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "leptin", "lattice", "--group", "Z1", "--basis", "7"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "7\n"
