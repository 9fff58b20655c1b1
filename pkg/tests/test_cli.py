import json
import subprocess
import sys

import pytest

from ggptheta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hilbert(capsys):
    assert run(capsys, "hilbert", "--p", "5", "2", "5")[:2] == (0, "-1\n")
    code, out, _ = run(capsys, "hilbert", "--p", "2", "-1", "-1", "--json")
    assert json.loads(out) == {"p": 2, "a": -1, "b": -1, "value": -1}


def test_sqclass(capsys):
    assert run(capsys, "sqclass", "--p", "5", "20")[1] == "5\n"
    info = json.loads(run(capsys, "sqclass", "--p", "2", "24", "--json")[1])
    assert info["class"] == -10 and info["conductor_exponent"] == 3


def test_epsilon(capsys):
    assert run(capsys, "epsilon", "--p", "3", "--rep", "chi(3)")[1] == "zeta8^6 * 3^(0/2)\n"
    out = json.loads(run(capsys, "epsilon", "--p", "5", "--rep", "sp(2)", "--json")[1])
    assert out["epsilon"]["text"] == "zeta8^4 * 5^(0/2)"


def test_generic(capsys):
    code, out, _ = run(capsys, "generic", "--p", "5", "--group", "mp", "--rep", "t(1/2)+t(-1/2)")
    assert code == 0
    assert out.startswith("false (L(s, Ad) has a pole at s = 1")
    assert run(capsys, "generic", "--p", "5", "--group", "sp", "--rep", "chi(2)+chi(5)+chi(10)")[1] == "true\n"


def test_packet(capsys):
    code, out, _ = run(capsys, "packet", "--p", "5", "--group", "so-even", "--rep", "chi(2)+chi(5)+chi(10)+1",
                       "--eta=-1,1,1", "--c", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["eta_domain"] == "plus"
    assert doc["component_group"]["rank"] == 4
    assert doc["eta"]["values"] == [-1, 1, 1]
    assert "central_sign" in doc and "eta_c" in doc


def test_recipe(capsys):
    code, out, _ = run(capsys, "recipe", "bessel", "--p", "3", "--repM", "chi(3)*sp(2)", "--repN", "chi(2)+chi(6)")
    doc = json.loads(out)
    assert code == 0 and set(doc) >= {"chi_on_M", "chi_on_N"}
    code, out, _ = run(capsys, "recipe", "fj", "--p", "5", "--repM", "sp(2)", "--repN", "chi(2)+chi(5)+chi(10)")
    assert code == 0 and json.loads(out)["chi_on_N"]["domain"] == "plus"


def test_theta(capsys):
    code, out, _ = run(capsys, "theta", "p1", "--p", "5", "--rep", "chi(2)+chi(5)+chi(10)", "--chiV", "2")
    assert code == 0 and json.loads(out)["count"] == 1
    code, out, _ = run(capsys, "theta", "p1", "--p", "5", "--rep", "1+chi(2)*sp(3)+chi(2)", "--chiV", "5",
                       "--variant", "-1")
    doc = json.loads(out)
    assert doc["count"] == 2 and doc["selected"] is not None
    code, out, _ = run(capsys, "theta", "p2", "--p", "5", "--group", "so-even:10", "--rep", "chi(2)+chi(5)")
    assert code == 0 and json.loads(out)["count"] == 2
    code, out, _ = run(capsys, "theta", "mp", "--p", "3", "--rep", "sp(2)", "--c", "3", "--dual")
    assert json.loads(out)["phi"] == "chi(6)*sp(2)"


def test_verify_single_and_sweep(capsys):
    code, out, _ = run(capsys, "verify", "seesaw", "--p", "5", "--repM", "sp(2)+chi(2)*sp(2)",
                       "--repN", "chi(2)+chi(5)+chi(10)", "--d", "5")
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = run(capsys, "verify", "seesaw", "--p", "3", "--count", "3", "--seed", "2", "--max-dim", "6")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4
    code, out, _ = run(capsys, "verify", "adjoint", "--p", "5", "--rep", "chi(2)+chi(5)+chi(10)", "--chiV", "5")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_sweep_replay(capsys, tmp_path):
    args = ["sweep", "--p", "3,5", "--count", "3", "--seed", "9", "--checks", "seesaw,prasad"]
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second and first[0] == 0
    assert run(capsys, "sweep", "--count", "0")[1].count("\n") == 1


@pytest.mark.parametrize("argv", [
    ["hilbert", "--p", "6", "2", "3"],
    ["epsilon", "--p", "5", "--rep", "chi(2)*chi(3)"],
    ["frobnicate"],
    ["generic", "--p", "5", "--group", "sp", "--rep", "sp(2)"],
    ["verify", "seesaw", "--p", "5", "--repM", "t(1/2)+t(-1/2)", "--repN", "1", "--d", "2"],
    ["sweep", "--checks", "nope"],
    ["packet", "--p", "5", "--group", "sp", "--rep", "chi(2)+chi(5)+chi(10)", "--eta", "x"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "ggptheta.cli", "hilbert", "--p", "3", "3", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "-1\n"
