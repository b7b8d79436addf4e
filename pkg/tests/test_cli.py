import json
import subprocess
import sys

import pytest

from toephankel.cli import emit_json, main, parse_symbol
from toephankel import make_shift
from toephankel.errors import InputError
from toephankel.rational import RationalSymbol


def run_cli(problem, *flags, tmp_path=None):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(problem))
    out = tmp_path / "report.json"
    code = main(["--spec", str(spec), "--out", str(out), *flags])
    return code, json.loads(out.read_text()), out.read_bytes()


def test_analyze_golden(tmp_path):
    problem = {
        "command": "analyze",
        "shift": {"beta": [2.0, 0.0]},
        "a": "chi^-2",
        "b": "chi^-2",
        "N": 128,
    }
    code, rep, _ = run_cli(problem, tmp_path=tmp_path)
    assert code == 0
    assert rep["kappa"] == [0, 4]
    assert rep["regime"] == "RIGHT_INV"
    assert rep["dims"] == {
        "ker_plus": 2,
        "coker_plus": 0,
        "ker_minus": 2,
        "coker_minus": 0,
    }
    assert rep["oracle"]["agreement"]["all"] is True
    assert rep["sigma"] == {"c": 1, "d": 1}


def test_analyze_trivial(tmp_path):
    problem = {
        "command": "analyze",
        "shift": {"beta": [2.0, 0.0]},
        "a": 1,
        "b": 1,
        "N": 64,
    }
    code, rep, _ = run_cli(problem, tmp_path=tmp_path)
    assert code == 0
    assert all(v == 0 for v in rep["dims"].values())


def test_bad_beta_exits_one(tmp_path):
    problem = {
        "command": "analyze",
        "shift": {"beta": [1.0, 0.0]},
        "a": 1,
        "b": 1,
    }
    code, rep, _ = run_cli(problem, tmp_path=tmp_path)
    assert code == 1
    assert rep["error"]["type"] == "BetaInsideDisk"


def test_not_fredholm_exits_two(tmp_path):
    problem = {
        "command": "analyze",
        "shift": {"beta": [2.0, 0.0]},
        "a": {"laurent": {"lo": 0, "coeffs": [[-1.0, 0.0], [1.0, 0.0]]}},
        "b": 1,
        "N": 64,
    }
    code, rep, _ = run_cli(problem, tmp_path=tmp_path)
    assert code == 2


def test_fredholm_command_boundary(tmp_path):
    problem = {
        "command": "fredholm",
        "shift": {"beta": [2.0, 0.0]},
        "a": {"base": 1, "jumps": [{"tau": [0.0, 1.0], "beta": [0.5, 0.0]}]},
        "b": 0,
        "p": 2.0,
    }
    code, rep, _ = run_cli(problem, tmp_path=tmp_path)
    assert code == 2
    assert rep["report"]["fredholm"] is False


def test_signature_command(tmp_path):
    problem = {
        "command": "signature",
        "shift": {"beta": [2.0, 0.0]},
        "a": "chi^-1",
    }
    code, rep, _ = run_cli(problem, tmp_path=tmp_path)
    assert code == 0 and rep["sigma"] == 1 and rep["route"] == "rational"


def test_verify_matches_analyze(tmp_path):
    base = {
        "shift": {"beta": [2.0, 0.0]},
        "a": "chi^-2",
        "b": "chi^-2",
        "N": 128,
    }
    _, rep_a, _ = run_cli({"command": "analyze", **base}, tmp_path=tmp_path)
    _, rep_v, _ = run_cli({"command": "verify", **base}, tmp_path=tmp_path)
    assert rep_v["dims"]["ker+"] == rep_a["dims"]["ker_plus"]
    assert rep_v["dims"]["coker-"] == rep_a["dims"]["coker_minus"]


def test_basis_command(tmp_path):
    problem = {
        "command": "basis",
        "shift": {"beta": [2.0, 0.0]},
        "a": "chi^-2",
        "b": "chi^-2",
    }
    code, rep, _ = run_cli(problem, tmp_path=tmp_path)
    assert code == 0
    assert len(rep["bases"]["ker_plus"]) == 2
    entry = rep["bases"]["ker_plus"][0]
    assert "series" in entry and "rational" in entry and "tag" in entry


def test_deterministic_output(tmp_path):
    problem = {
        "command": "analyze",
        "shift": {"beta": [2.0, 0.0]},
        "a": "chi^-2",
        "b": "chi^-2",
        "N": 128,
    }
    _, _, raw1 = run_cli(problem, tmp_path=tmp_path)
    _, _, raw2 = run_cli(problem, tmp_path=tmp_path)
    assert raw1 == raw2


def test_no_oracle_flag(tmp_path):
    problem = {
        "command": "analyze",
        "shift": {"beta": [2.0, 0.0]},
        "a": "chi^-2",
        "b": "chi^-2",
    }
    code, rep, _ = run_cli(problem, "--no-oracle", tmp_path=tmp_path)
    assert code == 0
    assert "oracle" not in rep


def test_stdin_stdout_roundtrip():
    problem = json.dumps(
        {"command": "signature", "shift": {"beta": [2.0, 0.0]}, "a": "one"}
    )
    proc = subprocess.run(
        [sys.executable, "-m", "toephankel.cli"],
        input=problem.encode(),
        capture_output=True,
    )
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["sigma"] == 1


def test_symbol_grammar():
    sh = make_shift(2.0)
    assert parse_symbol("chi^-2", sh).distance_to(sh.chi.power(-2)) < 1e-12
    assert parse_symbol("alpha_plus", sh).distance_to(sh.alpha_plus) < 1e-14
    assert parse_symbol(5, sh).distance_to(RationalSymbol.constant(5.0)) == 0.0
    prod = parse_symbol(["chi^-1", "chi^-1"], sh)
    assert prod.distance_to(sh.chi.power(-2)) < 1e-12
    lau = parse_symbol({"laurent": {"lo": -1, "coeffs": [[0.0, 1.732], [0.0, 0.0]]}}, sh)
    assert abs(lau.eval(1.0) - 1.732j) < 1e-12
    rat = parse_symbol(
        {
            "rational": {
                "num": {"lo": 0, "coeffs": [[1.0, 0.0]]},
                "den": {"lo": 0, "coeffs": [[-0.5, 0.0], [1.0, 0.0]]},
            }
        },
        sh,
    )
    assert abs(rat.eval(1.0) - 2.0) < 1e-12
    pc = parse_symbol(
        {"base": "one", "jumps": [{"tau": [1.0, 0.0], "beta": [0.25, 0.0]}]}, sh
    )
    assert len(pc.jumps) == 1
    with pytest.raises(InputError):
        parse_symbol("nope", sh)


def test_emit_json_formats():
    text = emit_json({"x": 0.1, "z": complex(1, -2), "flag": True, "n": 3})
    assert text == '{"x":0.10000000000000001,"z":[1,-2],"flag":true,"n":3}'


def test_malformed_json_exits_one(tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text("{not json")
    out = tmp_path / "rep.json"
    code = main(["--spec", str(spec), "--out", str(out)])
    assert code == 1
    assert "error" in json.loads(out.read_text())
