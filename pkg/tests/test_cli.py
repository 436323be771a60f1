import io
import json
import os
from pathlib import Path

import pytest

from injring import cli

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "hilbert_exterior": ["hilbert", "--ring", "exterior", "--dmax", "6"],
    "basis_cube": ["basis", "--ring", "cube", "--degree", "5", "--dmax", "5"],
    "mul_cube_bar": ["mul", "--ring", "cube-bar(0,2)", "y0", "y0^2"],
    "ann_cube": ["ann", "--ring", "cube", "--gens", "x1", "--dmax", "14"],
    "socle_exterior": ["socle", "--ring", "exterior(2)"],
    "poincare_cube_bar": ["poincare", "--ring", "cube-bar(0,3)"],
    "classify_rado": ["classify-pair", "--ring", "rado", "--u", "x{0},x{2}", "--v", "0@1,x{2}", "--d", "0", "--dmax", "20"],
    "classify_exterior_block": ["classify-pair", "--ring", "exterior", "--u", "x{0}", "--v", "x{1}", "--d", "1"],
    "bad_pairs_xy": ["bad-pairs", "--ring", "f2[x:1,y:1]/(x*y)", "--weight", "3", "--dmax", "10"],
    "ordinal_delta": ["ordinal", "delta", "w^2"],
    "ordinal_mu": ["ordinal", "mu", "w^2", "w+1"],
    "root_invert": ["root", "invert", "1 + x^(1/2)"],
    "root_ann": ["root", "ann", "--t", "1/3", "--closed"],
    "jring_duality": ["jring", "duality", "--k", "3", "--prime", "3"],
    "rado_witness": ["rado-witness", "--gens", "x{0,1}", "--target", "x{1}"],
}


def run(argv, monkeypatch=None):
    buf = io.StringIO()
    code = cli.run(argv, out=buf)
    return code, buf.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, monkeypatch):
    monkeypatch.delenv(cli.ENV_DMAX, raising=False)
    code, out = run(CASES[name])
    path = GOLDEN / f"{name}.jsonl"
    if os.environ.get("INJRING_REGEN_GOLDEN"):
        path.write_text(out)
    assert code in (0, 1)
    assert out == path.read_text()


def test_records_carry_bounds_and_provenance(monkeypatch):
    monkeypatch.delenv(cli.ENV_DMAX, raising=False)
    for argv in CASES.values():
        _, out = run(argv)
        for line in out.splitlines():
            rec = json.loads(line)
            assert "bounds" in rec and "dmax" in rec["bounds"]
            assert rec["provenance"]["tool"] == "injring"
            assert rec["command"] == argv[0]


def test_output_is_deterministic():
    a = run(CASES["bad_pairs_xy"])
    b = run(CASES["bad_pairs_xy"])
    assert a == b


def test_exit_codes(tmp_path, monkeypatch):
    monkeypatch.delenv(cli.ENV_DMAX, raising=False)
    assert run(["hilbert", "--ring", "exterior"])[0] == 0
    # a failed check
    assert run(["poincare", "--ring", "cube"])[0] == 1
    # usage errors
    assert run(["hilbert", "--ring", "bogus"])[0] == 2
    assert run(["hilbert"])[0] == 2
    assert run(["nonsense"])[0] == 2
    assert run(["mul", "--ring", "exterior", "x{0"])[0] == 2
    # bounds
    assert run(["hilbert", "--ring", "cube", "--dmax", "100000000"])[0] == 3
    assert run(["basis", "--ring", "cube", "--degree", "20", "--dmax", "8"])[0] == 3
    assert run(["jring", "mul", "alpha(9)", "alpha(-9)", "--trunc", "1"])[0] == 3


def test_environment_default(monkeypatch):
    monkeypatch.setenv(cli.ENV_DMAX, "4")
    _, out = run(["hilbert", "--ring", "exterior"])
    assert json.loads(out)["hilbert"] == [1] * 5
    monkeypatch.setenv(cli.ENV_DMAX, "four")
    assert run(["hilbert", "--ring", "exterior"])[0] == 2


def test_config_file_and_override(tmp_path, monkeypatch):
    monkeypatch.delenv(cli.ENV_DMAX, raising=False)
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"dmax": 3, "ring": "exterior"}))
    _, out = run(["hilbert", "--config", str(cfg)])
    assert json.loads(out)["hilbert"] == [1] * 4
    _, out = run(["hilbert", "--config", str(cfg), "--dmax", "5"])
    assert json.loads(out)["hilbert"] == [1] * 6
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(["hilbert", "--ring", "exterior", "--config", str(cfg)])[0] == 2
    assert run(["hilbert", "--ring", "exterior", "--config", str(tmp_path / "missing.json")])[0] == 2


def test_dann_reports_bound_relative_evidence(monkeypatch):
    monkeypatch.delenv(cli.ENV_DMAX, raising=False)
    code, out = run(["dann", "--ring", "epsilon", "--gens", "x[w^2] + x[w+1]"])
    rec = json.loads(out)
    assert code == 1 and rec["equal"] is False
    assert "evidence_upto" in rec


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run(
        [sys.executable, "-m", "injring", "ordinal", "phi", "w"], capture_output=True, text=True, check=True
    )
    assert json.loads(res.stdout)["word"]
