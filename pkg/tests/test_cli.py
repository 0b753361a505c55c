import json

import pytest

from tmf_adams.cli import CliConfig, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_tate(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "tate", "--precision", "200")
    assert code == 0 and "tate" in out


def test_homotopy_example(capsys):
    code, out, _ = call(
        capsys, "homotopy", "--model", "tmf", "--invert", "2,3,5", "--window", "-24..24", "--n", "5", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    row = next(d for d in doc["degrees"] if d["degree"] == 8)
    assert row["group"] == "Z"
    assert row["basis"] == [{"label": "c4", "order": 0, "psi^5": "625"}]
    row = next(d for d in doc["degrees"] if d["degree"] == -21)
    assert row["basis"][0]["psi^5"] == "1/9765625"


def test_homotopy_table(capsys):
    code, out, _ = call(capsys, "homotopy", "--window", "8..8")
    assert code == 0
    assert out.splitlines()[2].split() == ["8", "Z", "c4", "625"]


def test_pairing_example(capsys):
    code, out, _ = call(capsys, "pairing", "--w1", "4", "--w2", "6", "--weight", "12", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["matrix"] == [["1", "0"], ["0", "1"]]
    assert doc["cols"] == ["1/(c4*c6^3)", "1/(c4^4*c6)"]


def test_qexp(capsys):
    code, out, _ = call(capsys, "qexp", "delta", "--precision", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["exponent,coefficient", "0,0", "1,1", "2,-24", "3,252", "4,-1472"]
    code, out, _ = call(capsys, "qexp", "j", "--precision", "4", "--format", "json")
    doc = json.loads(out)
    # the 1/q shift costs one coefficient of precision
    assert doc["leading_exponent"] == -1 and doc["coeffs"] == ["1", "744", "196884"]


def test_dualize(capsys):
    code, out, _ = call(capsys, "dualize", "--model", "ko", "--window", "-16..16", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["shift"] == 4 and all(r["match"] for r in doc["rows"])


@pytest.mark.parametrize(
    "argv",
    [
        ["homotopy", "--format", "json"],
        ["qexp", "c4", "--precision", "30", "--format", "json"],
        ["pairing", "--weight", "24", "--format", "json"],
        ["verify", "--suite", "conjecture", "--format", "json"],
        ["verify", "--format", "json"],
    ],
)
def test_json_round_trip(capsys, argv):
    _, out, _ = call(capsys, *argv)
    assert json.dumps(json.loads(out), indent=2, ensure_ascii=False) + "\n" == out


def test_verify_all_defaults_exit_zero(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "all")
    assert code == 0
    assert "FAIL" not in out


def test_exit_code_one_on_fail(capsys):
    # psi^-1 on KU is complex conjugation, so the identity check fails
    code, out, _ = call(capsys, "verify", "--suite", "composition", "--model", "ku", "--m", "2", "--n", "3", "--window", "-4..4")
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["homotopy", "--window", "5..1"],
        ["homotopy", "--window", "abc"],
        ["homotopy", "--invert", "4"],
        ["qexp", "--precision", "0"],
        ["verify", "--suite", "bogus"],
        ["frobnicate"],
        ["homotopy", "--model", "tmf1", "--level", "5"],
        ["qexp", "nope"],
    ],
)
def test_exit_code_two_on_usage_errors(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err


def test_ledger_flag(tmp_path, capsys):
    path = tmp_path / "ledger.json"
    path.write_text(json.dumps([{"family": "beta", "prime": 3, "degree_offset": 10, "degree_period": 72, "orders": [3]}]))
    code, out, _ = call(capsys, "homotopy", "--invert", "5", "--window", "10..10", "--ledger", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["degrees"][0]["group"] == "Z/3"


def test_env_ledger(tmp_path, capsys, monkeypatch):
    path = tmp_path / "ledger.json"
    path.write_text(json.dumps([{"family": "beta", "prime": 3, "degree_offset": 10, "degree_period": 72, "orders": [3]}]))
    monkeypatch.setenv("TMF_ADAMS_LEDGER", str(path))
    _, out, _ = call(capsys, "homotopy", "--invert", "5", "--window", "10..10", "--format", "json")
    assert json.loads(out)["degrees"][0]["group"] == "Z/3"


def test_config_defaults():
    cfg = CliConfig("verify")
    assert cfg.base().primes == (2, 3, 5)
    assert CliConfig("verify", model="ku", n=3).base().primes == (3,)
    assert CliConfig("verify", invert=(7,)).base().primes == (7,)
    with pytest.raises(ValueError):
        CliConfig("verify", window=(3, 1))
