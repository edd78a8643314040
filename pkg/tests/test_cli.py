import json

import pytest

from zigzag_ehrhart.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_orderpoly_all(capsys):
    code, out, _ = run(capsys, "orderpoly", "--poset", "zigzag:6", "--method", "all", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["agree"] and data["scaled_coeffs"] == ["0", "12", "64", "165", "235", "183", "61"]
    assert data["methods"] == ["brute", "kreweras", "minor", "decomposition"]


def test_orderpoly_shift_and_text(capsys):
    code, out, _ = run(capsys, "orderpoly", "--poset", "zigzag:6", "--shift", "--format", "json")
    data = json.loads(out)
    assert data["shifted_coeffs"] == ["-1/1024", "0", "-41/11520", "0", "5/576", "0", "61/720"]
    code, out, _ = run(capsys, "orderpoly", "--poset", "crown:4")
    assert code == 0 and "agree: yes" in out


def test_orderpoly_errors(capsys):
    assert run(capsys, "orderpoly", "--poset", "zigzag:0")[0] == 2
    assert run(capsys, "orderpoly", "--poset", "zigzag:9", "--method", "brute")[0] == 3
    assert run(capsys, "orderpoly", "--poset", "crown:6", "--method", "minor")[0] == 2
    assert run(capsys, "orderpoly", "--poset", "zigzag:3", "--bogus")[0] == 2
    assert run(capsys)[0] == 2
    code, out, _ = run(capsys, "orderpoly", "--poset", "zigzag:10", "--format", "json")
    assert code == 0 and json.loads(out)["methods"] == ["kreweras", "minor"]


def test_hk(capsys):
    code, out, _ = run(capsys, "hk", "--p", "3", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["e_hk"] == "3/2" and data["margin"] == "0" and data["satisfied"] is True
    code, _, err = run(capsys, "hk", "--p", "9", "--n", "4")
    assert code == 0 and "not prime" in err
    assert run(capsys, "hk", "--p", "4", "--n", "2")[0] == 2


def test_verify_wy(capsys):
    code, out, _ = run(capsys, "verify-wy", "--p-list", "3,5", "--n-min", "2", "--n-max", "4", "--csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == '"p","n","e_hk","bound","margin","satisfied"'
    assert lines[1] == '3,2,"3/2","3/2","0",True'
    assert len(lines) == 7


def test_series_weights_grow(capsys):
    code, out, _ = run(capsys, "series", "--name", "u", "--upto", "5", "--format", "json")
    assert json.loads(out)["coeffs"] == ["0", "1", "0", "1/24", "0", "3/640"]
    code, out, _ = run(capsys, "weights", "--n", "6", "--k", "4", "--list", "--format", "json")
    data = json.loads(out)
    assert data["f"] == "25/4" and len(data["decompositions"]) == 4
    assert {d["classes"] for d in data["decompositions"]} >= {"1u+1d+1u+3s"}
    code, out, _ = run(capsys, "grow", "--n", "6")
    assert out.strip() == "G_6(x) = -1/1024 + (-41/5760)x^2 + (1/24)x^4 + x^6"
    assert run(capsys, "weights", "--n", "3", "--k", "4")[0] == 2


def test_hadamard_and_crown(capsys):
    code, out, _ = run(capsys, "hadamard-check", "--n-max", "10", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "crown", "--n", "6", "--check", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"] and data["coeffs"] == ["0", "12", "0", "30", "0", "48"]
    assert run(capsys, "crown", "--n", "10", "--check")[0] == 3


def test_alt_check(capsys, monkeypatch):
    code, out, _ = run(capsys, "alt-check", "--n-min", "8", "--n-max", "9", "--t-grid", "1.5,3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and len(data["cells"]) == 4
    assert all(c["status"] == "positive" and c["pi_bits"] == 256 for c in data["cells"])
    monkeypatch.setenv("ZIGZAG_EHRHART_PI_BITS", "128")
    code, out, _ = run(capsys, "alt-check", "--n-min", "8", "--n-max", "8", "--t-grid", "2", "--format", "csv")
    assert code == 0 and '"positive"' in out and ",128" in out


def test_determinism(capsys):
    argv = ("verify-wy", "--format", "json")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_json_round_trip(capsys):
    from fractions import Fraction

    from zigzag_ehrhart.exactmath import Poly

    code, out, _ = run(capsys, "orderpoly", "--poset", "zigzag:5", "--method", "minor", "--format", "json")
    data = json.loads(out)
    p = Poly.from_json(data["coeffs"])
    assert p(1) == 1 and json.loads(json.dumps(data)) == data
    assert Fraction(data["scaled_coeffs"][-1]) == 16
