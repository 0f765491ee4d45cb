import csv
import json

import pytest

from qfock.cli import run


def out_of(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_norm(capsys):
    code, out, _ = out_of(capsys, ["norm", "--word", "0,0,0", "--q", "1/2"])
    assert code == 0
    assert out.splitlines() == ["21/8", "2.625"]


def test_inner_paths_agree(capsys):
    _, fast, _ = out_of(capsys, ["inner", "--a", "0,1,0", "--b", "1,0,0", "--q", "1/2"])
    _, brute, _ = out_of(capsys, ["inner", "--a", "0,1,0", "--b", "1,0,0", "--q", "1/2", "--bruteforce"])
    assert fast == brute


def test_mixing_output(capsys, tmp_path):
    js, cs = tmp_path / "m.json", tmp_path / "m.csv"
    argv = ["mixing", "--a", "1", "--b", "1", "--q", "1/2", "--nmax", "10",
            "--json", str(js), "--csv", str(cs)]
    code, out, _ = out_of(capsys, argv)
    assert code == 0
    assert "partial_sum\t1398101/1048576" in out
    data = json.loads(js.read_text())
    assert [e["c_exact"] for e in data["entries"]] == ["1"] + [f"1/{4 ** N}" for N in range(1, 11)]
    assert data["verdict"] == "summable-evidence"
    rows = list(csv.DictReader(cs.open()))
    assert rows[-1]["partial_sum_exact"] == "1398101/1048576"
    assert all(r["c_exact"] and r["c_float"] for r in rows)


def test_output_is_reproducible(capsys, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        _, out, _ = out_of(capsys, ["mixing", "--a", "1,0", "--b", "0,1", "--q=-1/2",
                                    "--nmax", "8", "--json", str(path)])
        outs.append((out, path.read_bytes()))
    assert outs[0] == outs[1]
    _, a, _ = out_of(capsys, ["commutator-check", "--q", "1/2", "--samples", "5", "--seed", "4"])
    _, b, _ = out_of(capsys, ["commutator-check", "--q", "1/2", "--samples", "5", "--seed", "4"])
    assert a == b


def test_commutator_check_free_case(capsys):
    code, out, _ = out_of(capsys, ["commutator-check", "--q", "0", "--samples", "20"])
    assert code == 0
    assert out.splitlines()[-1] == "failures\t0"


def test_wick(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, out, _ = out_of(capsys, ["wick", "1,2", "--dim", "3", "--q", "1/2", "--json", str(path)])
    assert code == 0
    assert out.splitlines() == ["q^0 · c1 c2", "q^1 · c2 a1", "q^0 · c1 a2", "q^0 · a1 a2"]
    data = json.loads(path.read_text())
    assert data["monomials"][1] == {"factors": ["c2", "a1"], "inversions": 1, "weight": "1/2"}


@pytest.mark.parametrize("cmd", [
    ["gram", "--q=-3/10"],
    ["hermite-check", "--q", "3/10", "--nmax", "12"],
    ["ortho-check", "--q", "1/2", "--jmax", "6"],
])
def test_checks_pass(capsys, cmd):
    code, out, _ = out_of(capsys, cmd)
    assert code == 0
    assert "FAIL" not in out


def test_float_backend(capsys):
    code, out, _ = out_of(capsys, ["norm", "--word", "0,0,0", "--q", "0.5"])
    assert code == 0
    assert out.splitlines() == ["2.625"]


@pytest.mark.parametrize("argv,needle", [
    (["norm", "--word", "0", "--q", "abc"], "cannot parse q"),
    (["norm", "--word", "0", "--q", "1"], "-1 < q < 1"),
    (["norm", "--word", "0,3"], "out of range"),
    (["norm", "--word", "0,0,0", "--degree-cap", "2"], "exceeds cap"),
    (["mixing", "--a", "0", "--b", "0", "--dim", "1"], "dimension >= 2"),
    (["wick", ",".join(["0"] * 21)], "exceeds cap"),
])
def test_usage_errors(capsys, argv, needle):
    code, _, err = out_of(capsys, argv)
    assert code == 2
    assert needle in err


def test_unknown_subcommand(capsys):
    assert run(["frobnicate"]) == 2


def test_failed_check_exits_one(capsys, monkeypatch):
    from qfock import ops
    from qfock.fock import FockVector

    monkeypatch.setattr(ops, "q_commutation_defect", lambda a, b, v, q: FockVector.vacuum())
    code, out, _ = out_of(capsys, ["commutator-check", "--samples", "1"])
    assert code == 1
    assert "FAIL" in out
