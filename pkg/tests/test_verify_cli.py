import json

import pytest

from vglab.cli import main
from vglab.verify import FAIL, INFO, PASS, dumps, riemann_roch, run_case, stratify


def test_riemann_roch_closed_forms():
    assert riemann_roch(2, 3, 6, 0) == 5
    assert riemann_roch(2, 3, 6, -1) == 0


def test_report_is_deterministic():
    a = dumps(run_case("4a", seed=3).to_dict())
    b = dumps(run_case("4a", seed=3).to_dict())
    assert a == b
    assert "timings" not in json.loads(a)
    assert "timings" in run_case("4a", seed=3).to_dict(timings=True)


def test_negative_control_reports():
    rep = run_case("neg-c2-7")
    assert rep.ok and rep.note.startswith("NON-EMBEDDING-BY-CLASSIFICATION")
    assert rep.check("stability").computed is True
    assert rep.check("chern data").computed == [3, 7]
    assert rep.summary["h0"] == 4
    rep = run_case("h0-3")
    assert rep.check("embedding fails as designed").status == PASS
    rep = run_case("type3")
    assert rep.check("global generation").computed is False and rep.ok


def test_report_statuses_are_known():
    for c in run_case("4c").checks:
        assert c.status in (PASS, FAIL, INFO)


def test_stratify_small():
    rep = stratify(20, 0)
    assert sum(rep.counts.values()) == 20
    reps = rep.representatives
    assert reps["type 1 representative"]["globally_generated"] is True
    assert reps["type 3 representative"]["h0_minus1"] == 2
    assert reps["type 3 representative"]["witness_on_degeneracy_line"] is True
    with pytest.raises(ValueError):
        stratify(0)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_list(capsys):
    code, out, _ = run(["list"], capsys)
    assert code == 0
    ids = [line.split()[0] for line in out.splitlines()]
    for cid in ["1a", "1b", "2", "3", "4a", "4b", "4c", "4d", "neg-c2-7"]:
        assert cid in ids


def test_cli_verify_json_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify", "4b", "--seed", "5", "--format", "json", "--out", str(a)], capsys)[0] == 0
    assert run(["verify", "4b", "--seed", "5", "--format", "json", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["case"] == "4b" and data["ok"] is True


def test_cli_verify_text_and_p3(capsys):
    code, out, _ = run(["verify", "1b@P3", "--samples", "30"], capsys)
    assert code == 0 and "PASS" in out.splitlines()[0]


def test_cli_usage_errors(capsys):
    assert run(["verify", "9z"], capsys)[0] == 2
    assert run(["verify", "4a@P3"], capsys)[0] == 2
    assert run(["chern", "O(1"], capsys)[0] == 2
    assert run(["cohom", "O(1)+O(2)", "--twists", "3..1"], capsys)[0] == 2
    assert run(["restrict", "O(1)+O(2)", "--line", "1:0:0"], capsys)[0] == 2
    assert run(["stratify", "--samples", "0"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nosuch"])
    assert exc.value.code == 2


def test_cli_chern(capsys):
    code, out, _ = run(["chern", "Omega(2)+O(1)"], capsys)
    assert code == 0
    assert "rank 3" in out
    code, out, _ = run(["chern", "Sym2Omega(1)", "--format", "json"], capsys)
    assert json.loads(out)["total"] == "1 - 3t + 6t^2"
    code, out, _ = run(["chern", "case:4a"], capsys)
    assert "c1=3 c2=6" in out


def test_cli_cohom_negative_twists(capsys):
    code, out, _ = run(["cohom", "O(1)+O(2)", "--twists", "-2..2", "--format", "json"], capsys)
    assert code == 0
    table = json.loads(out)
    assert table["0"] == [9, 0, 0] and table["-2"] == [1, 0, 0]


def test_cli_restrict(capsys):
    code, out, _ = run(["restrict", "case:4a", "--line", "1:0:0;0:1:0"], capsys)
    assert code == 0 and out.split() in (["1", "2"], ["0", "3"])
    code, out, _ = run(["restrict", "O(0)+O(3)", "--line", "1:2:3;0:1:1"], capsys)
    assert out.split() == ["0", "3"]


def test_cli_plucker(tmp_path, capsys):
    f = tmp_path / "map.txt"
    assert run(["plucker", "case:4a", "--out", str(f)], capsys)[0] == 0
    assert f.read_text().splitlines()[0] == "2 4 3"
    code, out, _ = run(["plucker", "O(1)+O(2)"], capsys)
    assert code == 0 and out.splitlines()[0] == "2 8 3"


def test_cli_obstructions(capsys):
    code, out, _ = run(["obstructions"], capsys)
    assert code == 0 and "[fail]" not in out
    code, out, _ = run(["obstructions", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["abc_triples"] == [[6, 1, 3], [6, 2, 2]]
    assert data["chi_contradiction"]["forced_h1"] == -1


def test_cli_stratify(capsys):
    code, out, _ = run(["stratify", "--samples", "10", "--seed", "1", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["samples"] == 10
