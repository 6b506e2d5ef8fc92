import json
from pathlib import Path

import pytest

from liedense.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path)])


def report(tmp_path, name):
    return json.loads((tmp_path / name).read_text())


def test_roots_g2(tmp_path, capsys):
    assert run(tmp_path, "roots", "G2") == 0
    out = capsys.readouterr().out
    assert out.startswith("G2: 12 roots")
    assert report(tmp_path, "roots-G2.json")["report"]["count"] == 12


def test_certify_adjoint(tmp_path):
    assert run(tmp_path, "certify", "--type", "A2", "--rep", "adjoint") == 0
    data = report(tmp_path, "certify-A2-adjoint.json")
    assert data["report"]["generated"] is True


def test_certify_sl2_even_dimension_is_reported_not_failed(tmp_path):
    assert run(tmp_path, "certify", "--rep", "sl2:3") == 0
    data = report(tmp_path, "certify-A1-sl2_3.json")["report"]
    assert data["claimed"] is False


def test_certify_from_file(tmp_path):
    rep = FIXTURES / "sl2_v2.json"
    assert run(tmp_path, "certify", "--rep", f"file:{rep}") == 0
    assert report(tmp_path, "certify-A1-sl2_v2.json")["report"]["generated"]


def test_corrupted_representation_exits_1(tmp_path, capsys):
    rep = FIXTURES / "sl2_v2_corrupted.json"
    assert run(tmp_path, "certify", "--rep", f"file:{rep}") == 1
    assert "NotARepresentation" in capsys.readouterr().err


def test_momega_e6_report(tmp_path):
    code = run(tmp_path, "momega", "--type", "E6", "--m-max", "12")
    data = report(tmp_path, "momega-E6.json")
    assert data["report"]["failures"] == [["E6", 6, 3], ["E6", 6, 9]]
    assert code == 1


def test_momega_g2_passes(tmp_path):
    assert run(tmp_path, "momega", "--type", "G2", "--m-max", "6") == 0


@pytest.mark.parametrize("argv", [
    ["roots", "--type", "X7"],
    ["certify", "--rep", "bogus"],
    ["certify", "--rep", "file:/does/not/exist.json"],
    ["certify", "--rep", "adjoint"],
    ["pairing", "--type", "A2", "--weight", "1,x"],
    ["pairing", "--type", "A2", "--weight", "1,0", "--root", "1,-1"],
    ["old-sl2", "--n", "4", "--k", "2"],
    ["irrep", "--type", "A1", "--weight", "6", "--k-max", "1"],
    ["momega", "--type", "A2", "--m-max", "0"],
])
def test_usage_errors_exit_2(tmp_path, argv, capsys):
    assert run(tmp_path, *argv) == 2
    assert "usage error" in capsys.readouterr().err


def test_argparse_usage_error_exits_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_malformed_json_file_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(tmp_path, "certify", "--rep", f"file:{bad}") == 2


def test_deterministic_reports(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["adjoint-cases", "--type", "B2", "--out", str(out)]) == 0
        assert main(["irrep", "--type", "A2", "--weight", "2,2", "--out", str(out)]) == 0
        assert main(["euler", "--out", str(out)]) == 0
    for name in ("adjoint-cases-B2.json", "irrep-A2-2_2.json", "euler.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


@pytest.mark.parametrize("argv,name", [
    (["pairing", "--type", "G2", "--weight", "1,0"], "pairing-G2.json"),
    (["lattice", "--type", "A3", "--weight", "0,2,0"], "lattice-A3.json"),
    (["lemma-l3", "--type", "B3", "--bound", "3"], "lemma-l3-B3.json"),
    (["chevalley", "--type", "G2"], "chevalley-G2.json"),
    (["old-sl2", "--n", "6"], "old-sl2-6.json"),
    (["quadric", "--n", "3"], "quadric-3.json"),
    (["symplectic", "--n", "2", "--count", "5", "--seed", "1"], "symplectic-2.json"),
])
def test_campaigns_pass(tmp_path, argv, name):
    assert run(tmp_path, *argv) == 0
    assert report(tmp_path, name)["passed"] is True


def test_json_stdout(tmp_path, capsys):
    assert run(tmp_path, "lattice", "--type", "A2", "--weight", "1,1", "--format", "json") == 0
    data = json.loads(capsys.readouterr().out)
    assert data["report"]["in_root_lattice"] is True
    assert data["report"]["simple_root_coefficients"] == ["1", "1"]


def test_quadric_even_n_reports_bound_two(tmp_path):
    assert run(tmp_path, "quadric", "--n", "2") == 0
    assert report(tmp_path, "quadric-2.json")["report"]["standard_rep_boundedness"] == 2
