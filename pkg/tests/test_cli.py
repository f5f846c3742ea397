import json

import pytest

from tapestry.cli import EXIT_INPUT, EXIT_LIMIT, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["schema"] == 1
    return data


def test_enum_json_deterministic(capsys):
    a = run_json(capsys, "enum", "--pres", "trefoil.pres", "-p", "5")
    b = run_json(capsys, "enum", "--pres", "trefoil.pres", "-p", "5", "--workers", "2")
    assert a["count"] == 19
    assert a["representations"] == b["representations"]


def test_tap(capsys):
    code, out, _ = run(capsys, "tap", "--pres", "trefoil", "-p", "5", "--rep", "[[[0,4],[1,3]],[[0,1],[4,3]]]")
    assert code == EXIT_OK
    assert "Delta^N = t^4 + 2t^3 + 2t^2 + 2t + 1" in out
    data = run_json(capsys, "tap", "--pres", "figure8", "-p", "7", "--rep", "[[0,4,5,2],[1,0,3,1]]")
    assert data["numerator"] == [1, 1, 3, 1, 1] and data["denominator"] == [1, 5, 1]


def test_table(capsys):
    data = run_json(capsys, "table", "--pres", "kt_simplified.pres", "-p", "5")
    assert len(data["rows"]) == 8
    assert sum(r["multiplicity"] for r in data["rows"]) == 19


def test_obstruct(capsys):
    code, out, _ = run(capsys, "obstruct", "--source", "kt_simplified.pres", "--target", "trefoil.pres", "-p", "5")
    assert code == EXIT_OK and out.startswith("OBSTRUCTED")
    data = run_json(capsys, "obstruct", "--source", "trefoil", "--target", "trefoil", "-p", "5")
    assert data["verdict"] == "NOT_OBSTRUCTED"


def test_divides(capsys):
    data = run_json(capsys, "divides", "-p", "5", "--d", "t + 1", "--f", "t^2 + 2t + 1")
    assert data["divides"] and data["quotient"] == [1, 1]
    data = run_json(capsys, "divides", "--source", "figure8", "--target", "figure8", "-p", "7")
    assert data["mode"] == "plain" and data["verdict"] == "NOT_OBSTRUCTED"


def test_twist(capsys):
    assert run_json(capsys, "twist", "p", "-q", "2")["p"] == "2u^4 + 6u^2"
    assert run_json(capsys, "twist", "phi", "-q", "1")["phi"] == "-u + 1"
    assert run_json(capsys, "twist", "certify", "-q", "-1")["verdict"] == "INCONCLUSIVE"
    assert run_json(capsys, "twist", "gencheck", "-q", "2", "-p", "3")["holds"]


def test_coset(capsys):
    assert run_json(capsys, "coset", "--twist", "2")["status"] == "TRIVIAL"
    code, _, _ = run(capsys, "coset", "--pres", "trefoil", "--limit", "1000")
    assert code == EXIT_LIMIT


def test_verify_hom(capsys):
    data = run_json(capsys, "verify-hom", "--hom", "f_kt_to_trefoil", "--source", "kt_wirtinger",
                    "--target", "trefoil")
    assert data["homomorphism"] and data["surjective"]
    assert data["trace"]["matrix"] == [[-1, 2], [-3, 5]]


def test_simplify_and_abelianize(capsys):
    data = run_json(capsys, "simplify", "--pres", "kt_wirtinger")
    assert len(data["generators"]) == 3
    assert run_json(capsys, "abelianize", "--pres", "j_minus1") == {"schema": 1, "free_rank": 1, "torsion": []}


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "enum", "--pres", "nonexistent", "-p", "5")[0] == EXIT_INPUT
    assert run(capsys, "enum", "--pres", "trefoil", "-p", "4")[0] == EXIT_INPUT
    assert run(capsys, "enum", "--pres", "j_minus1", "-p", "7", "--max-nodes", "100")[0] == EXIT_LIMIT
    bad = tmp_path / "bad.pres"
    bad.write_text("gen a\nrel b\n")
    assert run(capsys, "enum", "--pres", str(bad), "-p", "3")[0] == EXIT_INPUT
    with pytest.raises(SystemExit):
        main(["bogus"])


def test_output_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "enum", "--pres", "trefoil", "-p", "3", "--json", "-o", str(out))
    assert code == EXIT_OK and json.loads(out.read_text())["count"] == 11
