import json
from pathlib import Path

import pytest

from cohodev.cli import main, parse_heads
from cohodev.matrix import GenMatrix

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_family_projective(capsys):
    code, out, _ = run(capsys, "family", "projective", "--q", 3, "--d", 2, "--n", 2)
    assert code == 0
    assert out.splitlines()[0] == "GW(13,9;2) VERIFIED"
    assert len(out.splitlines()) == 14


def test_family_flag_weight(capsys):
    code, out, _ = run(capsys, "family", "flag", "--q", 4, "--partition", "1,1,1", "--n", 3)
    assert code == 0
    # complete flags of F_4^3: (q^2 + q + 1)(q + 1) = 105
    assert out.startswith("GW(105,") and "VERIFIED" in out.splitlines()[0]


def test_family_flag_invalid_n(capsys):
    code, _, err = run(capsys, "family", "flag", "--q", 3, "--partition", "1,1,1", "--n", 2)
    assert code == 2 and "n >= r" in err


def test_family_missing_parameter(capsys):
    code, _, err = run(capsys, "family", "projective", "--q", 3)
    assert code == 2
    assert "--d" in err


def test_unknown_family_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["family", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_conference_write_verify_gram_equiv(capsys, tmp_path):
    f = tmp_path / "conf.txt"
    code, _, _ = run(capsys, "family", "paley-conference", "--q", 5, "--n", 2, "-o", f)
    assert code == 0 and f.exists()
    assert run(capsys, "verify", f)[0] == 0
    assert run(capsys, "verify", f, "--w", 5)[0] == 0
    code, out, _ = run(capsys, "verify", f, "--w", 4)
    assert code == 1 and "FAILED" in out
    code, out, _ = run(capsys, "gram", f)
    assert code == 0 and out.splitlines()[0].split() == ["5", "0", "0", "0", "0", "0"]
    code, out, _ = run(capsys, "equiv", f, f)
    assert code == 0 and out.startswith("left")


def test_json_output(capsys, tmp_path):
    f = tmp_path / "k.json"
    code, out, _ = run(capsys, "family", "paley-kernel", "--q", 5, "--n", 2, "-o", f, "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "family" and report["exit"] == 0
    M = GenMatrix.from_json(json.loads(f.read_text()))
    assert M.rows == 5


def test_equiv_none(capsys, tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("++\n++\n")
    b.write_text("++\n+-\n")
    code, out, _ = run(capsys, "equiv", a, b)
    assert code == 1 and "none" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "verify", "/nonexistent/m.txt")
    assert code == 2 and "no such file" in err


def test_develop_a6(capsys):
    code, out, _ = run(capsys, "develop", SPECS / "a6.json", "--heads", "O_1=1,O_2=-1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("O_1: size 15")
    assert "non-orientable" in lines[2]
    assert len(lines) == 3 + 15


def test_develop_nonorientable_head_exits_3(capsys):
    code, out, _ = run(capsys, "develop", SPECS / "a6.json", "--heads", "O_3=1")
    assert code == 3 and "non-orientable orbit O_3" in out


def test_develop_compare_cube(capsys):
    code, out, _ = run(capsys, "develop", SPECS / "cube.json", "--heads", "O_1=1",
                       "--compare", SPECS / "cube_display.txt")
    assert code == 0 and "D-equivalent" in out and "yes" in out


def test_parse_heads_forms():
    assert parse_heads("O_1=1,O_2=-1", 3, 2) == {0: 0, 1: 1}
    assert parse_heads('{"O_2": "z^2"}', 2, 4) == {1: 2}
    with pytest.raises(ValueError):
        parse_heads("O_5=1", 3, 2)
    with pytest.raises(ValueError):
        parse_heads("O_1=7", 3, 2)


def test_quasiproduct_not_weighing(capsys):
    code, out, _ = run(capsys, "quasiproduct", "--q", 5, "--d", 1, "--n", 2, "--row=-1,1,1,1")
    assert code == 1 and "not weighing" in out


def test_quasiproduct_bad_row(capsys):
    code, _, _ = run(capsys, "quasiproduct", "--q", 5, "--d", 1, "--n", 2, "--row=1,1")
    assert code == 2


def test_cocyclic_extension(capsys):
    code, out, _ = run(capsys, "cocyclic", "--extension", "2,2")
    assert code == 0 and out.splitlines()[-2:] == ["++", "+-"]


def test_cocyclic_omega_file(capsys, tmp_path):
    f = tmp_path / "om.json"
    f.write_text(json.dumps({"n": 2, "pairs": {"1,1": 1}}))
    code, out, _ = run(capsys, "cocyclic", "--group", "cyclic:2", "--omega", f)
    assert code == 0 and out.splitlines()[-2:] == ["++", "+-"]


def test_cap_rejects_nonpositive(capsys):
    code, _, _ = run(capsys, "gram", "x", "--cap", 0)
    assert code == 2
