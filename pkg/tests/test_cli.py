import importlib.resources
import json

import pytest

from godeaux.cli import main
from godeaux.curves import read_curve_txt, write_curve_txt


def scene_path(name):
    ref = importlib.resources.files("godeaux.data") / name
    with importlib.resources.as_file(ref) as p:
        return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dim_unique(capsys):
    code, out, _err = run(capsys, "dim", scene_path("ex-z4.scene"))
    assert code == 0
    assert out == "dimension 0\n"


def test_dim_empty_is_negative(capsys):
    code, out, _err = run(capsys, "dim", scene_path("conics-6pts.scene"))
    assert code == 1
    assert out == "dimension -1\n"


def test_solve_empty_never_exits_zero(capsys):
    code, out, _err = run(capsys, "solve",
                          scene_path("conics-6pts.scene"))
    assert code == 1
    assert "empty (dimension -1)" in out


def test_modp_certificate_for_empty(capsys):
    code, out, _err = run(capsys, "dim", scene_path("conics-6pts.scene"),
                          "--modp", "101")
    assert code == 1
    assert out == "dimension -1\n"


def test_solve_prints_curve(capsys):
    code, out, _err = run(capsys, "solve", scene_path("ex-z4.scene"))
    assert code == 0
    assert "dimension 0" in out
    assert "curve with 37 terms" in out
    assert "15625*x^8*y^4" in out


def test_verify_roundtrip(tmp_path, capsys):
    ref = importlib.resources.files("godeaux.data") / \
        "z4_branch_degree12.txt"
    with importlib.resources.as_file(ref) as p:
        cur = read_curve_txt(str(p))
    cf = tmp_path / "b.txt"
    write_curve_txt(cur, str(cf))
    code, out, _err = run(capsys, "verify", scene_path("duval.scene"),
                          "--curve", str(cf))
    assert code == 0
    assert out.startswith("chain check: EXACT")


def test_verify_degree_mismatch_is_usage_error(tmp_path, capsys):
    cf = tmp_path / "line.txt"
    cf.write_text("1 1 0 0\n")
    code, _out, err = run(capsys, "verify", scene_path("duval.scene"),
                          "--curve", str(cf))
    assert code == 2
    assert "does not match scene degree" in err


def test_invariants_headline(capsys):
    code, out, _err = run(capsys, "invariants",
                          scene_path("duval.scene"))
    assert code == 0
    assert out.splitlines()[0] == "chi 1, Ksq_cover -4"
    assert "2-torsion subgroup order 2" in out


def test_torsion_z4(capsys):
    code, out, _err = run(capsys, "torsion", scene_path("ex-z4.scene"))
    assert code == 0
    assert out.splitlines()[0] == "torsion Z/4"
    assert "witness" in out


def test_scene_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.scene"
    bad.write_text("field rational\nsing q9 mult 4\nfrobnicate\n")
    code, _out, err = run(capsys, "dim", str(bad))
    assert code == 2
    assert "line 2: undeclared point 'q9'" in err
    assert "line 3: unknown keyword 'frobnicate'" in err


def test_parametric_scene_needs_reproduce(capsys):
    code, _out, err = run(capsys, "dim", scene_path("ex-deg11.scene"))
    assert code == 2
    assert "parametric scene" in err


def test_missing_file_exit_2(capsys):
    code, _out, err = run(capsys, "dim", "/no/such/file.scene")
    assert code == 2
    assert err.startswith("error:")


def test_bad_modp_rejected(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["dim", scene_path("ex-z4.scene"), "--modp", "91"])
    assert ei.value.code == 2


def test_json_shape(capsys):
    code, out, _err = run(capsys, "torsion", scene_path("ex-z4.scene"),
                          "--json")
    assert code == 0
    doc = json.loads(out)
    assert sorted(doc) == ["data", "status", "task", "witnesses"]
    assert doc["task"] == "torsion"
    assert doc["status"] == "ok"
    assert doc["data"]["group"] == "Z/4"
    assert "degree8" in doc["witnesses"]


def test_json_negative_status(capsys):
    code, out, _err = run(capsys, "solve",
                          scene_path("conics-6pts.scene"), "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "negative"
    assert doc["data"]["dimension"] == -1


def test_reports_are_byte_stable(capsys):
    """Thread count and repetition must not change a single byte."""
    _c, first, _e = run(capsys, "invariants", scene_path("duval.scene"))
    _c, again, _e = run(capsys, "invariants", scene_path("duval.scene"),
                        "--threads", "4")
    assert first == again
    _c, third, _e = run(capsys, "invariants", scene_path("duval.scene"),
                        "--threads", "1")
    assert first == third


def test_reproduce_z4(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    code, out, _err = run(capsys, "reproduce", "ex-z4")
    assert code == 0
    assert "curve matches the embedded golden coefficients (37 terms)" \
        in out
    assert "torsion Z/4" in out
    assert (tmp_path / "ex-z4-curve.txt").exists()
    cur = read_curve_txt(str(tmp_path / "ex-z4-curve.txt"))
    assert len(cur.terms) == 37


def test_reproduce_z4_modp_shortcut_same_verdict(tmp_path, monkeypatch,
                                                 capsys):
    monkeypatch.chdir(tmp_path)
    plain = run(capsys, "reproduce", "ex-z4")
    withp = run(capsys, "reproduce", "ex-z4", "--modp", "101")
    assert plain[0] == withp[0] == 0
    assert plain[1] == withp[1]


def test_reproduce_deg11_locus(capsys):
    code, out, _err = run(capsys, "reproduce", "ex-deg11")
    assert code == 0
    assert "p(t): degree 15 = 5 + 10" in out
    assert "generic rank 78 of 78 x 78" in out
