import importlib.resources

import pytest
from gmpy2 import mpq

from godeaux.fields import QQ, FunctionField, NumberField
from godeaux.scenes import (
    SceneError, SceneFile, parse_scene, serialize_scene)


def packaged(name):
    return (importlib.resources.files("godeaux.data") / name).read_text()


MINIMAL = """
field rational
degree 2
point p = [0, 0, 1]
sing p mult 1
"""


def test_minimal_scene():
    sc = parse_scene(MINIMAL)
    assert sc.field_kind == "rational"
    assert sc.degree == 2
    assert sc.point_names == ["p"]
    assert sc.sings == [("p", (1,), None)]
    assert sc.tasks == []


def test_packaged_scenes_parse():
    z4 = parse_scene(packaged("ex-z4.scene"))
    assert z4.degree == 12
    assert len(z4.sings) == 5
    assert z4.involution is not None
    assert z4.branch_lines == ["r1", "r2"]
    assert z4.tasks == ["dim", "solve", "torsion"]

    dv = parse_scene(packaged("duval.scene"))
    assert dv.degree == 12
    assert len(dv.sings) == 7
    assert dv.involution is None

    d11 = parse_scene(packaged("ex-deg11.scene"))
    assert d11.param
    assert d11.degree == 11
    assert d11.fixed_lines == ["r3"]


def test_point_coordinates_are_rational():
    sc = parse_scene(MINIMAL)
    x, y, z = sc.points["p"]
    assert x.is_zero() and y.is_zero()
    assert z.c == (mpq(1),)


def test_error_accumulation_with_line_numbers():
    """One parse pass reports every problem, tagged with its line."""
    text = """field rational
degree 11
point q0 = [0, 0, 1]
line r1 = x
sing q9 mult 4
sing q0 chain [4, 4] tangent r9
frobnicate the widget
point q0 = [1, 1, 1]
point bad = [1/0x, 2, 3]
"""
    with pytest.raises(SceneError) as ei:
        parse_scene(text)
    errs = dict(ei.value.errors)
    assert "undeclared point 'q9'" in errs[5]
    assert "undeclared line 'r9'" in errs[6]
    assert "unknown keyword 'frobnicate'" in errs[7]
    assert "duplicate point name 'q0'" in errs[8]
    assert 9 in errs
    msg = str(ei.value)
    assert "line 5:" in msg and "line 9:" in msg


def test_missing_field_and_degree():
    with pytest.raises(SceneError) as ei:
        parse_scene("point p = [0, 0, 1]\n")
    msgs = [m for _n, m in ei.value.errors]
    assert "missing field declaration" in msgs
    assert "missing degree declaration" in msgs


def test_tangent_must_pass_through_point():
    text = """field rational
degree 4
point p = [0, 0, 1]
line l = x + z
sing p chain [2, 2] tangent l
"""
    with pytest.raises(SceneError) as ei:
        parse_scene(text)
    assert any("does not pass through" in m for _n, m in ei.value.errors)


def test_parameter_needs_declaration():
    text = """field rational
degree 3
point p = [t, 0, 1]
sing p mult 1
"""
    with pytest.raises(SceneError) as ei:
        parse_scene(text)
    assert any("declares neither param" in m for _n, m in ei.value.errors)


def test_param_conflicts_with_number_field():
    text = """field nf t^2 - 2
param t
degree 3
point p = [0, 0, 1]
sing p mult 1
"""
    with pytest.raises(SceneError) as ei:
        parse_scene(text)
    assert any("cannot be combined" in m for _n, m in ei.value.errors)


def test_round_trip_all_packaged():
    for name in ("ex-z4.scene", "duval.scene", "conics-6pts.scene",
                 "ex-deg11.scene", "campedelli.scene"):
        sc = parse_scene(packaged(name))
        again = parse_scene(serialize_scene(sc))
        assert sc == again, name


def test_serialized_form_is_stable():
    sc = parse_scene(packaged("ex-z4.scene"))
    once = serialize_scene(sc)
    assert serialize_scene(parse_scene(once)) == once


def test_realize_rational():
    rs = parse_scene(packaged("ex-z4.scene")).realize()
    assert rs.F is QQ
    assert rs.degree == 12
    assert len(rs.items) == 5
    assert len(rs.branch_line_curves()) == 2
    assert rs.involution is not None


def test_realize_parametric():
    rs = parse_scene(packaged("ex-deg11.scene")).realize()
    assert isinstance(rs.F, FunctionField)
    q6 = rs.points["q6"]
    t = rs.F.gen()
    assert rs.F.eq(q6.coords[0], t)


def test_realize_number_field():
    text = """field nf t^2 - 2
degree 2
point p = [t, 0, 1]
point q = [0, t, 1]
sing p mult 1
sing q mult 1
"""
    sc = parse_scene(text)
    rs = sc.realize()
    assert isinstance(rs.F, NumberField)
    assert rs.F.degree == 2
    g = rs.F.gen()
    assert rs.F.eq(rs.points["p"].coords[0], g)


def test_scene_equality_and_no_hash():
    a = parse_scene(MINIMAL)
    b = parse_scene(MINIMAL)
    assert a == b
    with pytest.raises(TypeError):
        hash(a)
