import json
from fractions import Fraction as Q

import pytest

from avleibniz import LeibnizAlgebra, fixtures as fx
from avleibniz.fixtures import ParseError


def write(tmp_path, doc, name="f.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


def test_ex22_has_three_constants():
    A = fx.parse_fixture("ex2_2")
    assert isinstance(A, LeibnizAlgebra)
    assert A.entries() == [(0, 0, 1, 1), (1, 0, 2, 1), (2, 0, 3, 1)]


def test_rational_strings_are_exact(tmp_path):
    p = write(tmp_path, {"dimension": 1, "brackets": [{"i": 1, "j": 1, "k": 1, "c": "1/3"}]})
    A = fx.load_algebra(p)
    assert A.c[0][0][0] == Q(1, 3) and type(A.c[0][0][0]) is Q


@pytest.mark.parametrize("doc, fragment", [
    ({"dimension": 4, "brackets": [{"i": 5, "j": 1, "k": 1, "c": 1}]}, "brackets[0].i: 5 outside 1..4"),
    ({"dimension": 7, "brackets": []}, "dimension: 7 outside 1..6"),
    ({"dimension": 1, "brackets": [], "extra": 1}, "unknown key(s) extra"),
    ({"dimension": 1, "brackets": [{"i": 1, "j": 1, "k": 1, "c": 0.5}]}, "not an exact rational"),
    ({"dimension": 1, "brackets": [{"i": 1, "j": 1, "k": 1}]}, "missing key(s) c"),
    ({"matrix": [[1, 2]]}, "matrices are square"),
    ({"nothing": 1}, "unrecognised fixture"),
])
def test_parse_errors(tmp_path, doc, fragment):
    with pytest.raises(ParseError) as exc:
        fx.parse_fixture(write(tmp_path, doc))
    assert fragment in str(exc.value)


def test_json_syntax_error_has_position(tmp_path):
    with pytest.raises(ParseError, match="line 2, column"):
        fx.parse_fixture(write(tmp_path, '{"dimension": 1,\n "brackets": [,]}'))


def test_missing_file():
    with pytest.raises(ParseError, match="no such file"):
        fx.parse_fixture("definitely_not_here.json")


def test_operator_dimension_checked():
    with pytest.raises(ParseError, match="expected 2 rows"):
        fx.load_operator("good_theta", 2)


@pytest.mark.parametrize("name", fx.bundled_fixtures())
def test_round_trip(name):
    path = fx.resolve(name)
    text = path.read_text()
    kind = fx.fixture_kind(json.loads(text))
    if kind == "algebra":
        obj = fx.load_algebra(path)
        out = fx.algebra_to_json(obj)
    elif kind == "operator":
        obj = fx.load_operator(path)
        out = fx.operator_to_json(obj)
    else:
        A = fx.load_algebra({"lie2": "lie2", "abel": "abelian1"}[name[:4]])
        if kind == "representation":
            out = fx.representation_to_json(fx.load_representation(path, A))
        elif kind == "isomorphism":
            out = fx.isomorphism_to_json(fx.load_isomorphism(path, A.dim))
        else:
            base = "zero_op" if A.dim == 1 else "lie2_theta_e2"
            out = fx.deformation_to_json(fx.load_deformation(path, A, fx.load_operator(base)))
    assert fx.dumps(out) == text


def test_list_fixtures():
    kinds = {f.name: f.kind for f in fx.list_fixtures()}
    assert kinds["ex2_2"] == "algebra"
    assert kinds["ex2_4_theta"] == "operator"
    assert kinds["lie2_selfrep"] == "representation"
    assert kinds["abelian1_def"] == "deformation"
    assert kinds["lie2_psi"] == "isomorphism"
