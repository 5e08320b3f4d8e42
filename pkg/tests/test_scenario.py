import json
import os

import pytest

from agcodes.scenario import ScenarioError, load_scenario

HERE = os.path.dirname(__file__)
SCEN = os.path.join(HERE, "..", "scenarios")

BASE = {
    "field": {"p": 3, "m": 2, "modulus": "a^2+1"},
    "variety": {"kind": "ProjSpace", "r": 2},
    "divisors": [{"poly": "Y*(Y*Z-X^2)"}, {"poly": "Y*Z+X^2-2*Z^2"}],
    "points": [[1, 1, 1], ["a", 0, 1]],
    "G": [{"poly": "Y+Z", "mult": 2}],
    "theta": "X/(Y+Z)",
}


def _with(**kw):
    d = json.loads(json.dumps(BASE))
    d.update(kw)
    return d


def test_loads_from_dict_string_and_path():
    a = load_scenario(BASE)
    b = load_scenario(json.dumps(BASE))
    c = load_scenario(os.path.join(SCEN, "example_3_2.json"))
    assert a.digest() == b.digest()
    assert a.field is c.field
    assert a.G.degree() == (2,)
    assert [str(P) for P in a.points] == ["[1:1:1]", "[a:0:1]"]
    assert (a.E_max, a.A_max, a.seed) == (4, 8, 0)


def test_product_points_use_nested_coordinates():
    sc = load_scenario({"field": {"p": 5}, "variety": {"kind": "ProductP1", "r": 2},
                        "points": [[[1, 1], [0, 1]], [[1, 0], [3, 1]]]})
    assert [str(P) for P in sc.points] == ["([1:1], [0:1])", "([1:0], [3:1])"]


@pytest.mark.parametrize("doc, where", [
    (_with(colour="red"), None),
    (_with(field={"p": 3, "m": 2, "modulus": "a^2+1", "q": 9}), "field"),
    (_with(options={"seed": "x"}), "options/seed"),
    (_with(variety={"kind": "Grassmannian", "r": 2}), "variety/kind"),
    ({"variety": {"kind": "ProjSpace", "r": 2}}, None),
])
def test_schema_violations(doc, where):
    with pytest.raises(ScenarioError) as exc:
        load_scenario(doc)
    assert exc.value.path == where


@pytest.mark.parametrize("doc", [
    _with(field={"p": 3, "m": 2, "modulus": "a^2+a+2+1"}),
    _with(field={"p": 6}),
    _with(divisors=[{"poly": "X +* Y"}]),
    _with(points=[[1, 1]]),
    _with(points=[[0, 0, 0]]),
    _with(theta="W/Z"),
])
def test_semantic_errors(doc):
    with pytest.raises(ScenarioError):
        load_scenario(doc)


def test_bad_json_and_missing_file(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(ScenarioError, match="invalid JSON"):
        load_scenario(str(p))
    with pytest.raises(ScenarioError, match="cannot read"):
        load_scenario(str(tmp_path / "missing.json"))


def test_digest_ignores_key_order():
    a = load_scenario(BASE)
    b = load_scenario(dict(reversed(list(BASE.items()))))
    assert a.digest() == b.digest()
