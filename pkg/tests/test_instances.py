import json

import pytest
from zoo import NAMES

from bicotwist.instances import (
    InstanceError,
    build,
    builtin,
    load_instance,
    parse_instance,
    resolve_instance,
    serialize,
    spec_from_json,
    validate,
)


def _tampered_z4() -> dict:
    table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    table[1][1], table[1][3], table[3][1] = 3, 2, 2
    return {
        "name": "tampered",
        "N": 4,
        "algebra": {"kind": "group_algebra", "table": table},
        "yd": {"dim": 2, "degrees": [1, 3], "action": "trivial"},
    }


@pytest.mark.parametrize("name", NAMES)
def test_builtin_round_trip(name):
    spec = builtin(name)
    text = serialize(spec)
    again = parse_instance(text)
    assert again == spec
    assert serialize(again) == text


@pytest.mark.parametrize("name", NAMES)
def test_builtins_validate(name):
    rep = validate(builtin(name))
    assert rep.passed, rep.failures


def test_load_from_file(tmp_path):
    path = tmp_path / "z4.json"
    path.write_text(serialize(builtin("FIX-Z4")))
    assert load_instance(str(path)) == builtin("FIX-Z4")
    assert resolve_instance(str(path)) == builtin("FIX-Z4")


def test_missing_file_is_an_instance_error(tmp_path):
    with pytest.raises(InstanceError, match="cannot read"):
        resolve_instance(str(tmp_path / "nope.json"))


def test_degree_count_mismatch_names_the_field():
    doc = builtin("FIX-Z4").to_json()
    doc["yd"]["degrees"] = ["u"]
    with pytest.raises(InstanceError, match=r"yd\.degrees length 1 != yd\.dim 2"):
        build(spec_from_json(doc))


def test_tampered_table_reports_associativity_witness():
    rep = validate(spec_from_json(_tampered_z4()))
    assert not rep["algebra"].ok
    assert rep["algebra"].detail.startswith("associativity fails at (")
    assert rep["algebra"].witness == [1, 1, 2]


def test_json_syntax_error_has_line_and_column():
    with pytest.raises(InstanceError, match=r"line 2 column \d+"):
        parse_instance('{\n  "name": ,\n}')


def test_yd_module_alias():
    doc = builtin("FIX-Z4").to_json()
    doc["yd_module"] = doc.pop("yd")
    assert spec_from_json(doc) == builtin("FIX-Z4")


def test_yd_and_alias_together_are_rejected():
    doc = builtin("FIX-Z4").to_json()
    doc["yd_module"] = doc["yd"]
    with pytest.raises(InstanceError):
        spec_from_json(doc)


def test_unknown_key_is_rejected():
    doc = builtin("FIX-Z4").to_json()
    doc["colour"] = "blue"
    with pytest.raises(InstanceError):
        spec_from_json(doc)


def test_unknown_cocycle_type_names_the_field():
    doc = builtin("FIX-Z4").to_json()
    doc["cocycle"] = {"type": "mystery"}
    with pytest.raises(InstanceError, match="cocycle.type"):
        spec_from_json(doc)


def test_scalars_are_normalized():
    doc = builtin("FIX-Z4").to_json()
    doc["metric"] = [[0, 1], [1, 0]]
    spec = spec_from_json(doc)
    assert json.loads(serialize(spec))["metric"] == builtin("FIX-Z4").to_json()["metric"]
