import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from frobtqft import derive
from frobtqft.builders import group_algebra, random_semisimple_family, s3_character_ring
from frobtqft.io import (SpecError, algebra_from_json, algebra_to_json, dumps, laurent_spec,
                         laurent_weights, loads, package_to_json, read_spec)
from frobtqft.ribbon import enumerate_colored_graphs
from frobtqft.scalars import to_scalar

DOCS = Path(__file__).resolve().parent.parent / "docs"


def schema(name):
    return json.loads((DOCS / f"{name}.schema.json").read_text())


def data_file(name):
    return resources.files("frobtqft").joinpath("data", f"{name}.json")


# scalars -----------------------------------------------------------------------

def test_scalar_strings():
    assert to_scalar(" -6/4 ") == Fraction(-3, 2)
    assert to_scalar("+7") == 7
    for bad in ["1.5", "1/0", "1e3", "", "x"]:
        with pytest.raises(ValueError):
            to_scalar(bad)
    with pytest.raises(TypeError):
        to_scalar(0.5)
    with pytest.raises(TypeError):
        to_scalar(True)


# algebra specs ---------------------------------------------------------------------

@pytest.mark.parametrize("spec", [s3_character_ring(), group_algebra("Q8"), group_algebra("Z5")]
                         + random_semisimple_family(3, seed=2), ids=lambda s: s.name)
def test_algebra_roundtrip(spec):
    obj = json.loads(dumps(algebra_to_json(spec)))
    jsonschema.validate(obj, schema("algebra"))
    assert algebra_from_json(obj) == spec


def test_data_files_match_schema():
    for name in ("s3-characters", "degenerate-form", "tampered-coproduct"):
        jsonschema.validate(loads(data_file(name).read_text("utf-8")), schema("algebra"))


def test_s3_data_file_is_builder():
    obj = loads(data_file("s3-characters").read_text("utf-8"))
    assert algebra_from_json(obj).product == s3_character_ring().product


def test_minimal_spec():
    spec = algebra_from_json({"dim": 1, "structure_constants": [[[1, 1, 1], 1]], "counit": ["1"]})
    assert spec.basis == ("e1",)
    assert derive(spec).form == ((1,),)


def test_dense_and_sparse_forms_agree():
    base = {"dim": 2, "structure_constants": [[[1, 1, 1], 1], [[1, 2, 2], 1], [[2, 1, 2], 1], [[2, 2, 1], 1]],
            "unit": ["1", "0"]}
    dense = algebra_from_json(dict(base, form=[["1/2", 0], [0, "1/2"]]))
    sparse = algebra_from_json(dict(base, form=[[[1, 1], "1/2"], [[2, 2], "1/2"]]))
    assert dense == sparse


def test_sparse_vector():
    spec = algebra_from_json({"dim": 2, "structure_constants": [], "unit": [[[2], "3"]]})
    assert spec.unit == (0, 3)


@pytest.mark.parametrize("obj, fragment", [
    ([], "JSON object"),
    ({"dim": 2}, "structure_constants"),
    ({"dim": 0, "structure_constants": []}, "dim"),
    ({"dim": 2, "basis": ["a"], "structure_constants": []}, "basis"),
    ({"dim": 2, "structure_constants": [[[1, 1, 3], 1]]}, "out of range"),
    ({"dim": 2, "structure_constants": [[[1, 1], 1]]}, "3 integers"),
    ({"dim": 2, "structure_constants": [[[1, 1, 1], 1], [[1, 1, 1], 2]]}, "duplicate"),
    ({"dim": 2, "structure_constants": [[[1, 1, 1], 0.5]]}, "structure_constants"),
    ({"dim": 2, "structure_constants": [[1, 1, 1]]}, "pair"),
    ({"dim": 2, "structure_constants": [], "unit": [1]}, "unit"),
    ({"dim": 2, "structure_constants": [], "mode": "weird"}, "mode"),
    ({"kind": "laurent", "dim": 1, "structure_constants": []}, "kind"),
])
def test_malformed_specs(obj, fragment):
    with pytest.raises(SpecError) as err:
        algebra_from_json(obj)
    assert fragment in str(err.value)


def test_syntax_error_position():
    with pytest.raises(SpecError) as err:
        loads('{\n  "dim": 2,\n  "basis": [1, 2,]\n}')
    assert (err.value.line, err.value.column) == (3, 18)
    assert "line 3" in str(err.value)


def test_read_spec(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(dumps(algebra_to_json(s3_character_ring())))
    kind, spec = read_spec(path)
    assert kind == "algebra" and spec.dim == 3
    path.write_text(dumps(laurent_spec({1: 1, -2: "1/2"})))
    assert read_spec(path) == ("laurent", {1: 1, -2: Fraction(1, 2)})


# laurent and graph specs -----------------------------------------------------------

def test_laurent_spec_shape():
    obj = laurent_spec({1: 1})
    assert obj == {"format": "frobtqft-laurent/1", "kind": "laurent", "name": "laurent:1",
                   "coproduct": {"1": "1"}}
    jsonschema.validate(obj, schema("laurent"))


def test_laurent_errors():
    with pytest.raises(SpecError):
        laurent_weights({"kind": "algebra"})
    with pytest.raises(SpecError):
        laurent_weights({"kind": "laurent", "coproduct": {}})
    with pytest.raises(SpecError):
        laurent_weights({"kind": "laurent", "coproduct": {"one": 1}})


def test_graphs_match_schema():
    for g in enumerate_colored_graphs(3):
        jsonschema.validate(g.to_json(), schema("graph"))


# output -------------------------------------------------------------------------------

def test_package_json(s3):
    obj = package_to_json(s3, (Fraction(7, 18), Fraction(-1, 9), Fraction(-1, 18)))
    assert obj["euler_element"] == ["3", "1", "1"]
    assert obj["euler_element_inverse"] == ["7/18", "-1/9", "-1/18"]
    assert obj["form_inverse"] == [[[1, 1], "1"], [[2, 2], "1"], [[3, 3], "1"]]


def test_dumps_is_canonical():
    a = dumps({"b": [1, 2], "a": {"y": 1, "x": [[[1, 2], "1/2"]]}})
    b = dumps({"a": {"x": [[[1, 2], "1/2"]], "y": 1}, "b": [1, 2]})
    assert a == b
    assert json.loads(a) == {"a": {"x": [[[1, 2], "1/2"]], "y": 1}, "b": [1, 2]}
    assert a.endswith("\n")
