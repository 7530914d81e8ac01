import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from frobtqft.cli import main

REPORT_SCHEMA = json.loads((Path(__file__).resolve().parent.parent / "docs" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    obj = json.loads(out)
    jsonschema.validate(obj, REPORT_SCHEMA)
    assert obj["exit_status"] == code
    return code, obj


@pytest.fixture
def example(tmp_path, capsys):
    def write(name):
        path = tmp_path / f"{name.replace(':', '-')}.json"
        assert run(capsys, "example", name, "--out", path)[0] == 0
        return path
    return write


def test_validate_clean(capsys, example):
    code, obj = report(capsys, "validate", example("s3-characters"))
    assert code == 0
    assert obj["summary"]["fail"] == 0


def test_validate_missing_file(capsys):
    code, out, err = run(capsys, "validate", "/nonexistent/spec.json")
    assert code == 2 and out == "" and "error" in err


def test_validate_bad_json(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dim": 1,\n "structure_constants": [}')
    code, _, err = run(capsys, "validate", path)
    assert code == 2 and "line 2" in err


def test_validate_degenerate(capsys, example):
    code, obj = report(capsys, "validate", example("degenerate-form"))
    assert code == 1
    assert [r["check"] for r in obj["results"] if r["status"] == "fail"] == ["nondegeneracy"]


def test_validate_tampered_has_witness(capsys, example):
    code, obj = report(capsys, "validate", example("tampered-coproduct"))
    assert code == 1
    bad = [r for r in obj["results"] if r["status"] == "fail"]
    assert bad[0]["witness"] == {"index": [1, 2, 3], "lhs": "1", "rhs": "0"}


def test_verify_tampered_fails(capsys, example):
    code, obj = report(capsys, "verify", example("tampered-coproduct"), "--suites", "frobenius")
    assert code == 1


def test_unknown_suite_is_usage_error(capsys, example):
    code, _, err = run(capsys, "verify", example("s3-characters"), "--suites", "bogus")
    assert code == 2 and "bogus" in err


def test_bad_arguments(capsys, example):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "eval", example("s3-characters"), "--type", "1,1")[0] == 2
    assert run(capsys, "eval", example("s3-characters"), "--type", "1,2,0", "--vector", "chi1")[0] == 2
    assert run(capsys, "example", "nonsense")[0] == 2
    assert run(capsys, "verify")[0] == 2


def test_derive_s3(capsys, example):
    code, obj = report(capsys, "derive", example("s3-characters"))
    assert code == 0
    derived = obj["derived"]
    assert derived["euler_element"] == ["3", "1", "1"]
    assert derived["euler_element_inverse"] == ["7/18", "-1/9", "-1/18"]
    assert derived["counit"] == ["1", "0", "0"]


def test_derive_group_algebra(capsys, example):
    code, obj = report(capsys, "derive", example("group-algebra:Z4"))
    assert code == 0
    assert obj["derived"]["euler_element"] == ["4", "0", "0", "0"]
    assert obj["derived"]["euler_element_inverse"] == ["1/4", "0", "0", "0"]


def test_eval_torus(capsys, example):
    code, obj = report(capsys, "eval", example("s3-characters"), "--type", "1,1,0", "--vector", "chi1")
    assert code == 0 and obj["value"]["value"] == "3"


def test_eval_coproduct(capsys, example):
    code, obj = report(capsys, "eval", example("s3-characters"), "--type", "0,1,2", "--vector", "1,0,0")
    assert obj["value"]["value"] == [[[1, 1], "1"], [[2, 2], "1"], [[3, 3], "1"]]


def test_eval_whole_map(capsys, example):
    code, obj = report(capsys, "eval", example("group-algebra:Z2"), "--type", "1,1,1")
    assert obj["value"]["value"] == [[[1, 1], "2"], [[2, 2], "2"]]


def test_verify_laurent(capsys):
    code, obj = report(capsys, "verify", "--laurent", "1", "--grid", "-3..3", "--m", "4")
    assert code == 0
    assert obj["summary"]["fail"] == 0 and obj["summary"]["pass"] > 0


def test_verify_laurent_spec_file(capsys, example):
    code, obj = report(capsys, "verify", example("laurent:-2"))
    assert code == 0


def test_verify_noncommutative_warns(capsys, example):
    code, obj = report(capsys, "verify", example("group-algebra:S3"), "--suites", "sewing,cohft")
    assert code == 0
    assert {r["status"] for r in obj["results"]} <= {"pass", "warn"}


def test_verify_s3_selected_suites(capsys, example):
    code, obj = report(capsys, "verify", example("s3-characters"),
                       "--suites", "frobenius,sewing,duality,ribbon", "--gmax", "1", "--edge-bound", "3")
    assert code == 0
    assert {r["suite"] for r in obj["results"]} >= {"frobenius", "ribbon"}


def test_reports_are_byte_identical(capsys, example, tmp_path):
    spec = example("s3-characters")
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        main(["verify", str(spec), "--suites", "frobenius,sewing", "--gmax", "1", "--seed", "3",
              "--out", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_text_format(capsys, example):
    code, out, _ = run(capsys, "validate", example("tampered-coproduct"), "--format", "text")
    assert code == 1
    assert out.splitlines()[-1].endswith("exit 1")


def test_console_entry_point(example):
    spec = example("s3-characters")
    proc = subprocess.run([sys.executable, "-m", "frobtqft", "validate", str(spec)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["exit_status"] == 0
