import csv
import io
import json
import math

import jsonschema
import pytest

from khinlab import haagerup_constant, schema_text
from khinlab.cli import CSV_COLUMNS, EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, EXIT_VIOLATED, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv, schema=None):
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    if schema:
        jsonschema.validate(doc, json.loads(schema_text(schema)))
    return code, doc


def write_tensor(path, shape, entries):
    path.write_text(json.dumps({"shape": shape, "entries": entries}))
    return path


def test_schemas_are_valid():
    for name in ("tensor", "constants", "moment", "witness", "verify", "manifest"):
        jsonschema.Draft202012Validator.check_schema(json.loads(schema_text(name)))


def test_constants_examples(capsys):
    code, doc = run_json(capsys, "constants", "--p", 1, schema="constants")
    assert code == EXIT_OK
    assert doc["A"]["value"] == pytest.approx(math.sqrt(2), rel=1e-15)
    assert doc["A"]["branch"] == "DYADIC"
    assert 1.84 <= doc["p0"] <= 1.85
    _, doc = run_json(capsys, "constants", "--p", 2, schema="constants")
    assert doc["A"] == {"value": 1.0, "branch": "FLAT"}


def test_constants_mixed_and_multiple(capsys):
    _, doc = run_json(capsys, "constants", "--p", 3, "--M", 3, "--r", 1, "--m", 2, schema="constants")
    # (A_{3/2})^2 = (2^{1/6})^2
    assert doc["C"]["value"] == pytest.approx(2 ** (1 / 3), rel=1e-15)
    assert doc["K"]["value"] == pytest.approx(2.0, rel=1e-15)


def test_constants_infinity(capsys):
    _, doc = run_json(capsys, "constants", "--p", "inf", "--M", 2, schema="constants")
    assert doc["p"] == "inf"
    assert doc["C"]["value"] == pytest.approx(math.sqrt(2), rel=1e-15)


def test_constants_domain_errors(capsys):
    # rejected while parsing, with the same exit code
    with pytest.raises(SystemExit) as exc:
        main(["constants", "--p", "-1"])
    assert exc.value.code == EXIT_DOMAIN
    assert "--p" in capsys.readouterr().err
    code, _, _ = run(capsys, "constants", "--p", 1.5, "--M", 3)
    assert code == EXIT_DOMAIN


def test_moment_examples(capsys, tmp_path):
    f = write_tensor(tmp_path / "ones.json", [2, 2], [1, 1, 1, 1])
    code, doc = run_json(capsys, "moment", f, "--r", 1, schema="moment")
    assert code == EXIT_OK
    assert doc["value"] == 1.0
    assert doc["configurations_enumerated"] == 16
    assert doc["method"] == "FULL_ENUM"
    assert len(doc["input_sha256"]) == 64
    _, doc = run_json(capsys, "moment", f, "--r", 0.5)
    assert doc["value"] == 0.25


def test_moment_r2_matches_l2(capsys, tmp_path):
    f = write_tensor(tmp_path / "t.json", [2, 3], [0.5, -1, 2, 3, 0.25, -4])
    _, doc = run_json(capsys, "moment", f, "--r", 2)
    assert doc["value"] == pytest.approx(doc["l2"], rel=1e-12)


@pytest.mark.parametrize("content", ["not json", '{"shape": [2], "entries": [1]}',
                                     '{"shape": [0], "entries": []}', '{"entries": [1]}'])
def test_moment_parse_errors(capsys, tmp_path, content):
    f = tmp_path / "bad.json"
    f.write_text(content)
    code, _, err = run(capsys, "moment", f, "--r", 1)
    assert code == EXIT_PARSE
    assert "cannot parse" in err


def test_moment_missing_file(capsys, tmp_path):
    assert run(capsys, "moment", tmp_path / "nope.json", "--r", 1)[0] == EXIT_PARSE


def test_moment_budget_and_domain(capsys, tmp_path):
    f = write_tensor(tmp_path / "big.json", [5, 5], [1.0] * 25)
    assert run(capsys, "moment", f, "--r", 1, "--bit-budget", 8)[0] == EXIT_BUDGET
    assert run(capsys, "moment", f, "--r", 0)[0] == EXIT_DOMAIN


def test_witness_block(capsys):
    code, doc = run_json(capsys, "witness", "--m", 2, "--r", 1, "--N", 2, "--kind", "block", schema="witness")
    assert code == EXIT_OK
    assert len(doc["rows"]) == 1
    assert doc["rows"][0]["ratio"] == pytest.approx(2.0, rel=1e-15)
    assert doc["kind"] == "BLOCK_ONES"


def test_witness_uniform_csv(capsys):
    Ns = [2**k for k in range(4, 15, 2)]
    code, out, _ = run(capsys, "witness", "--m", 1, "--r", 1.9, "--N", *Ns, "--kind", "uniform", "--format", "csv")
    assert code == EXIT_OK
    assert "\r\n" in out
    rows = list(csv.DictReader(io.StringIO(out, newline="")))
    assert list(rows[0]) == CSV_COLUMNS
    assert [int(r["N"]) for r in rows] == Ns
    assert abs(float(rows[-1]["ratio"]) - haagerup_constant(1.9).value) < 1e-2


def test_witness_empty_n_list(capsys):
    code, out, _ = run(capsys, "witness", "--m", 1, "--r", 1, "--format", "csv")
    assert code == EXIT_OK
    assert out == ",".join(CSV_COLUMNS) + "\r\n"
    code, doc = run_json(capsys, "witness", "--m", 1, "--r", 1.9, schema="witness")
    assert doc["rows"] == [] and doc["kind"] == "UNIFORM"


def test_witness_domain(capsys):
    assert run(capsys, "witness", "--m", 1, "--r", 2.5, "--N", 4)[0] == EXIT_DOMAIN


def test_verify_littlewood(capsys, tmp_path):
    f = write_tensor(tmp_path / "lw.json", [2, 2], [1, 1, 1, -1])
    code, doc = run_json(capsys, "verify", "--form-file", f, "--p", "inf", schema="verify")
    assert code == EXIT_OK
    assert doc["ratio"] == pytest.approx(math.sqrt(2), rel=1e-15)
    assert doc["holds"] is True
    assert doc["p"] == "inf"


def test_verify_zero_form(capsys, tmp_path):
    f = write_tensor(tmp_path / "z.json", [2, 2], [0, 0, 0, 0])
    code, doc = run_json(capsys, "verify", "--form-file", f, "--p", 3, "--which", "D", schema="verify")
    assert code == EXIT_OK
    assert doc["ratio"] is None and doc["holds"] is True


def test_verify_random_is_seeded(capsys, tmp_path):
    code, a = run_json(capsys, "verify", "--random", 3, 3, 3, "--p", 2.5, "--seed", 7, schema="verify")
    _, b = run_json(capsys, "verify", "--random", 3, 3, 3, "--p", 2.5, "--seed", 7)
    _, c = run_json(capsys, "verify", "--random", 3, 3, 3, "--p", 2.5, "--seed", 8)
    assert code == EXIT_OK and a["holds"]
    assert a == b
    assert a["lhs"] != c["lhs"]
    assert a["seed"] == 7


def test_verify_equivalence(capsys, tmp_path):
    f = write_tensor(tmp_path / "y.json", [2], [1, 1])
    code, doc = run_json(capsys, "verify", "--form-file", f, "--p", 1, "--which", "equivalence", schema="verify")
    assert code == EXIT_OK
    assert doc["theorem"] == "MIXED_D"
    assert doc["ratio"] == pytest.approx(math.sqrt(2), rel=1e-14)


def test_verify_violation_exit_code(capsys, tmp_path, monkeypatch):
    from khinlab import cli

    monkeypatch.setattr(cli, "mixed_littlewood_constant", lambda M, p: 0.5, raising=False)
    monkeypatch.setattr("khinlab.forms.mixed_littlewood_constant", lambda M, p: 0.5)
    f = write_tensor(tmp_path / "lw.json", [2, 2], [1, 1, 1, -1])
    code, doc = run_json(capsys, "verify", "--form-file", f, "--p", "inf")
    assert code == EXIT_VIOLATED
    assert doc["holds"] is False


def test_verify_needs_input(capsys):
    assert run(capsys, "verify", "--p", 3)[0] == EXIT_DOMAIN
    assert run(capsys, "verify", "--random", 2, 2, "--p", 1.5)[0] == EXIT_DOMAIN


def test_out_dir_manifest(capsys, tmp_path):
    out = tmp_path / "run"
    code, doc = run_json(capsys, "witness", "--m", 1, "--r", 1, "--N", 2, 3, "--out", out)
    assert code == EXIT_OK
    manifest = json.loads((out / "manifest.json").read_text())
    jsonschema.validate(manifest, json.loads(schema_text("manifest")))
    assert manifest["command"] == "witness"
    assert manifest["bit_budget"] == 26
    assert sorted(manifest["outputs"]) == sorted([str(out / "witness.json"), str(out / "witness.csv")])
    assert json.loads((out / "witness.json").read_text()) == doc
    assert (out / "witness.csv").read_bytes().startswith(b"N,l2,moment,ratio,bound\r\n")


def test_out_dir_random_form_saved(capsys, tmp_path):
    out = tmp_path / "v"
    run(capsys, "verify", "--random", 2, 3, "--p", 4, "--out", out)
    form = json.loads((out / "form.json").read_text())
    jsonschema.validate(form, json.loads(schema_text("tensor")))
    assert form["shape"] == [2, 3]
    # the saved form reproduces the report
    code, doc = run_json(capsys, "verify", "--form-file", out / "form.json", "--p", 4)
    saved = json.loads((out / "verify.json").read_text())
    assert doc["lhs"] == saved["lhs"] and doc["norm"] == saved["norm"]


def test_floats_round_trip(capsys):
    _, out, _ = run(capsys, "constants", "--p", 1.9)
    doc = json.loads(out)
    assert doc["A"]["value"] == haagerup_constant(1.9).value


def test_threads_flag_and_env(capsys, tmp_path, monkeypatch):
    f = write_tensor(tmp_path / "t.json", [4, 4, 4], [float(i % 7) - 3 for i in range(64)])
    _, a = run_json(capsys, "moment", f, "--r", 1.3, "--threads", 1)
    monkeypatch.setenv("KHINLAB_THREADS", "3")
    _, b = run_json(capsys, "moment", f, "--r", 1.3)
    assert a == b
    with pytest.raises(SystemExit):
        main(["moment", str(f), "--r", "1", "--threads", "0"])
