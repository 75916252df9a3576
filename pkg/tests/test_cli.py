"""End-to-end tests for the command line interface.

All tests call cli.main directly with an argv list and inspect the exit
code plus captured stdout/stderr.
"""

import json

import pytest

from tensoradj import catalog as cat
from tensoradj.cli import main
from tensoradj.module_cat import regular_module


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_catalog_list(capsys):
    code, out, _err = run(capsys, "catalog", "list")
    assert code == 0
    assert "vecz2" in out and "fib/regular" in out and "cosets-a3" in out


def test_catalog_list_json(capsys):
    code, out, _err = run(capsys, "--json", "catalog", "list")
    assert code == 0
    doc = json.loads(out)
    ids = [(e["kind"], e["id"]) for e in doc["entries"]]
    assert ("category", "fib") in ids
    assert ("module", "vecs3/cosets-a3") in ids
    assert len(ids) == 18


def test_catalog_export_then_validate(capsys, tmp_path):
    cpath = tmp_path / "c.json"
    mpath = tmp_path / "m.json"
    code, _out, _err = run(capsys, "catalog", "export", "vecz4w", str(cpath))
    assert code == 0
    code, _out, _err = run(capsys, "catalog", "export", "vecz4w/regular",
                           str(mpath))
    assert code == 0
    code, out, _err = run(capsys, "validate", str(cpath), str(mpath))
    assert code == 0
    assert out.count("PASS") == 2


def test_catalog_export_unknown_id(capsys, tmp_path):
    code, _out, err = run(capsys, "catalog", "export", "nosuch",
                          str(tmp_path / "x.json"))
    assert code == 2
    assert "input error" in err


def test_adjoint_text_report(capsys):
    code, out, _err = run(capsys, "adjoint", "--category", "vecz3")
    assert code == 0
    assert "carrier multiplicities: [3, 0, 0]" in out
    assert "PASS end-route algebra laws" in out


def test_adjoint_full_json(capsys):
    code, out, _err = run(capsys, "--json", "adjoint", "--category", "vecz2",
                          "--two-cat", "--compare", "--cf")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["failed"] == 0
    assert doc["carrier"] == [2, 0]
    assert doc["class_function_dim"] == 2
    assert len(doc["halfbraiding"]) == 2
    names = {c["name"] for c in doc["checks"]}
    assert "comparison carrier-iso" in names
    assert "routes agree on the carrier" in names


def test_adjoint_unknown_module(capsys):
    code, _out, err = run(capsys, "adjoint", "--category", "vecz2",
                          "--module", "nosuch")
    assert code == 2
    assert "input error" in err


def test_validate_math_violation(capsys, tmp_path):
    # negating a single fourth root of unity in the associator table breaks
    # the pentagon; negating vecz2w's unique sign block would merely produce
    # the trivial associator, which is still consistent
    doc = cat.category_to_json(cat.get_category("vecz4w"))
    entry = doc["F"][0]["matrix"][0][0]
    entry["coords"] = ["-" + c if not c.startswith("-") else c[1:]
                       for c in entry["coords"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _err = run(capsys, "validate", str(path))
    assert code == 1
    assert "FAIL" in out and "pentagon" in out


def test_validate_malformed_inputs(capsys, tmp_path):
    noise = tmp_path / "noise.json"
    noise.write_text("this is not json")
    code, _out, err = run(capsys, "validate", str(noise))
    assert code == 2
    assert "malformed JSON" in err

    junk = tmp_path / "junk.json"
    junk.write_text('{"format": "nope"}')
    code, _out, err = run(capsys, "validate", str(junk))
    assert code == 2
    assert "unknown format" in err

    code, _out, err = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 2


def test_validate_functor_file(capsys, tmp_path):
    M = regular_module(cat.get_category("vecz2"))
    eq = cat.relabel_equivalence(M, [1, 0])
    doc = cat.functor_to_json(eq.X, "vecz2/regular", "vecz2/regular")
    path = tmp_path / "swap.json"
    path.write_text(json.dumps(doc))
    code, out, _err = run(capsys, "validate", str(path))
    assert code == 0
    assert "PASS functor" in out


def test_validate_module_against_local_category(capsys, tmp_path):
    C = cat.get_category("vecz3")
    cdoc = cat.category_to_json(C)
    mdoc = cat.module_to_json(regular_module(C), "mycat")
    (tmp_path / "mycat.json").write_text(json.dumps(cdoc))
    (tmp_path / "mymod.json").write_text(json.dumps(mdoc))
    code, out, _err = run(capsys, "validate", str(tmp_path / "mycat.json"),
                          str(tmp_path / "mymod.json"))
    assert code == 0
    assert out.count("PASS") == 2


def test_verify_small_suites(capsys):
    code, out, _err = run(capsys, "verify", "lemma-5.4")
    assert code == 0
    assert "PASS lemma-5.4 vecz2 relabeled" in out
    assert "PASS lemma-5.4 vecz2 gauge-transformed" in out

    code, out, _err = run(capsys, "verify", "prop-1.1")
    assert code == 0
    assert out.count("PASS") == 4


def test_verify_perturb_negative_control(capsys):
    code, out, _err = run(capsys, "verify", "theorem-5.6", "--perturb")
    assert code == 0
    assert "[perturbed]" in out
    assert "FAIL" not in out


def test_verify_perturb_restricted(capsys):
    code, _out, err = run(capsys, "verify", "lemma-4.4", "--perturb")
    assert code == 2
    assert "theorem-5.6" in err


def test_json_reports_are_byte_stable(capsys):
    code1, out1, _ = run(capsys, "--json", "verify", "lemma-5.4")
    code2, out2, _ = run(capsys, "--json", "verify", "lemma-5.4")
    assert code1 == code2 == 0
    assert out1 == out2


def test_timing_goes_to_stderr_only(capsys):
    _code, plain_out, plain_err = run(capsys, "catalog", "list")
    _code, timed_out, timed_err = run(capsys, "--timing", "catalog", "list")
    assert timed_out == plain_out
    assert "elapsed" in timed_err and "elapsed" not in plain_err


def test_missing_subcommand_exits_two():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
