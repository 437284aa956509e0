import dataclasses
import json

import pytest

import app
import case_studies


def _write(tmp_path, doc, name="arr.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def _arrangement(rows, orders, **extra):
    doc = {
        "schema": 1,
        "field": "Q",
        "ambient_dim": len(rows[0]) if rows else 2,
        "hyperplanes": [
            {"id": f"H{i + 1}", "normal": [str(x) for x in r], "m": m}
            for i, (r, m) in enumerate(zip(rows, orders))
        ],
    }
    doc.update(extra)
    return doc


def _run(argv, capsys):
    code = app.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_singularities_command(tmp_path, capsys):
    path = _write(tmp_path, _arrangement([[1, 0], [0, 1]], [2, 2]))
    code, out = _run(["singularities", "--input", path], capsys)
    assert code == app.EXIT_OK
    report = json.loads(out)
    (row,) = [r for r in report["singularities"]["rows"] if r["codim"] == 2]
    assert row["flat"] == "H1&H2"
    assert row["exponent"] == "1/2"
    assert row["discrepancy"] == "-2/1"
    assert report["singularities"]["git_side"]["verdict"] == "non_lc"


def test_empty_arrangement_is_lc(tmp_path, capsys):
    path = _write(tmp_path, _arrangement([], []))
    code, out = _run(["singularities", "--input", path], capsys)
    assert code == app.EXIT_OK
    assert "lc everywhere" in json.loads(out)["singularities"]["git_side"]["note"]


def test_output_is_byte_identical(tmp_path, capsys):
    path = _write(tmp_path, _arrangement([[1, 0, 0], [0, 1, 0], [1, 1, 1]], [2, 3, "inf"]))
    first = _run(["arrangement", "--input", path], capsys)
    second = _run(["arrangement", "--input", path], capsys)
    assert first == second
    assert first[0] == app.EXIT_OK


def test_table_output(tmp_path, capsys):
    path = _write(tmp_path, _arrangement([[1, 0], [0, 1]], [2, 2]))
    code, out = _run(["flatness", "--input", path, "--table"], capsys)
    assert code == app.EXIT_OK
    assert out.startswith("schema: 1")


def test_output_file(tmp_path, capsys):
    path = _write(tmp_path, _arrangement([[1, 0], [0, 1]], [2, 2]))
    target = tmp_path / "out.json"
    code, out = _run(["arrangement", "--input", path, "--output", str(target)], capsys)
    assert code == app.EXIT_OK
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["kind"] == "arrangement"


def test_input_errors_exit_2(tmp_path, capsys):
    bad = _write(tmp_path, _arrangement([[0, 0]], [2]))
    assert app.main(["singularities", "--input", bad]) == app.EXIT_INPUT
    assert "hyperplanes[0].normal: all coefficients are zero" in capsys.readouterr().err
    assert _run(["singularities", "--input", str(tmp_path / "missing.json")], capsys)[0] == app.EXIT_INPUT
    assert _run(["singularities"], capsys)[0] == app.EXIT_INPUT
    assert _run(["cone", "--beta", "0.5"], capsys)[0] == app.EXIT_INPUT
    assert _run(["cone", "--beta", "3/2"], capsys)[0] == app.EXIT_INPUT


def test_malformed_tree_exits_2(tmp_path, capsys):
    for i, edges in enumerate(([[1, "2"]], [5], [[1, 2, 3]])):
        path = _write(tmp_path, {"schema": 1, "ring": "gaussian", "tree": {"n": 3, "edges": edges}}, name=f"tree{i}.json")
        assert app.main(["lattice", "--input", path]) == app.EXIT_INPUT
        assert "edges[0]" in capsys.readouterr().err
    path = _write(tmp_path, {"schema": 1, "ring": "gaussian", "tree": {"n": "3", "edges": []}}, name="count.json")
    assert app.main(["lattice", "--input", path]) == app.EXIT_INPUT
    assert "node count" in capsys.readouterr().err


def test_lattice_command(tmp_path, capsys):
    path = _write(tmp_path, {"schema": 1, "ring": "eisenstein", "tree": {"n": 10, "edges": [[i, i + 1] for i in range(1, 10)]}})
    code, out = _run(["lattice", "--input", path, "--root-bound", "1"], capsys)
    assert code == app.EXIT_OK
    report = json.loads(out)
    assert report["signature"]["profile"] == [1, 9]
    assert report["roots"]["count"] == 60


def test_cone_command(capsys):
    code, out = _run(["cone", "--beta", "1/3", "--samples", "50"], capsys)
    assert code == app.EXIT_OK
    report = json.loads(out)
    assert report["passed"] is True
    assert report["samples"] == 50


def test_case_study_command(capsys):
    code, out = _run(["case-study", "quartic"], capsys)
    assert code == app.EXIT_OK
    report = json.loads(out)
    assert report["verified"] is True
    assert report["lattice"]["signature"]["profile"] == [1, 6]


def test_case_study_mismatch_exits_3(capsys, monkeypatch):
    study = case_studies.CASE_STUDY_REGISTRY["quartic"]
    wrong = dataclasses.replace(study, expected=dict(study.expected, rank=8))
    monkeypatch.setitem(case_studies.CASE_STUDY_REGISTRY, "quartic", wrong)
    code, out = _run(["case-study", "quartic"], capsys)
    assert code == app.EXIT_INTERNAL
    assert json.loads(out)["verified"] is False


def test_invariant_violation_exits_3(capsys, monkeypatch):
    def boom(name, root_bound=None):
        raise RuntimeError("kernel vector not annihilated")

    monkeypatch.setattr(app, "run_case_study", boom)
    assert _run(["case-study", "res"], capsys)[0] == app.EXIT_INTERNAL


def test_unknown_subcommand_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        app.main(["volume"])
    assert exc.value.code == 2
