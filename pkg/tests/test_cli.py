"""Tests for the ``ehresmann`` command line."""

import json
from pathlib import Path
from typing import Any

import pytest

from app.cli import main
from app.core.exceptions import ExitCode


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, Any]:
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def _write(tmp_path: Path, data: dict[str, Any], name: str = "ws.json") -> str:
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestValidate:
    def test_valid(self, capsys, workspace_file):
        code, body = _run(capsys, "validate", str(workspace_file))
        assert code == ExitCode.OK
        assert body["passed"] is True
        assert "monoid:F" in [check["name"] for check in body["checks"]]

    def test_broken_associativity(self, capsys, tmp_path, workspace_data):
        workspace_data["monoids"]["F"] = {"n": 3, "mul": [[0, 1, 2], [1, 2, 1], [2, 1, 1]]}
        code, body = _run(capsys, "validate", _write(tmp_path, workspace_data))
        assert code == ExitCode.INPUT_ERROR
        assert body["error"] == "input_error"
        assert "not associative" in body["detail"]
        assert body["witness"]

    def test_missing_monoid(self, capsys, tmp_path, workspace_data):
        workspace_data["actions"]["f1"]["monoid"] = "G"
        code, body = _run(capsys, "validate", _write(tmp_path, workspace_data))
        assert code == ExitCode.INPUT_ERROR
        assert "unresolved reference" in body["detail"]

    def test_missing_file(self, capsys, tmp_path):
        code, body = _run(capsys, "validate", str(tmp_path / "absent.json"))
        assert code == ExitCode.INPUT_ERROR
        assert body["witness"] == {"path": str(tmp_path / "absent.json")}


class TestLaws:
    def test_f1_passes(self, capsys, workspace_file):
        code, body = _run(
            capsys,
            "laws", "check", "--suite", "left-ehresmann", "--structure", "pl:f1",
            "--workspace", str(workspace_file),
        )  # fmt: skip
        assert code == ExitCode.OK
        assert body["bound"] == 4

    def test_ample_fails_with_witness(self, capsys, workspace_file):
        code, body = _run(
            capsys,
            "laws", "check", "--suite", "ample", "--structure", "pl:f1",
            "--workspace", str(workspace_file),
        )  # fmt: skip
        assert code == ExitCode.FAILURE
        (check,) = body["checks"]
        assert check["passed"] is False
        assert set(check["witness"]) >= {"x", "y", "lhs", "rhs"}

    def test_fixture_without_workspace(self, capsys):
        code, body = _run(
            capsys, "laws", "check", "--suite", "proper", "--structure", "fixture:free-subset"
        )
        assert code == ExitCode.FAILURE
        assert body["checks"][0]["name"] == "proper"

    def test_overrides(self, capsys, workspace_file):
        code, body = _run(
            capsys,
            "laws", "check", "--suite", "star", "--structure", "pl:f1",
            "--workspace", str(workspace_file), "--bound", "2",
        )  # fmt: skip
        assert code == ExitCode.OK
        assert body["bound"] == 2


class TestElements:
    def test_pl_mul(self, capsys, workspace_file):
        code, body = _run(
            capsys,
            "pl", "mul", "1", "0 ; (0,0)", "--workspace", str(workspace_file), "--action", "f1",
        )  # fmt: skip
        assert code == ExitCode.OK
        assert body["result"] == "1 ; (0,0)"

    def test_pl_reduce(self, capsys, workspace_file):
        code, body = _run(
            capsys, "pl", "reduce", "t1 x0 t1", "--workspace", str(workspace_file), "--action", "f1"
        )
        assert code == ExitCode.OK
        assert body["result"] == "1"

    def test_pl_rejects_bad_form(self, capsys, workspace_file):
        code, body = _run(
            capsys, "pl", "plus", "0 ; (1,0)", "--workspace", str(workspace_file), "--action", "f1"
        )
        assert code == ExitCode.INPUT_ERROR
        assert body["witness"]["reason"] == "identity of X inside the form"

    def test_ql_member(self, capsys, workspace_file):
        code, body = _run(
            capsys, "ql", "member", "1", "--workspace", str(workspace_file), "--ctx", "f1q"
        )
        assert code == ExitCode.OK
        assert body["result"] is True


class TestActions:
    def test_check_action(self, capsys, workspace_file):
        code, body = _run(
            capsys, "check-action", str(workspace_file), "--action", "f1p", "--strong"
        )
        assert code == ExitCode.OK
        assert [check["name"] for check in body["checks"]] == ["strong"]

    def test_globalize(self, capsys, workspace_file, tmp_path):
        out = tmp_path / "out" / "global.json"
        code, body = _run(
            capsys,
            "globalize", str(workspace_file), "--action", "f1p", "--verify", "--out", str(out),
        )  # fmt: skip
        assert code == ExitCode.OK
        assert body["space_size"] == 5
        assert body["checks"]
        assert json.loads(out.read_text(encoding="utf-8")) == body

    def test_globalize_without_checks(self, capsys, workspace_file):
        _, body = _run(capsys, "globalize", str(workspace_file), "--action", "f1p")
        assert body["checks"] == []


class TestFixturesAndReconstruct:
    def test_emit_subset_expansion(self, capsys):
        code, body = _run(capsys, "fixtures", "emit", "subset-expansion", "--group", "z2")
        assert code == ExitCode.OK
        assert body["n"] == 8

    def test_emit_fla(self, capsys):
        _, body = _run(capsys, "fixtures", "emit", "fla", "--k", "2", "--bound", "2")
        assert "({1,x,xx,xy},xx)" in body["elements"]

    def test_unknown_group(self, capsys):
        code, body = _run(capsys, "fixtures", "emit", "subset-expansion", "--group", "z9")
        assert code == ExitCode.INPUT_ERROR
        assert "z2" in body["witness"]["groups"]

    def test_reconstruct_fixture(self, capsys):
        code, body = _run(capsys, "reconstruct", "--structure", "fixture:f1", "--bound", "3")
        assert code == ExitCode.OK
        assert body["passed"] is True

    def test_induce_only(self, capsys, workspace_file):
        code, body = _run(
            capsys,
            "reconstruct", str(workspace_file), "--structure", "ql:f1q", "--induce-only",
        )  # fmt: skip
        assert code == ExitCode.OK
        assert body["t_size"] == 2


def test_pipeline(capsys, tmp_path, workspace_data):
    workspace_data["stages"] = [
        {"name": "load", "kind": "validate"},
        {"name": "f1-laws", "kind": "laws", "structure": "pl:f1", "bound": 3},
    ]
    code, body = _run(capsys, "pipeline", "run", _write(tmp_path, workspace_data, "p.json"))
    assert code == ExitCode.OK
    assert [stage["name"] for stage in body["stages"]] == ["load", "f1-laws"]
