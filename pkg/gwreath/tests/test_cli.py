from __future__ import annotations

import json

import pytest

from gwp import cli
from gwp.errors import BudgetExhausted
from gwp.instance import CORPUS_DIR


def spec_path(name: str) -> str:
    return str(CORPUS_DIR / f"{name}.gwp")


def test_inspect_json(capsys):
    code = cli.main(["inspect", "--spec", spec_path("pyramid"), "--format", "json"])
    assert code == cli.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["shape"] == "pyramid"
    assert payload["theoretical_order"] == 32
    assert payload["witness"]["k"] == "k"
    assert payload["covers"] == [["i", "k"], ["j", "k"]]


def test_inspect_text_reports_transitivity(capsys):
    assert cli.main(["inspect", "--spec", spec_path("intransitive")]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "transitive: False" in out
    assert "theoretical order: 8" in out


def test_decompose_text(capsys):
    assert cli.main(["decompose", "--spec", spec_path("triangle")]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "note: triangle:" in out
    assert "FAIL " not in out


def test_certify(capsys):
    code = cli.main(["certify", "--spec", spec_path("chain2"), "--seed", "3", "--format", "json"])
    assert code == cli.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "Certified"
    assert payload["seed"] == 3
    assert len(payload["witness_generators"]) == 2


def test_certify_single_index_is_an_input_error(tmp_path, capsys):
    spec = tmp_path / "single.gwp"
    spec.write_text("elements: a\ndomain: a 3\n", encoding="utf-8")
    assert cli.main(["certify", "--spec", str(spec)]) == cli.EXIT_INPUT_ERROR
    assert "|I| >= 2" in capsys.readouterr().err


@pytest.mark.parametrize(
    "text",
    ["elements: a b\ncover: a < c\n", "elements: a\ndomain: a many\n", "elements: a b\ncover: a < b\ncover: b < a\n"],
)
def test_bad_specs_exit_with_input_error(tmp_path, capsys, text):
    spec = tmp_path / "bad.gwp"
    spec.write_text(text, encoding="utf-8")
    assert cli.main(["inspect", "--spec", str(spec)]) == cli.EXIT_INPUT_ERROR
    assert capsys.readouterr().err.startswith("error:")


def test_missing_spec_arguments(tmp_path, capsys):
    assert cli.main(["inspect"]) == cli.EXIT_INPUT_ERROR
    assert cli.main(["inspect", "--spec", str(tmp_path / "absent.gwp")]) == cli.EXIT_INPUT_ERROR
    assert "cannot read" in capsys.readouterr().err


def test_desk_guard_is_an_input_error(capsys):
    assert cli.main(["decompose", "--spec", spec_path("chain3"), "--max-delta", "4"]) == cli.EXIT_INPUT_ERROR
    assert "desk guard" in capsys.readouterr().err


def test_budget_exhaustion_exit_code(monkeypatch, capsys):
    def exhausted(group, settings, seed=None):
        raise BudgetExhausted(1, "no luck")

    monkeypatch.setattr(cli, "certify_group", exhausted)
    assert cli.main(["certify", "--spec", spec_path("chain2"), "--budget", "1"]) == cli.EXIT_BUDGET
    assert "budget exhausted" in capsys.readouterr().err


def test_budget_flag_sets_every_budget():
    args = cli.build_parser().parse_args(["certify", "--budget", "7"])
    settings = cli._settings(args)
    assert settings.lift_budget == settings.pair_budget == settings.search_budget == 7


def test_selftest_empty_corpus(capsys):
    assert cli.main(["selftest", "--empty"]) == cli.EXIT_OK
    assert "passed 0, failed 0, skipped 0" in capsys.readouterr().out


def test_selftest_scoped_corpus(tmp_path, capsys):
    (tmp_path / "b.gwp").write_text("elements: x y\ncover: x < y\n", encoding="utf-8")
    (tmp_path / "a.gwp").write_text("elements: x y\n", encoding="utf-8")
    code = cli.main(["selftest", "--corpus", str(tmp_path), "--scope", "laws", "--format", "json"])
    assert code == cli.EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert [item["instance"] for item in payload["instances"]] == ["a", "b"]
    assert payload["scope"] == ["identity", "group_axioms", "action_law", "faithfulness"]
    assert all(check["status"] == "pass" for item in payload["instances"] for check in item["checks"])


def test_selftest_unknown_scope(capsys):
    assert cli.main(["selftest", "--empty", "--scope", "bogus"]) == cli.EXIT_INPUT_ERROR
    assert "Unknown check or scope" in capsys.readouterr().err


def test_policy_file_errors(tmp_path, capsys):
    policy = tmp_path / "policy.yaml"
    policy.write_text("max_enum: -1\n", encoding="utf-8")
    assert cli.main(["inspect", "--spec", spec_path("chain2"), "--policy", str(policy)]) == cli.EXIT_INPUT_ERROR
