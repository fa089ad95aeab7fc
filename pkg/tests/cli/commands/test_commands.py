import json

import pytest
from click.testing import CliRunner

from cli.app import gorhom

SUITE = """\
ring Z/4
module M = coker [[2]]
complex X = deg 1..0 : [[1]]
expect gpd M == Gpd = 0 (quasi-Frobenius collapse); pd = ∞
expect canon M == Z/2
expect ext 1 M M == Ext^1 = Z/2
"""


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def invoke(runner, *args):
    return runner.invoke(gorhom, list(args))


def test_gpd_over_a_quasi_frobenius_ring(runner):
    result = invoke(runner, "gpd", "--ring", "Z/4", "coker [[2]]")
    assert result.exit_code == 0, result.stderr
    assert result.stdout.splitlines() == ["Gpd = 0 (quasi-Frobenius collapse); pd = ∞"]


def test_canon_over_the_integers(runner):
    result = invoke(runner, "canon", "--ring", "Z", "coker [[2,0],[0,4]]")
    assert result.exit_code == 0
    assert result.stdout.strip() == "Z/2 ⊕ Z/4"


def test_ext_with_oracle(runner):
    result = invoke(runner, "ext", "--ring", "Z/4", "--oracle", "1", "coker [[2]]", "coker [[2]]")
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["Ext^1 = Z/2", "oracle Ext^1: agrees (Z/2)"]


def test_gid_over_the_integers_is_reported_not_computable(runner):
    result = invoke(runner, "gid", "coker [[2]]")
    assert result.exit_code == 0
    assert result.stdout.strip() == "Gid = not computable over this ring; pd = 1"


def test_parse_errors_exit_two(runner):
    result = invoke(runner, "canon", "coker [[2,]]")
    assert result.exit_code == 2
    assert "error: line 1, column 11" in result.stderr


def test_unknown_ring_is_a_usage_error(runner):
    assert invoke(runner, "canon", "--ring", "Q", "free 1").exit_code == 2


def test_tree_format(runner):
    result = invoke(runner, "canon", "--ring", "Z/4", "--format", "tree", "coker [[2]]")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["command"] == "canon"
    assert report["ring"] == "Z/4"
    assert report["lines"] == ["Z/2"]
    assert report["module"]["factors"] == [2]


def test_tree_format_carries_the_justification(runner):
    result = invoke(runner, "gpd", "--ring", "Z/4", "--format", "tree", "coker [[2]]")
    gorenstein = json.loads(result.stdout)["gorenstein"]
    assert gorenstein["gpd"] == "0"
    assert gorenstein["pd"] == "∞"
    assert gorenstein["justification"][0] == "quasi-Frobenius collapse"
    assert gorenstein["rules"][0].startswith("over a quasi-Frobenius ring")


def test_negative_suspension(runner):
    result = invoke(runner, "susp", "--k", "-1", "deg 1..0 : [[1]]")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[1] == "deg 0..-1 : [[-1]]"


def test_witness(runner):
    result = invoke(runner, "witness", "--ring", "Z/4", "GP_W", "coker [[2]]")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-1] == "re-verified: yes"
    assert invoke(runner, "witness", "--ring", "Z/4", "GP_X", "coker [[2]]").exit_code == 2


def test_filtration_respects_the_bound(runner):
    assert invoke(runner, "filtration", "--ring", "Z/4", "coker [[2]]").exit_code == 0
    result = invoke(runner, "filtration", "--ring", "Z/4", "--bound", "8", "free 2")
    assert result.exit_code == 2


def test_module_only_commands_reject_complexes(runner):
    assert invoke(runner, "ext", "1", "deg 1..0 : [[1]]", "free 1").exit_code == 2


def test_suite_file(runner, tmp_path):
    suite = tmp_path / "small.suite"
    suite.write_text(SUITE, encoding="utf-8")
    result = invoke(runner, "verify", str(suite), "--no-progress")
    assert result.exit_code == 0, result.stdout
    assert result.stdout.splitlines()[-1] == "3/3 passed"


def test_suite_file_with_a_wrong_expectation(runner, tmp_path):
    suite = tmp_path / "wrong.suite"
    suite.write_text(SUITE + "expect canon M == Z/4\n", encoding="utf-8")
    result = invoke(runner, "verify", str(suite), "--no-progress")
    assert result.exit_code == 1
    assert "FAIL line 7: canon M (expected 'Z/4', got 'Z/2')" in result.stdout
    assert result.stdout.splitlines()[-1] == "3/4 passed"


def test_unknown_suite(runner):
    assert invoke(runner, "verify", "no-such-suite", "--no-progress").exit_code == 2


@pytest.mark.slow
def test_acceptance_suite_passes(runner):
    result = invoke(runner, "verify", "paper-suite", "--no-progress")
    assert result.exit_code == 0, result.stdout
    assert result.stdout.splitlines()[-1] == "11/11 passed"
