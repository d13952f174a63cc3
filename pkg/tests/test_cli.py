import json

import pytest

from hypertower.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand(capsys):
    code, out, _ = invoke(
        capsys, "expand", "--field", "rational", "--p", "5", "--x", "-1", "--digits", "4"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["shift"] == 0 and doc["digits"] == [4, 4, 4, 4]


def test_hyperadd(capsys):
    code, out, _ = invoke(capsys, "hyperadd", "--p", "5", "--gamma", "1", "--x", "1", "--y", "1")
    assert code == 0
    doc = json.loads(out)
    s = doc["hypersum"]
    assert s["radius"] == 1 and s["zero"] is False
    assert s["center"] == {"level": 1, "rep": "2"}


def test_coset_and_project(capsys):
    code, out, _ = invoke(capsys, "coset", "--p", "5", "--gamma", "0", "--x", "50")
    assert code == 0
    assert json.loads(out)["value"] == [2]
    code, out, _ = invoke(
        capsys, "project", "--p", "5", "--x", "27", "--from", "2", "--to", "1"
    )
    assert code == 0
    assert json.loads(out)["output"]["level"] == 1


def test_embed(capsys):
    code, out, _ = invoke(capsys, "embed", "--ext", "quadratic", "--p", "5", "--digits", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["approximation"]["digits"] == [1, 3, 0]


def test_limit_arith_ledger(capsys):
    code, out, _ = invoke(
        capsys, "limit-arith", "--op", "add", "--lhs", "1", "--rhs", "624",
        "--p", "5", "--digits", "4",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["approximation"] == {"shift": 4, "digits": [1, 0, 0, 0], "p": 5}
    assert doc["ledger"]["losses"][0]["loss"] == 4


def test_function_field_elements(capsys):
    code, out, _ = invoke(
        capsys, "expand", "--field", "function", "--p", "5",
        "--x", '{"num": [1], "den": [1, -1]}', "--digits", "4",
    )
    assert code == 0
    assert json.loads(out)["digits"] == [1, 1, 1, 1]


def test_laws_pass_exit_zero(capsys):
    code, out, _ = invoke(
        capsys, "laws", "--suite", "tropical", "--seed", "7", "--samples", "50"
    )
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_laws_failure_exit_one(capsys, monkeypatch):
    from hypertower import cli
    from hypertower.tower import LawReport

    broken = LawReport("forced", samples=1, failures=[{"why": "negative control"}])
    monkeypatch.setattr(cli, "_suite_reports", lambda args, rng: [broken])
    code, out, _ = invoke(capsys, "laws", "--suite", "tropical", "--seed", "1")
    assert code == 1
    doc = json.loads(out)
    assert doc["pass"] is False
    assert doc["reports"][0]["failures"]


def test_laws_deterministic_bytes(capsys):
    args = ("laws", "--suite", "singlevalued", "--seed", "11", "--samples", "32")
    _, first, _ = invoke(capsys, *args)
    _, second, _ = invoke(capsys, *args)
    assert first == second


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("HYPERTOWER_SEED", "99")
    _, out, _ = invoke(capsys, "laws", "--suite", "tropical", "--samples", "16")
    assert json.loads(out)["config"]["seed"] == 99


def test_malformed_element_exit_two(capsys):
    code, _, err = invoke(capsys, "expand", "--p", "5", "--x", "not-a-number")
    assert code == 2
    assert "malformed element" in err


def test_unknown_suite_exit_two(capsys):
    code, _, err = invoke(capsys, "laws", "--suite", "bogus", "--seed", "1")
    assert code == 2


def test_usage_error_exit_two(capsys):
    code, _, _ = invoke(capsys, "coset", "--p", "5", "--x", "1")  # missing --gamma
    assert code == 2


def test_project_upward_exit_two(capsys):
    code, _, err = invoke(
        capsys, "project", "--p", "5", "--x", "1", "--from", "1", "--to", "3"
    )
    assert code == 2


@pytest.mark.parametrize(
    "suite", ["lee", "tropical", "hom", "cone", "singlevalued", "universal", "oracle-roundtrip"]
)
def test_every_suite_reachable(capsys, suite):
    code, out, _ = invoke(
        capsys, "laws", "--suite", suite, "--seed", "3",
        "--samples", "24", "--height", "4",
    )
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_quadratic_element_parse(capsys):
    code, out, _ = invoke(
        capsys, "expand", "--field", "quadratic", "--p", "5",
        "--x", '{"a": "2", "b": "3"}', "--digits", "3",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["shift"] == 2
