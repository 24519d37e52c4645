"""Golden-file tests: every CLI command, byte-identical deterministic output."""

import io
import json
import contextlib
from pathlib import Path

import pytest

from cyclohouse.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"

CASES = {
    "house": (["house", "1 + z5", "--bits", "128"], 0),
    "integer": (["integer", "1 + z8"], 0),
    "rootofunity": (["rootofunity", "1 + z3"], 0),
    "pa": (["pa", "1 + z5", "--A", "2"], 0),
    "decompose": (["decompose", "1 + z5 + z5^2", "--dmax", "4"], 0),
    "cheb": (["cheb", "3"], 0),
    "compose": (["compose", "x^2", "x^3"], 0),
    "iterate": (["iterate", "x^2 - 2", "2"], 0),
    "degree": (["degree", "2*x^3/(x + 1)"], 0),
    "poles": (["poles", "1/(x^3 - x)"], 0),
    "special": (["special", "x^2 + 2*x"], 0),
    "normalize": (["normalize", "2*x^3/(x + 1)"], 0),
    "orbit": (["orbit", "x^2 - 2", "z8 + z8^-1", "--n", "2", "--A", "2"], 0),
    "scan": (["scan", "x^2", "--M", "4", "--A", "1"], 0),
    "scan_csv": (["scan", "x^2 + x", "--M", "4", "--A", "1", "--csv"], 0),
    "witness-check": (
        [
            "witness-check",
            "x^2 - 2",
            "--S",
            "x + x^-1",
            "--terms",
            '[{"beta":{"order":1,"exp":0},"e":"1","n":2},'
            '{"beta":{"order":1,"exp":0},"e":"1","n":-2}]',
        ],
        0,
    ),
    "witness-search": (["witness-search", "x^4 - 4*x^2 + 2", "--dmax", "2"], 0),
    "verdict": (["verdict", "1/(x^3 - x)", "--A", "7", "--budget", "5"], 0),
    "bounds": (["bounds", "--l", "3"], 0),
    "fz-verify": (["fz-verify", "x^3 + x", "x^2 + x"], 0),
    "specialterms": (["specialterms", "x^3 + x", "x^2 + x", "--n", "3"], 0),
    "err_syntax": (["degree", "2x"], 2),
    "err_domain": (["compose", "x", "1/0"], 1),
    "err_resource": (["iterate", "x^2", "64"], 3),
    "err_undecided": (["pa", "2*z3", "--A", "2"], 4),
}


def _run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv, expected_code = CASES[name]
    code, out = _run(argv)
    assert code == expected_code
    golden = (GOLDEN_DIR / f"{name}.out").read_text()
    assert out == golden


@pytest.mark.parametrize("name", sorted(CASES))
def test_deterministic_across_runs(name):
    argv, _ = CASES[name]
    _, out1 = _run(argv)
    _, out2 = _run(argv)
    assert out1 == out2


@pytest.mark.parametrize("name", sorted(CASES))
def test_output_is_json_or_csv(name):
    argv, _ = CASES[name]
    _, out = _run(argv)
    if "--csv" in argv:
        assert out.splitlines()[0] == "order,exponent,value,house_lower,house_upper,in_PA"
    else:
        json.loads(out)


def test_spec_cheb_golden_is_exact():
    _, out = _run(["cheb", "3"])
    assert out == '{"poly": "x^3 - 3*x"}\n'


def test_verdict_json_fields():
    _, out = _run(["verdict", "x^2 - 2", "--A", "2", "--budget", "2"])
    doc = json.loads(out)
    assert doc["verdict"] == "witness_found"
    assert doc["witness"]["S"] == "(x^2 + 1)/x"


def test_exit_code_success_and_missing_command():
    code, _ = _run(["bounds", "--l", "1"])
    assert code == 0


def test_usage_error_emits_json(capsys):
    import contextlib as _ctx

    with _ctx.redirect_stderr(io.StringIO()):
        code, out = _run(["no-such-command"])
    assert code == 2
    assert json.loads(out)["error"]["type"] == "usage"


def test_precision_cap_env_variable(monkeypatch):
    from fractions import Fraction

    from cyclohouse import CycNum, UndecidedError, house
    from cyclohouse.cyclotomic import precision_cap

    monkeypatch.setenv("CYCLOHOUSE_PRECISION_CAP", "128")
    assert precision_cap() == 128
    a = CycNum.from_rational(1) + CycNum.zeta(5)
    with pytest.raises(UndecidedError):
        house(a, 4096)
    monkeypatch.delenv("CYCLOHOUSE_PRECISION_CAP")
    assert precision_cap() == 4096
