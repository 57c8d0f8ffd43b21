"""Expression front end, scenario runner, report emitter, CLI."""

import cmath
import json
import subprocess
import sys
from pathlib import Path

import pytest

from genstar import Polynomial2, WaveSum, make_params, preset_params
from genstar.exprio import (
    ParseError,
    Report,
    ScenarioError,
    emit_report,
    evaluate_expression,
    exit_code,
    format_value,
    load_scenario,
    parse_complex_literal,
    parse_expression,
    parse_scenario,
    pretty,
    run_scenario,
)
from genstar.exprio.cli import main

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"

# round-trip corpus: parse -> pretty -> parse must reproduce the AST
CORPUS = [
    "x1",
    "x2",
    "z",
    "zbar",
    "i",
    "2",
    "2.5",
    "1.5i",
    "0.25",
    "1+2i",
    "1 - 2i",
    "-x1",
    "x1 + x2",
    "x1 - x2",
    "x1*x2",
    "2*x1 + 3*x2",
    "x1^2",
    "x1^2*x2^3",
    "(1+2i)*x1^2*x2 + 3",
    "x1 ** x2",
    "x1 ** x2 ** x1",
    "x1*x2 ** x2*x1",
    "x1 + x2 ** x1",
    "(x1 + x2) ** (x1 - x2)",
    "-x1^2 + 2*x2",
    "-(x1 + x2)",
    "exp(i*x1)",
    "exp(i*x1) ** exp(i*x2)",
    "exp(i*(2*x1 - x2))",
    "exp((1+2i)*x1 - 0.5i*x2)",
    "2*exp(i*x1) + 3*exp(-i*x2)",
    "z ** zbar",
    "exp(z) ** exp(zbar)",
    "exp(0.5*z - 0.25*zbar)",
    "(x1 ** x2) ** x1",
    "x1^2 ** x2^2",
    "1.5e-3*x1",
    "exp(i*x1)^2",
]


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 30


@pytest.mark.parametrize("text", CORPUS)
def test_round_trip(text):
    first = parse_expression(text)
    printed = pretty(first.root)
    second = parse_expression(printed)
    assert second.root == first.root
    assert second.frame == first.frame


@pytest.mark.parametrize("text", CORPUS)
def test_value_survives_format_cycle(text):
    params = make_params(1.0, phi11=0.1, phi12=0.2j, phi22=-0.3)
    value = evaluate_expression(parse_expression(text), params)
    printed = format_value(value)
    again = evaluate_expression(parse_expression(printed), params)
    if isinstance(value, Polynomial2):
        assert isinstance(again, (Polynomial2, complex))
        if isinstance(again, complex):
            assert value.total_degree() <= 0
            assert abs(value.coefficient(0, 0) - again) < 1e-12
        else:
            assert value.max_diff(again) < 1e-12
    elif isinstance(value, WaveSum):
        if isinstance(again, complex):  # a frequency-zero sum prints as a constant
            assert abs(value.evaluate(0, 0) - again) < 1e-12
        else:
            for x in ((0.0, 0.0), (0.3, -0.7), (1.1, 0.4)):
                assert abs(value.evaluate(*x) - again.evaluate(*x)) < 1e-10
    else:
        assert abs(value - again) < 1e-12


def test_star_binds_between_add_and_mul():
    e = parse_expression("x1 + x2 ** x1*x2")
    # parsed as x1 + (x2 ** (x1*x2))
    from genstar.exprio.parser import Add, Mul, Star

    assert isinstance(e.root, Add)
    assert isinstance(e.root.right, Star)
    assert isinstance(e.root.right.right, Mul)


def test_eval_star_polynomials():
    value = evaluate_expression(parse_expression("x1 ** x2"), preset_params("moyal", 1.0))
    want = Polynomial2({(1, 1): 1.0, (0, 0): 0.5j})
    assert value.max_diff(want) < 1e-15


def test_eval_star_waves():
    value = evaluate_expression(
        parse_expression("exp(i*x1) ** exp(i*x2)"), preset_params("moyal", 1.0)
    )
    assert isinstance(value, WaveSum)
    assert len(value.terms) == 1
    assert value.terms[0].amplitude == pytest.approx(cmath.exp(-0.5j))
    assert value.terms[0].wavevector == (1 + 0j, 1 + 0j)


def test_eval_rejects_poly_times_wave():
    from genstar.exprio import EvaluationError

    with pytest.raises(EvaluationError):
        evaluate_expression(parse_expression("x1*exp(i*x1)"), make_params(1.0))
    with pytest.raises(EvaluationError):
        evaluate_expression(parse_expression("x1 ** exp(i*x1)"), make_params(1.0))


@pytest.mark.parametrize(
    "bad",
    [
        "exp(x1^2)",
        "exp(x1*x2)",
        "exp(exp(x1))",
        "exp(x1 ** x2)",
        "x1 + z",
        "zbar*x2",
        "x1^-2",
        "x1^0.5",
        "x1^2i",
        "2 +* 3",
        "(x1",
        "x1 ** ",
        "foo",
        "x1 @ x2",
        "exp x1",
    ],
)
def test_diagnostics_carry_position_and_expectations(bad):
    with pytest.raises(ParseError) as err:
        parse_expression(bad)
    assert err.value.line >= 1
    assert err.value.column >= 1
    assert len(err.value.expected) >= 1


def test_complex_literal_parsing():
    assert parse_complex_literal("2") == 2
    assert parse_complex_literal("-0.5i") == -0.5j
    assert parse_complex_literal("1+2i") == 1 + 2j
    assert parse_complex_literal("-1-1i") == -1 - 1j
    with pytest.raises(ScenarioError):
        parse_complex_literal("x1")
    with pytest.raises(ScenarioError):
        parse_complex_literal("2 +")


# -- scenarios ----------------------------------------------------------------


def test_scenario_parsing_and_params():
    s = parse_scenario(
        """
        # a comment
        theta = 2.0
        phi12 = 0.5i
        seed = 7

        task eval expr="x1 ** x2"
        task position-roi grid=-1:1:5 tol=1e-10
        """
    )
    assert s.params.theta == 2.0
    assert s.params.phi12 == 0.5j
    assert s.seed == 7
    assert [t.kind for t in s.tasks] == ["eval", "position-roi"]
    assert s.tasks[1].prepared["grid"] == (-1.0, 1.0, 5)


def test_scenario_rejects_unknown_key():
    with pytest.raises(ScenarioError, match="unknown key"):
        parse_scenario("thetaa = 1")


def test_scenario_rejects_unknown_task_kind():
    with pytest.raises(ScenarioError, match="unknown task kind"):
        parse_scenario("task frobnicate x=1")


def test_scenario_rejects_preset_phi_conflict():
    with pytest.raises(ScenarioError, match="conflicts"):
        parse_scenario("preset = voros\nphi11 = 1\ntask eval expr=x1")


def test_scenario_rejects_bad_grid():
    with pytest.raises(ScenarioError, match="grid"):
        parse_scenario("task position-roi grid=1:2")
    with pytest.raises(ScenarioError, match="grid"):
        parse_scenario("task position-roi grid=2:1:5")


def test_scenario_validates_expressions_before_running():
    with pytest.raises(ScenarioError, match="expr"):
        parse_scenario('task eval expr="x1 +"')


def test_scenario_unknown_task_option():
    with pytest.raises(ScenarioError, match="unknown options"):
        parse_scenario("task eval expr=x1 bogus=3")


def test_run_scenario_task_error_aborts_and_preserves():
    s = parse_scenario(
        """
        theta = 0.0

        task eval expr="x1 + x2"
        task eval expr="z ** zbar"    # theta = 0 makes the z-frame star singular
        task eval expr="x1"
        """
    )
    report = run_scenario(s)
    assert report.failed
    assert len(report.tasks) == 2  # third task never ran
    assert report.tasks[0].verdict == "pass"
    assert report.tasks[1].verdict == "error"
    assert exit_code(report) == 2


def test_golden_moyal_scenario_passes():
    report = run_scenario(load_scenario(SCENARIO_DIR / "moyal_position_pass.scn"))
    assert [t.verdict for t in report.tasks] == ["pass", "pass"]
    assert exit_code(report) == 0


def test_golden_voros_scenario_passes():
    report = run_scenario(load_scenario(SCENARIO_DIR / "voros_coherent_pass.scn"))
    assert [t.verdict for t in report.tasks] == ["pass", "pass"]
    assert exit_code(report) == 0


def test_golden_generic_phi_scenario_is_finding():
    report = run_scenario(load_scenario(SCENARIO_DIR / "generic_phi_finding.scn"))
    assert report.tasks[0].verdict == "finding"
    assert report.tasks[0].outputs["finding"] == "fail-to-resolve"
    assert not report.failed
    assert exit_code(report) == 1


def test_verify_all_task_passes_under_moyal():
    s = parse_scenario("preset = moyal\ntrials = 10\ntask verify-all")
    report = run_scenario(s)
    assert report.tasks[0].verdict == "pass"
    doc = json.loads(emit_report(report, "json").decode())
    suites = doc["tasks"][0]["outputs"]["suites"]
    assert [s_["name"] for s_ in suites] == ["algebra", "equivalence", "roi", "fock"]
    assert all(c["passed"] for s_ in suites for c in s_["checks"])


def test_fock_check_task():
    s = parse_scenario('task fock-check n=64 z="0.3+0.2i" p="0.5-0.7i" tol=1e-6')
    report = run_scenario(s)
    assert report.tasks[0].verdict == "pass"
    assert report.tasks[0].max_error < 1e-6


def test_commutator_and_tmap_tasks():
    s = parse_scenario(
        """
        theta = 1.0
        task commutator f="x1" g="x2"
        task tmap expr="x1^2"
        """
    )
    report = run_scenario(s)
    assert report.tasks[0].outputs["result"] == "i"
    assert report.tasks[1].outputs["result"] == "x1^2"  # Phi = 0 leaves polynomials alone


# -- reports ------------------------------------------------------------------


def test_empty_scenario_emits_valid_json():
    report = run_scenario(parse_scenario("theta = 1.0"))
    doc = json.loads(emit_report(report, "json").decode())
    assert doc["tasks"] == []
    assert doc["engine_version"]
    assert "scenario" in doc


def test_json_reports_are_byte_identical_for_fixed_seed():
    path = SCENARIO_DIR / "voros_coherent_pass.scn"
    a = emit_report(run_scenario(load_scenario(path)), "json")
    b = emit_report(run_scenario(load_scenario(path)), "json")
    assert a == b


def test_timings_are_suppressed_by_default():
    report = run_scenario(parse_scenario('task eval expr="x1"'))
    doc = json.loads(emit_report(report, "json").decode())
    assert doc["tasks"][0]["seconds"] is None
    doc = json.loads(emit_report(report, "json", include_timings=True).decode())
    assert doc["tasks"][0]["seconds"] > 0


def test_csv_has_one_row_per_grid_point():
    s = parse_scenario("preset = moyal\ntask position-roi grid=-1:1:3")
    payload = emit_report(run_scenario(s), "csv").decode()
    lines = payload.strip().split("\n")
    assert len(lines) == 1 + 9  # header plus 3x3 grid points
    assert lines[0].startswith("task,kind,p1,p2")


def test_csv_single_row_for_non_grid_task():
    s = parse_scenario('task eval expr="x1 ** x2"')
    payload = emit_report(run_scenario(s), "csv").decode()
    lines = payload.strip().split("\n")
    assert len(lines) == 2


def test_text_report_mentions_verdicts():
    report = run_scenario(load_scenario(SCENARIO_DIR / "generic_phi_finding.scn"))
    text = emit_report(report, "text").decode()
    assert "FINDING" in text
    assert "exit code 1" in text


def test_unknown_format_raises():
    from genstar import ValidationError

    report = Report(scenario={}, engine_version="x")
    with pytest.raises(ValidationError):
        emit_report(report, "yaml")


# -- CLI ----------------------------------------------------------------------


def test_cli_eval(capsys):
    assert main(["eval", "x1 ** x2", "--theta", "1"]) == 0
    assert capsys.readouterr().out.strip() == "x1*x2 + 0.5i"


def test_cli_eval_voros_wave(capsys):
    code = main(["eval", "exp(i*x1) ** exp(i*x1)", "--preset", "voros"])
    assert code == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("0.60653065971263")
    assert out.endswith("*exp(2i*x1)")


def test_cli_eval_bad_expression(capsys):
    assert main(["eval", "x1 +"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_exit_codes_for_golden_scenarios(capsys):
    assert main(["run", str(SCENARIO_DIR / "moyal_position_pass.scn"), "--format", "text"]) == 0
    assert main(["run", str(SCENARIO_DIR / "voros_coherent_pass.scn"), "--format", "text"]) == 0
    assert main(["run", str(SCENARIO_DIR / "generic_phi_finding.scn"), "--format", "text"]) == 1
    capsys.readouterr()


def test_cli_missing_scenario_is_error(capsys):
    assert main(["run", "no/such/file.scn"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_run_writes_identical_bytes(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    path = str(SCENARIO_DIR / "moyal_position_pass.scn")
    assert main(["run", path, "--out", str(out1)]) == 0
    assert main(["run", path, "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_verify_single_suite(capsys):
    assert main(["verify", "--suite", "roi", "--seed", "0"]) == 0
    out = capsys.readouterr().out
    assert "roi.position-moyal-resolves" in out
    assert "all checks passed" in out


def test_cli_kernel_json(capsys):
    code = main(["kernel", "position", "--preset", "moyal", "--grid=-1:1:3", "--format", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    task = doc["tasks"][0]
    assert task["kind"] == "position-roi"
    assert task["outputs"]["resolves_identity"] is True
    assert len(task["outputs"]["kernel"]["Q"]) == 4


def test_cli_kernel_finding_exit_code(capsys):
    code = main(["kernel", "coherent", "--preset", "moyal", "--grid=-1:1:3", "--format", "text"])
    capsys.readouterr()
    assert code == 1  # coherent states do not resolve the identity under Moyal


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "genstar", "eval", "x1 ** x2"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "x1*x2 + 0.5i"
