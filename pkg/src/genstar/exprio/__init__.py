"""Expression parser, scenario runner, CLI, and report emitter."""

from .evaluate import EvaluationError, evaluate_expression, value_kind
from .format import format_complex, format_polynomial, format_value, format_wavesum
from .parser import Expression, ParseError, parse_expression, pretty, tokenize
from .report import Report, TaskResult, emit_report, exit_code
from .scenario import (
    Scenario,
    ScenarioError,
    Task,
    load_scenario,
    parse_complex_literal,
    parse_scenario,
    prepare_task,
    run_scenario,
)

__all__ = [
    "EvaluationError",
    "Expression",
    "ParseError",
    "Report",
    "Scenario",
    "ScenarioError",
    "Task",
    "TaskResult",
    "emit_report",
    "evaluate_expression",
    "exit_code",
    "format_complex",
    "format_polynomial",
    "format_value",
    "format_wavesum",
    "load_scenario",
    "parse_complex_literal",
    "parse_expression",
    "parse_scenario",
    "prepare_task",
    "pretty",
    "run_scenario",
    "tokenize",
    "value_kind",
]
