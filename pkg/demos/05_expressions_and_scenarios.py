"""The text front end: expressions, scenarios, reports.

The same engine is scriptable without writing Python: '**' is the star
product in the expression grammar, and scenario files bundle parameters
with an ordered task list.  The CLI wraps exactly these calls
(genstar eval / verify / kernel / run).
"""

from genstar import preset_params
from genstar.exprio import (
    emit_report,
    evaluate_expression,
    exit_code,
    format_value,
    parse_expression,
    parse_scenario,
    pretty,
    run_scenario,
)

print("== expressions ==")
params = preset_params("voros", 1.0)
for text in ("x1 ** x2", "exp(i*x1) ** exp(i*x1)", "z ** zbar", "(1+2i)*x1^2 + 3"):
    expr = parse_expression(text)
    value = evaluate_expression(expr, params)
    print(f"{text:28s} -> {format_value(value)}   (frame: {expr.frame})")

print()
print("== canonical printing round-trips ==")
expr = parse_expression("exp(i*(2*x1 - x2))  **  exp( i * x1 )")
print("input pretty-printed:", pretty(expr.root))

print()
print("== an inline scenario, run to a report ==")
scenario = parse_scenario(
    """
    preset = voros
    theta = 1.0
    seed = 0

    task coherent-roi grid=-2:2:5 tol=1e-12
    task eval expr="exp(i*x1) ** exp(i*x2)"
    """,
    name="demo-inline",
)
report = run_scenario(scenario)
print(emit_report(report, "text").decode())
print("exit code would be:", exit_code(report))
