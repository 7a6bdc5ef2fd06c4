"""JSON (de)serialization of reports; every rational is written as a "p/q" string."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .axioms import AxiomId, CheckReport, Witness
from .exactnum import CountVector, ReferencePoint, format_rational, parse_rational
from .measures import Kind, MeasureSpec
from .reconstruction import QuadraticForm
from .stats import TestResult

_VECTOR_PARAMS = {"x", "y"}
_REFERENCE_PARAMS = {"pi", "pi_prime"}


def rationals(values) -> list[str]:
    return [format_rational(Fraction(v)) for v in values]


def measure_to_dict(m: MeasureSpec) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": m.kind.value}
    if m.kind is Kind.SCALED:
        out["gamma"] = format_rational(m.gamma)
        out["base"] = measure_to_dict(m.base)
    if m.kind is Kind.PHI:
        out["phi"] = [{"pi": rationals(pi), "value": format_rational(v)} for pi, v in m.phi]
    return out


def measure_from_dict(d: dict[str, Any]) -> MeasureSpec:
    kind = Kind(d["kind"])
    if kind is Kind.SCALED:
        return MeasureSpec(kind, gamma=parse_rational(d["gamma"]), base=measure_from_dict(d["base"]))
    if kind is Kind.PHI:
        return MeasureSpec(kind, phi=tuple(phi_entries_from_json(d["phi"])))
    return MeasureSpec(kind)


def phi_entries_from_json(entries) -> list[tuple[ReferencePoint, Fraction]]:
    return [(reference_from_json(e["pi"]), parse_rational(str(e["value"]))) for e in entries]


def reference_from_json(values) -> ReferencePoint:
    return ReferencePoint(tuple(parse_rational(str(v)) for v in values))


def axiom_to_dict(a: AxiomId) -> dict[str, Any]:
    return {"tag": a.tag, "omega": a.omega, "label": a.label}


def axiom_from_dict(d: dict[str, Any]) -> AxiomId:
    return AxiomId(d["tag"], d["omega"])


def _param_to_json(value: Any) -> Any:
    if isinstance(value, CountVector):
        return list(value.counts)
    if isinstance(value, ReferencePoint):
        return rationals(value)
    return value


def witness_to_dict(w: Witness) -> dict[str, Any]:
    return {
        "axiom": axiom_to_dict(w.axiom),
        "params": {k: _param_to_json(v) for k, v in w.params.items()},
        "lhs": format_rational(w.lhs),
        "rhs": format_rational(w.rhs),
    }


def witness_from_dict(d: dict[str, Any]) -> Witness:
    params: dict[str, Any] = {}
    for name, value in d["params"].items():
        if name in _VECTOR_PARAMS:
            params[name] = CountVector(tuple(value))
        elif name in _REFERENCE_PARAMS:
            params[name] = reference_from_json(value)
        else:
            params[name] = value
    return Witness(axiom_from_dict(d["axiom"]), params, parse_rational(d["lhs"]), parse_rational(d["rhs"]))


def check_report_to_dict(r: CheckReport) -> dict[str, Any]:
    return {
        "axiom": axiom_to_dict(r.axiom),
        "measure": measure_to_dict(r.measure),
        "instances_tested": r.instances_tested,
        "passed": r.passed,
        "failures": r.failures,
        "witness": None if r.witness is None else witness_to_dict(r.witness),
    }


def check_report_from_dict(d: dict[str, Any]) -> CheckReport:
    w = d.get("witness")
    return CheckReport(
        axiom_from_dict(d["axiom"]),
        measure_from_dict(d["measure"]),
        d["instances_tested"],
        d["passed"],
        d.get("failures", 0),
        None if w is None else witness_from_dict(w),
    )


def form_to_dict(f: QuadraticForm) -> dict[str, Any]:
    return {
        "n": f.n,
        "dropped_index": f.dropped,
        "rho_diag": {str(i): format_rational(v) for i, v in f.rho_diag.items()},
        "rho_cross": {f"{i},{j}": format_rational(v) for (i, j), v in f.rho_cross.items()},
        "fitted_linear": {str(i): format_rational(v) for i, v in f.linear.items()},
        "fitted_constant": format_rational(f.constant),
    }


def form_from_dict(d: dict[str, Any]) -> QuadraticForm:
    def pair(key: str) -> tuple[int, int]:
        i, j = key.split(",")
        return int(i), int(j)

    return QuadraticForm(
        d["n"],
        d["dropped_index"],
        {int(i): parse_rational(v) for i, v in d["rho_diag"].items()},
        {pair(k): parse_rational(v) for k, v in d["rho_cross"].items()},
        {int(i): parse_rational(v) for i, v in d["fitted_linear"].items()},
        parse_rational(d["fitted_constant"]),
    )


def test_result_to_dict(t: TestResult) -> dict[str, Any]:
    return {
        "statistic": format_rational(t.statistic),
        "statistic_float": t.statistic_float,
        "df": t.df,
        "p_value": t.p_value,
        "gamma": format_rational(t.gamma),
    }


def test_result_from_dict(d: dict[str, Any]) -> TestResult:
    return TestResult(parse_rational(d["statistic"]), d["statistic_float"], d["df"], d["p_value"], parse_rational(d["gamma"]))


def envelope(subcommand: str, inputs: dict[str, Any], results: Any, witnesses: list[dict[str, Any]] | None = None) -> dict[str, Any]:
    return {"subcommand": subcommand, "inputs": inputs, "results": results, "witnesses": witnesses or []}
